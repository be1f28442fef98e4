// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Minimal deterministic parallel loop. Work items are partitioned by index;
// any reduction the caller performs must use a fixed order (see
// PairwiseAccumulator in estimators.hpp) so results do not depend on the
// worker count.
#pragma once

#include <cstddef>
#include <functional>

namespace epsd {

// Worker count: EPSD_WORKERS environment variable if set (clamped to
// [1, 64]), otherwise std::thread::hardware_concurrency().
unsigned worker_count();

// Runs fn(i) for i in [0, n) across workers. Exceptions from workers are
// rethrown on the calling thread (first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned workers = 0);

}  // namespace epsd
