// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
#pragma once

#include <optional>
#include <vector>

#include "epsd/kernels.hpp"
#include "epsd/types.hpp"

namespace epsd {

// Geometric scale ladder for a CWT spec: s_p = c0 * s0^p, ascending. When the
// spec fixes the level count, exactly that many levels are generated;
// otherwise the ladder grows until the mapped center frequency f0/s falls
// below `min_freq`. Levels whose center frequency exceeds `nyquist` cannot be
// represented on the sampled grid and are reported in `dropped` instead of
// being kept in the ladder.
struct ScalePlan {
  std::vector<double> scales;
  std::vector<double> dropped;
};

ScalePlan plan_scales(const TransformSpec& spec, double nyquist, double min_freq);

// A computed time-frequency (or time-scale) coefficient grid, one column per
// input sample, plus the list of CWT levels that had to be dropped because
// they sit above the Nyquist frequency. `dropped_scales` is empty for
// windowed transforms.
struct TransformOutput {
  CoefficientGrid grid;
  std::vector<double> dropped_scales;
};

// Computes the time-frequency coefficients of `x` for the given transform.
//
// Windowed transforms (short-time box/Gaussian and the S-transform) evaluate
//   X(f, tau) = dt * sum_t x(t) w_f(t - tau) exp(-i 2 pi f (t - tau))
// with the signal extended by zeros outside the record and the window
// truncated where its mass is negligible. Rows default to the DFT bin
// frequencies k/(N dt) up to Nyquist; a custom positive frequency axis may be
// supplied instead.
//
// CWT transforms evaluate the N-point circular synthesis
//   x_w(s, tau_q) = sqrt(s) * (1/N) * sum_k X[k] conj(psi_hat(s f_k)) e^{i 2 pi k q / N}
// over the positive-frequency bins, on the scale ladder from plan_scales.
// The `rows` override is not accepted for CWT specs.
//
// Column validity holds the worst-case (over rows) fraction of window or
// wavelet mass that falls inside the record when centered on that column.
TransformOutput compute_transform(const TimeSeries& x, const TransformSpec& spec,
                                  std::optional<FrequencyAxis> rows = {});

}  // namespace epsd
