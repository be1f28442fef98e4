// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
#pragma once

namespace epsd {

inline constexpr const char* version_string = "1.0.0";

}  // namespace epsd
