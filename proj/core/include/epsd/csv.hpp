// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// CSV readers and writers for the on-disk interchange formats:
//   time series        time_s,value
//   spectral grid      time_s,freq_hz,value        (long format, time-major)
//   coefficient grid   time_s,axis_value,re,im     (long format, time-major)
// Writers emit 15 significant digits and write atomically (temp file +
// rename). Readers validate headers, uniform time spacing, and finite values.
#pragma once

#include <string>

#include "epsd/types.hpp"

namespace epsd {

void write_time_series_csv(const std::string& path, const TimeSeries& ts);
TimeSeries read_time_series_csv(const std::string& path);

void write_spectral_grid_csv(const std::string& path, const SpectralGrid& grid);
SpectralGrid read_spectral_grid_csv(const std::string& path, bool is_signed = false);

// Writes the coefficient CSV plus a JSON sidecar "<path>.meta.json" naming the
// axis kind ("frequency" or "scale").
void write_coefficient_csv(const std::string& path, const CoefficientGrid& grid);

// Reads a coefficient CSV, restoring the axis kind from the sidecar. The
// per-column validity flags are not persisted and come back empty.
CoefficientGrid read_coefficient_csv(const std::string& path);

// Atomic text-file write used by every writer (temp file in the same
// directory, then rename).
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace epsd
