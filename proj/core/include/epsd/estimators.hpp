// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Converts transform coefficient grids into EPSD estimates, with the
// scalogram-to-frequency mapping, optional time smoothing, ensemble
// statistics, and the cell-usability mask shared by aggregate comparisons.
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "epsd/kernels.hpp"
#include "epsd/types.hpp"

namespace epsd {

// Single-realization EPSD estimate: squared coefficient magnitudes divided by
// the window/wavelet power normalization of the matching transform. CWT grids
// (scale axis) are reported on the mapped frequency axis f = f0/s, ascending.
SpectralGrid epsd_estimate(const CoefficientGrid& coeffs, const TransformSpec& spec);

// Scalogram power on the frequency axis: |x_w|^2 * |ds/df| / C_w^2 with
// |ds/df| = f0/f^2 and C_w^2 = s^2 C_psi. Relates to epsd_estimate through
// the constant multiplier norm_constants(spec).epsd_scale, elementwise.
SpectralGrid scalogram_to_freq(const CoefficientGrid& coeffs,
                               const TransformSpec& spec);

// Moving average along time with a unit-mass box weight of the given
// halfwidth (seconds). The weight renormalizes over the samples that fall
// inside the record, so constant grids are exactly invariant. halfwidth 0 is
// the identity; halfwidth beyond the record span is rejected.
SpectralGrid smooth_time(const SpectralGrid& grid, double halfwidth);

struct EnsembleStats {
  SpectralGrid mean;
  SpectralGrid stddev;  // (n-1)-normalized
};

// Pointwise sample mean and standard deviation over >= 2 grids on identical
// axes. Sums are combined in a fixed pairwise (binary-tree) order, so the
// result is bit-identical for any worker count or traversal.
EnsembleStats ensemble_stats(const std::vector<SpectralGrid>& grids);

// Linear interpolation in log-frequency from the source rows onto `dst`.
// Destination rows outside the source band are zero-filled (no
// extrapolation); combine with a mask carrying the coverage band.
SpectralGrid resample_log_frequency(const SpectralGrid& src,
                                    const FrequencyAxis& dst);

// Cell-usability policy for aggregate comparisons.
struct MaskPolicy {
  // Minimum fraction of window/wavelet mass inside the record when centered
  // on the cell's time.
  double min_validity = 0.9;
  // Rows below this frequency are excluded (0 disables the cut).
  double min_freq = 0.0;
  // When set, rows outside this closed frequency band are excluded (used for
  // the native coverage of resampled CWT estimates).
  std::optional<std::pair<double, double>> f_coverage;
};

// 0/1 grid: 1 where an estimate of `spec` on (freqs x times) is usable under
// the policy. `record_span` is the record length in seconds.
SpectralGrid usability_mask(const TransformSpec& spec, const FrequencyAxis& freqs,
                            const std::vector<double>& times, double record_span,
                            const MaskPolicy& policy);

// Deterministic streaming sum of equal-length vectors: partial sums are
// merged in a fixed binary-tree order determined solely by the arrival index,
// so totals are bit-identical across runs and worker counts (values must be
// fed in index order).
class PairwiseAccumulator {
 public:
  explicit PairwiseAccumulator(std::size_t cells);

  void add(const std::vector<double>& values);
  std::size_t count() const { return count_; }
  std::size_t cells() const { return cells_; }
  // Sum of everything added so far (fixed merge order; callable repeatedly).
  std::vector<double> total() const;

 private:
  struct Level {
    std::vector<double> sum;
    std::size_t weight;  // number of records merged into this partial
  };
  std::size_t cells_;
  std::size_t count_ = 0;
  std::vector<Level> stack_;
};

}  // namespace epsd
