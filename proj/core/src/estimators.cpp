// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
#include "epsd/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epsd {

namespace {

constexpr double kFourPi = 4.0 * 3.14159265358979323846;

double norm2(const std::complex<double>& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

// Flipped (ascending-frequency) axis for a scale-indexed grid.
FrequencyAxis mapped_axis(const CoefficientGrid& coeffs, const TransformSpec& spec) {
  const std::size_t rows = coeffs.rows();
  std::vector<double> f(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    f[r] = scale_to_freq(spec, coeffs.axis_value(rows - 1 - r));
  }
  return FrequencyAxis{std::move(f)};
}

void require_match(const CoefficientGrid& coeffs, const TransformSpec& spec) {
  validate_spec(spec);
  if (is_cwt(spec) != !coeffs.axis_is_frequency()) {
    throw std::invalid_argument(
        "estimator: coefficient grid axis kind does not match the transform spec");
  }
}

}  // namespace

SpectralGrid epsd_estimate(const CoefficientGrid& coeffs, const TransformSpec& spec) {
  require_match(coeffs, spec);
  const std::size_t rows = coeffs.rows(), cols = coeffs.cols();
  std::vector<double> values(rows * cols);

  if (is_cwt(spec)) {
    const KernelConstants kc = norm_constants(spec);
    const double inv = 1.0 / *kc.cnw2;
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t src = rows - 1 - r;  // flip to ascending frequency
      for (std::size_t q = 0; q < cols; ++q) {
        values[r * cols + q] = norm2(coeffs.at(src, q)) * inv;
      }
    }
    return SpectralGrid(mapped_axis(coeffs, spec), coeffs.times(), std::move(values));
  }

  const auto& axis = std::get<FrequencyAxis>(coeffs.axis());
  if (is_stft(spec)) {
    const KernelConstants kc = norm_constants(spec);
    const double inv = 1.0 / *kc.cn2;
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = norm2(coeffs.data()[i]) * inv;
    }
  } else {
    const auto& st = std::get<STrans>(spec);
    for (std::size_t r = 0; r < rows; ++r) {
      const double f = axis[r];
      const double cns0 = 1.0 / (effective_kappa(st, f) * std::sqrt(kFourPi));
      const double inv = 1.0 / (std::abs(f) * cns0);
      for (std::size_t q = 0; q < cols; ++q) {
        values[r * cols + q] = norm2(coeffs.at(r, q)) * inv;
      }
    }
  }
  return SpectralGrid(axis, coeffs.times(), std::move(values));
}

SpectralGrid scalogram_to_freq(const CoefficientGrid& coeffs,
                               const TransformSpec& spec) {
  require_match(coeffs, spec);
  if (!is_cwt(spec)) {
    throw std::invalid_argument(
        "scalogram_to_freq: spec must be a CWT transform (scale-indexed grid)");
  }
  const KernelConstants kc = norm_constants(spec);
  const double f0 = *kc.f0, c_psi = *kc.c_psi;
  const std::size_t rows = coeffs.rows(), cols = coeffs.cols();
  FrequencyAxis axis = mapped_axis(coeffs, spec);
  std::vector<double> values(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t src = rows - 1 - r;
    const double s = coeffs.axis_value(src);
    const double f = axis[r];
    // |ds/df| = f0/f^2, C_w^2 = s^2 C_psi
    const double factor = (f0 / (f * f)) / (s * s * c_psi);
    for (std::size_t q = 0; q < cols; ++q) {
      values[r * cols + q] = norm2(coeffs.at(src, q)) * factor;
    }
  }
  return SpectralGrid(std::move(axis), coeffs.times(), std::move(values));
}

SpectralGrid smooth_time(const SpectralGrid& grid, double halfwidth) {
  if (!(halfwidth >= 0.0)) {
    throw std::invalid_argument("smooth_time: halfwidth must be >= 0");
  }
  if (halfwidth == 0.0 || grid.cols() < 2) return grid;
  const auto& times = grid.times();
  const double span = times.back() - times.front();
  if (halfwidth > span) {
    throw std::invalid_argument("smooth_time: halfwidth exceeds the record span");
  }
  const double dt = (times.back() - times.front()) /
                    static_cast<double>(times.size() - 1);
  const long w = static_cast<long>(std::floor(halfwidth / dt * (1.0 + 1e-12)));
  if (w == 0) return grid;

  SpectralGrid out = grid;
  const long cols = static_cast<long>(grid.cols());
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (long q = 0; q < cols; ++q) {
      const long lo = std::max<long>(0, q - w);
      const long hi = std::min<long>(cols - 1, q + w);
      double acc = 0.0;
      for (long j = lo; j <= hi; ++j) {
        acc += grid.at(r, static_cast<std::size_t>(j));
      }
      out.at(r, static_cast<std::size_t>(q)) =
          acc / static_cast<double>(hi - lo + 1);
    }
  }
  return out;
}

EnsembleStats ensemble_stats(const std::vector<SpectralGrid>& grids) {
  if (grids.size() < 2) {
    throw std::invalid_argument("ensemble_stats: need at least two grids");
  }
  const SpectralGrid& first = grids.front();
  for (const SpectralGrid& g : grids) {
    if (g.freqs().values() != first.freqs().values() ||
        g.times() != first.times()) {
      throw std::invalid_argument("ensemble_stats: grids must share identical axes");
    }
  }
  const std::size_t cells = first.values().size();
  const double n = static_cast<double>(grids.size());

  PairwiseAccumulator sum(cells);
  for (const SpectralGrid& g : grids) sum.add(g.values());
  std::vector<double> mean = sum.total();
  for (double& v : mean) v /= n;

  PairwiseAccumulator dev2(cells);
  std::vector<double> scratch(cells);
  for (const SpectralGrid& g : grids) {
    for (std::size_t i = 0; i < cells; ++i) {
      const double d = g.values()[i] - mean[i];
      scratch[i] = d * d;
    }
    dev2.add(scratch);
  }
  std::vector<double> sd = dev2.total();
  for (double& v : sd) v = std::sqrt(v / (n - 1.0));

  return {SpectralGrid(first.freqs(), first.times(), std::move(mean),
                       first.is_signed()),
          SpectralGrid(first.freqs(), first.times(), std::move(sd))};
}

SpectralGrid resample_log_frequency(const SpectralGrid& src,
                                    const FrequencyAxis& dst) {
  if (src.rows() < 2) {
    throw std::invalid_argument("resample_log_frequency: need >= 2 source rows");
  }
  for (std::size_t r = 0; r < src.rows(); ++r) {
    if (!(src.freqs()[r] > 0.0)) {
      throw std::invalid_argument(
          "resample_log_frequency: source frequencies must be positive");
    }
  }
  const std::size_t cols = src.cols();
  std::vector<double> values(dst.size() * cols, 0.0);
  const auto& sf = src.freqs().values();
  for (std::size_t r = 0; r < dst.size(); ++r) {
    const double f = dst[r];
    if (f < sf.front() || f > sf.back()) continue;  // no extrapolation
    const auto it = std::upper_bound(sf.begin(), sf.end(), f);
    std::size_t hi = static_cast<std::size_t>(it - sf.begin());
    if (hi == 0) hi = 1;
    if (hi >= sf.size()) hi = sf.size() - 1;
    const std::size_t lo = hi - 1;
    const double w = std::log(f / sf[lo]) / std::log(sf[hi] / sf[lo]);
    for (std::size_t q = 0; q < cols; ++q) {
      values[r * cols + q] =
          (1.0 - w) * src.at(lo, q) + w * src.at(hi, q);
    }
  }
  return SpectralGrid(dst, src.times(), std::move(values), src.is_signed());
}

SpectralGrid usability_mask(const TransformSpec& spec, const FrequencyAxis& freqs,
                            const std::vector<double>& times, double record_span,
                            const MaskPolicy& policy) {
  validate_spec(spec);
  const std::size_t rows = freqs.size(), cols = times.size();
  std::vector<double> values(rows * cols, 0.0);
  const double t0 = times.empty() ? 0.0 : times.front();
  for (std::size_t r = 0; r < rows; ++r) {
    const double f = freqs[r];
    if (policy.min_freq > 0.0 && f < policy.min_freq * (1.0 - 1e-12)) continue;
    if (policy.f_coverage.has_value() &&
        (f < policy.f_coverage->first * (1.0 - 1e-12) ||
         f > policy.f_coverage->second * (1.0 + 1e-12))) {
      continue;
    }
    for (std::size_t q = 0; q < cols; ++q) {
      const double v = boundary_validity(spec, f, times[q] - t0, record_span);
      values[r * cols + q] = v >= policy.min_validity ? 1.0 : 0.0;
    }
  }
  return SpectralGrid(freqs, times, std::move(values));
}

PairwiseAccumulator::PairwiseAccumulator(std::size_t cells) : cells_(cells) {
  if (cells == 0) {
    throw std::invalid_argument("PairwiseAccumulator: cell count must be > 0");
  }
}

void PairwiseAccumulator::add(const std::vector<double>& values) {
  if (values.size() != cells_) {
    throw std::invalid_argument("PairwiseAccumulator: cell count mismatch");
  }
  stack_.push_back({values, 1});
  while (stack_.size() >= 2 &&
         stack_[stack_.size() - 1].weight == stack_[stack_.size() - 2].weight) {
    Level top = std::move(stack_.back());
    stack_.pop_back();
    Level& dst = stack_.back();
    for (std::size_t i = 0; i < cells_; ++i) dst.sum[i] += top.sum[i];
    dst.weight += top.weight;
  }
  ++count_;
}

std::vector<double> PairwiseAccumulator::total() const {
  std::vector<double> out(cells_, 0.0);
  // Fold smallest partials first (top of stack) for a fixed, balanced order.
  for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
    for (std::size_t i = 0; i < cells_; ++i) out[i] += it->sum[i];
  }
  return out;
}

}  // namespace epsd
