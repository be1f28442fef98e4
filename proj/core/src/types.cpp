// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
#include "epsd/types.hpp"

#include <cmath>
#include <stdexcept>

namespace epsd {

TimeSeries::TimeSeries(std::vector<double> samples, double dt, double t0)
    : samples_(std::move(samples)), dt_(dt), t0_(t0) {
  if (samples_.size() < 2) {
    throw std::invalid_argument("TimeSeries: need at least 2 samples");
  }
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw std::invalid_argument("TimeSeries: dt must be positive and finite");
  }
  if (!std::isfinite(t0_)) {
    throw std::invalid_argument("TimeSeries: t0 must be finite");
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("TimeSeries: non-finite sample value");
    }
  }
}

FrequencyAxis::FrequencyAxis(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("FrequencyAxis: empty");
  }
  double prev = -1.0;
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument(
          "FrequencyAxis: values must be finite and non-negative");
    }
    if (v <= prev) {
      throw std::invalid_argument("FrequencyAxis: values must strictly increase");
    }
    prev = v;
  }
}

FrequencyAxis FrequencyAxis::dft_bins(double df, double nyquist) {
  if (!(df > 0.0) || !(nyquist > 0.0)) {
    throw std::invalid_argument("FrequencyAxis::dft_bins: df and nyquist must be positive");
  }
  std::vector<double> v;
  for (std::size_t k = 1; static_cast<double>(k) * df <= nyquist * (1.0 + 1e-12); ++k) {
    v.push_back(static_cast<double>(k) * df);
  }
  return FrequencyAxis(std::move(v));
}

ScaleAxis::ScaleAxis(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("ScaleAxis: empty");
  }
  if (!(values_.front() > 0.0) || !std::isfinite(values_.front())) {
    throw std::invalid_argument("ScaleAxis: values must be positive and finite");
  }
  if (values_.size() >= 2) {
    const double r = values_[1] / values_[0];
    if (!(r > 1.0)) {
      throw std::invalid_argument("ScaleAxis: ratio s0 must exceed 1 (ascending)");
    }
    for (std::size_t i = 1; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw std::invalid_argument("ScaleAxis: non-finite value");
      }
      const double ri = values_[i] / values_[i - 1];
      if (std::abs(ri / r - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "ScaleAxis: values must form a geometric sequence (relative 1e-12)");
      }
    }
  }
}

ScaleAxis ScaleAxis::geometric(double c0, double s0, std::size_t count) {
  if (!(c0 > 0.0) || !(s0 > 1.0)) {
    throw std::invalid_argument("ScaleAxis::geometric: need c0 > 0 and s0 > 1");
  }
  if (count == 0) {
    throw std::invalid_argument("ScaleAxis::geometric: need at least one level");
  }
  std::vector<double> v(count);
  for (std::size_t j = 0; j < count; ++j) {
    v[j] = c0 * std::pow(s0, static_cast<double>(j));
  }
  return ScaleAxis(std::move(v));
}

double ScaleAxis::ratio() const {
  if (values_.size() < 2) return 1.0;
  return values_[1] / values_[0];
}

CoefficientGrid::CoefficientGrid(AxisVariant axis, std::vector<double> times,
                                 std::vector<std::complex<double>> data,
                                 std::vector<double> column_validity)
    : axis_(std::move(axis)),
      times_(std::move(times)),
      data_(std::move(data)),
      validity_(std::move(column_validity)) {
  rows_ = std::visit([](const auto& a) { return a.size(); }, axis_);
  if (times_.empty()) {
    throw std::invalid_argument("CoefficientGrid: empty time axis");
  }
  if (data_.size() != rows_ * times_.size()) {
    throw std::invalid_argument("CoefficientGrid: data size mismatch");
  }
  if (validity_.empty()) {
    validity_.assign(times_.size(), 1.0);
  } else if (validity_.size() != times_.size()) {
    throw std::invalid_argument("CoefficientGrid: validity size mismatch");
  }
}

bool CoefficientGrid::axis_is_frequency() const {
  return std::holds_alternative<FrequencyAxis>(axis_);
}

double CoefficientGrid::axis_value(std::size_t row) const {
  return std::visit([row](const auto& a) { return a[row]; }, axis_);
}

SpectralGrid::SpectralGrid(FrequencyAxis freqs, std::vector<double> times,
                           std::vector<double> values, bool is_signed)
    : freqs_(std::move(freqs)),
      times_(std::move(times)),
      values_(std::move(values)),
      is_signed_(is_signed) {
  if (times_.empty()) {
    throw std::invalid_argument("SpectralGrid: empty time axis");
  }
  if (values_.size() != freqs_.size() * times_.size()) {
    throw std::invalid_argument("SpectralGrid: value size mismatch");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("SpectralGrid: non-finite value");
    }
    if (!is_signed_ && v < 0.0) {
      throw std::invalid_argument(
          "SpectralGrid: negative value in non-signed grid");
    }
  }
}

}  // namespace epsd
