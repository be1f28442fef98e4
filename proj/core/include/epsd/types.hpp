// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Value types shared across the toolkit: sampled records, frequency/scale
// axes, complex coefficient grids, and real spectral grids.
#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace epsd {

// Uniformly sampled real-valued record. samples[q] is the value at
// t0 + q*dt. Construction validates: at least 2 samples, dt positive and
// finite, every sample finite.
class TimeSeries {
 public:
  TimeSeries(std::vector<double> samples, double dt, double t0 = 0.0);

  const std::vector<double>& samples() const { return samples_; }
  double dt() const { return dt_; }
  double t0() const { return t0_; }
  std::size_t size() const { return samples_.size(); }
  double time_at(std::size_t q) const { return t0_ + static_cast<double>(q) * dt_; }
  double duration() const { return static_cast<double>(samples_.size() - 1) * dt_; }
  double nyquist() const { return 0.5 / dt_; }

 private:
  std::vector<double> samples_;
  double dt_;
  double t0_;
};

// Strictly increasing, finite, non-negative frequency values (Hz).
class FrequencyAxis {
 public:
  explicit FrequencyAxis(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  // Discrete-Fourier bin axis k*df for k in [1, floor(nyquist/df)].
  static FrequencyAxis dft_bins(double df, double nyquist);

 private:
  std::vector<double> values_;
};

// Geometric scale sequence s_j = c0 * s0^j, ascending (c0 > 0, s0 > 1).
// Validation requires the ratio between consecutive values to be constant to
// relative 1e-12.
class ScaleAxis {
 public:
  explicit ScaleAxis(std::vector<double> values);
  static ScaleAxis geometric(double c0, double s0, std::size_t count);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double c0() const { return values_.front(); }
  double ratio() const;

 private:
  std::vector<double> values_;
};

using AxisVariant = std::variant<FrequencyAxis, ScaleAxis>;

// Complex transform coefficients on (axis row) x (time column). Carries a
// per-column validity flag: the fraction of window mass inside the record for
// the least-localized row of the grid (1.0 where no boundary truncation).
class CoefficientGrid {
 public:
  CoefficientGrid(AxisVariant axis, std::vector<double> times,
                  std::vector<std::complex<double>> data,
                  std::vector<double> column_validity = {});

  const AxisVariant& axis() const { return axis_; }
  const std::vector<double>& times() const { return times_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return times_.size(); }
  const std::complex<double>& at(std::size_t row, std::size_t col) const {
    return data_[row * times_.size() + col];
  }
  std::complex<double>& at(std::size_t row, std::size_t col) {
    return data_[row * times_.size() + col];
  }
  const std::vector<std::complex<double>>& data() const { return data_; }
  const std::vector<double>& column_validity() const { return validity_; }
  bool axis_is_frequency() const;
  // Row coordinates regardless of axis kind.
  double axis_value(std::size_t row) const;

 private:
  AxisVariant axis_;
  std::vector<double> times_;
  std::vector<std::complex<double>> data_;
  std::vector<double> validity_;
  std::size_t rows_;
};

// Real-valued grid on (frequency row) x (time column). Values must be finite;
// non-negative unless is_signed (residual grids carry signed values).
class SpectralGrid {
 public:
  SpectralGrid(FrequencyAxis freqs, std::vector<double> times,
               std::vector<double> values, bool is_signed = false);

  const FrequencyAxis& freqs() const { return freqs_; }
  const std::vector<double>& times() const { return times_; }
  std::size_t rows() const { return freqs_.size(); }
  std::size_t cols() const { return times_.size(); }
  double at(std::size_t row, std::size_t col) const {
    return values_[row * times_.size() + col];
  }
  double& at(std::size_t row, std::size_t col) {
    return values_[row * times_.size() + col];
  }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  bool is_signed() const { return is_signed_; }

 private:
  FrequencyAxis freqs_;
  std::vector<double> times_;
  std::vector<double> values_;
  bool is_signed_;
};

}  // namespace epsd
