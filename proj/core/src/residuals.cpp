// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
#include "epsd/residuals.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "epsd/numerics.hpp"
#include "epsd/parallel.hpp"

namespace epsd {

namespace {

double checked_amplitude(const EpsdModel& model, double f, double t) {
  const double s = model.value(f, t);
  if (!(s > 0.0)) {
    throw std::domain_error(
        "taylor_coeffs: model is not strictly positive at the stencil point (f=" +
        std::to_string(f) + ", t=" + std::to_string(t) + ")");
  }
  return std::sqrt(s);
}

bool windowed_tuple_ok(int k, int l, int m, int n) {
  return (k == 2 && l == 2 && m == 0 && n == 0) ||
         (k == 0 && l == 0 && m == 2 && n == 0) ||
         (k == 0 && l == 1 && m == 0 && n == 1);
}

// Quadrature of (1/C_n^2) * integral xi^k M_0^l |M_1|^m M_2^n dxi for a
// Gaussian window of time std sigma; the integrand decays Gaussianly.
double gaussian_window_ratio(double sigma, int k, int l, int m, int n) {
  const double cn2 = 1.0 / (2.0 * sigma * std::sqrt(M_PI));
  const TransformSpec gauss = StftGauss{sigma};
  auto integrand = [&](double xi) {
    double v = std::pow(xi, k);
    if (l) v *= std::pow(window_ft(gauss, xi), l);
    if (m) v *= std::pow(std::abs(moment_kernel(gauss, 1, xi)), m);
    if (n) v *= std::pow(moment_kernel(gauss, 2, xi).real(), n);
    return v;
  };
  return integrate_line(integrand, 0.0, 1.0 / sigma, 1e-9) / cn2;
}

struct WaveletKey {
  double a, b;
  int kind;  // 0 harmonic, 1 morse
  int j;
  bool operator<(const WaveletKey& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (j != o.j) return j < o.j;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};

// j-th central power moment integral (u - f0)^j |psi_hat(u)|^2 du at unit
// scale, by quadrature over the wavelet's support.
double wavelet_central_moment(const TransformSpec& spec, int j) {
  static std::map<WaveletKey, double> cache;
  static std::mutex mutex;
  WaveletKey key{};
  if (const auto* hw = std::get_if<CwtHarmonic>(&spec)) {
    key = {hw->m, hw->n, 0, j};
  } else {
    const auto& mw = std::get<CwtMorse>(spec);
    key = {mw.beta, mw.gamma, 1, j};
  }
  std::lock_guard<std::mutex> lock(mutex);
  const auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const double f0 = scale_to_freq(spec, 1.0);
  auto integrand = [&](double u) {
    const double p = wavelet_ft(spec, u).real();
    double v = p * p;
    for (int i = 0; i < j; ++i) v *= (u - f0);
    return v;
  };
  double value;
  if (key.kind == 0) {
    // Flat band: integrate exactly over the support [m, n].
    value = integrate(integrand, key.a, key.b, 1e-10);
  } else {
    value = integrate_line(integrand, f0, 0.5 * f0, 1e-10);
  }
  cache.emplace(key, value);
  return value;
}

}  // namespace

TaylorCoeffs taylor_coeffs(const EpsdModel& model, double f, double t) {
  if (auto analytic = model.analytic_taylor(f, t)) return *analytic;

  const double df = std::max(1e-3 * std::abs(f), 1e-4);
  const double dt = std::max(1e-3 * std::abs(t), 1e-4);
  const double a00 = checked_amplitude(model, f, t);
  const double apf = checked_amplitude(model, f + df, t);
  const double amf = checked_amplitude(model, f - df, t);
  const double apt = checked_amplitude(model, f, t + dt);
  const double amt = checked_amplitude(model, f, t - dt);
  const double app = checked_amplitude(model, f + df, t + dt);
  const double apm = checked_amplitude(model, f + df, t - dt);
  const double amp = checked_amplitude(model, f - df, t + dt);
  const double amm = checked_amplitude(model, f - df, t - dt);

  TaylorCoeffs c;
  c.f = f;
  c.t = t;
  c.c00 = a00;
  c.c10 = (apf - amf) / (2.0 * df);
  c.c01 = (apt - amt) / (2.0 * dt);
  c.c20 = (apf - 2.0 * a00 + amf) / (2.0 * df * df);
  c.c02 = (apt - 2.0 * a00 + amt) / (2.0 * dt * dt);
  c.c11 = (app - apm - amp + amm) / (4.0 * df * dt);
  return c;
}

double ratio_stft(const TransformSpec& spec, int k, int l, int m, int n,
                  std::optional<double> band) {
  validate_spec(spec);
  if (!is_stft(spec)) {
    throw std::invalid_argument("ratio_stft: spec must be a short-time window");
  }
  if (!windowed_tuple_ok(k, l, m, n)) {
    throw std::invalid_argument(
        "ratio_stft: tuple must be (2,2,0,0), (0,0,2,0), or (0,1,0,1)");
  }
  if (const auto* g = std::get_if<StftGauss>(&spec)) {
    return gaussian_window_ratio(g->sigma, k, l, m, n);
  }
  const double h = std::get<StftBox>(spec).h;
  const double cn2 = 1.0 / (2.0 * h);
  if (k == 2) {
    if (!band.has_value() || !(*band > 0.0)) {
      throw std::invalid_argument(
          "ratio_stft: box-window r(2,2,0,0) diverges over the whole line; a "
          "finite frequency band is required");
    }
    auto integrand = [&](double xi) {
      const double m0 = window_ft(spec, xi);
      return xi * xi * m0 * m0;
    };
    return integrate(integrand, -*band, *band, 1e-9) / cn2;
  }
  // Box (0,0,2,0) and (0,1,0,1): the spectral integrands decay only as
  // 1/xi^2, so direct quadrature is impractical; Parseval reduces both to the
  // window's exact second time moment, h^2/3.
  return h * h / 3.0;
}

double ratio_st(const TransformSpec& spec, double f, int k, int l, int m, int n) {
  validate_spec(spec);
  const auto* st = std::get_if<STrans>(&spec);
  if (!st) {
    throw std::invalid_argument("ratio_st: spec must be an S-transform");
  }
  if (!(f > 0.0)) {
    throw std::invalid_argument("ratio_st: analysis frequency must be positive");
  }
  if (!windowed_tuple_ok(k, l, m, n)) {
    throw std::invalid_argument(
        "ratio_st: tuple must be (2,2,0,0), (0,0,2,0), or (0,1,0,1)");
  }
  return gaussian_window_ratio(effective_kappa(*st, f) / f, k, l, m, n);
}

double ratio_cwt(const TransformSpec& spec, double f, int j, int k) {
  validate_spec(spec);
  if (!is_cwt(spec)) {
    throw std::invalid_argument("ratio_cwt: spec must be a CWT transform");
  }
  if (!(f > 0.0)) {
    throw std::invalid_argument("ratio_cwt: analysis frequency must be positive");
  }
  const bool ok = (j == 1 && k == 0) || (j == 0 && k == 1) || (j == 2 && k == 0) ||
                  (j == 1 && k == 1) || (j == 0 && k == 2);
  if (!ok) {
    throw std::invalid_argument(
        "ratio_cwt: (j,k) must be one of (1,0), (0,1), (2,0), (1,1), (0,2)");
  }
  const KernelConstants kc = norm_constants(spec);
  const double s = freq_to_scale(spec, f);
  const double moment = wavelet_central_moment(spec, j);
  return std::pow(s, k - j) * moment / *kc.cnw2;
}

SpectralGrid residual_grid(const EpsdModel& model, const TransformSpec& spec,
                           const FrequencyAxis& freqs,
                           const std::vector<double>& times, int order,
                           std::optional<double> band, const SpectralGrid* mask) {
  validate_spec(spec);
  if (order != 1 && order != 2) {
    throw std::invalid_argument("residual_grid: order must be 1 or 2");
  }
  const std::size_t rows = freqs.size(), cols = times.size();
  if (mask && (mask->rows() != rows || mask->cols() != cols)) {
    throw std::invalid_argument("residual_grid: mask shape mismatch");
  }
  std::vector<double> values(rows * cols, 0.0);

  const bool windowed = !is_cwt(spec);
  if (windowed && order == 1) {
    // Identically zero for every symmetric short-time window and the
    // S-transform; no model evaluation needed.
    return SpectralGrid(freqs, times, std::move(values), true);
  }

  // Per-row ratio values (constant per row for every transform family).
  struct RowRatios {
    double r2200 = 0, r0020 = 0, r0101 = 0;          // windowed order 2
    double rw10 = 0, rw01 = 0, rw20 = 0, rw11 = 0, rw02 = 0;  // cwt
  };
  std::vector<RowRatios> row_ratios(rows);
  const bool is_st = is_s_transform(spec);
  if (windowed) {
    RowRatios shared{};
    if (!is_st) {
      shared.r2200 = ratio_stft(spec, 2, 2, 0, 0, band);
      shared.r0020 = ratio_stft(spec, 0, 0, 2, 0);
      shared.r0101 = ratio_stft(spec, 0, 1, 0, 1);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (is_st) {
        shared.r2200 = ratio_st(spec, freqs[r], 2, 2, 0, 0);
        shared.r0020 = ratio_st(spec, freqs[r], 0, 0, 2, 0);
        shared.r0101 = ratio_st(spec, freqs[r], 0, 1, 0, 1);
      }
      row_ratios[r] = shared;
    }
  } else {
    for (std::size_t r = 0; r < rows; ++r) {
      RowRatios& rr = row_ratios[r];
      rr.rw10 = ratio_cwt(spec, freqs[r], 1, 0);
      rr.rw01 = ratio_cwt(spec, freqs[r], 0, 1);
      if (order == 2) {
        rr.rw20 = ratio_cwt(spec, freqs[r], 2, 0);
        rr.rw11 = ratio_cwt(spec, freqs[r], 1, 1);
        rr.rw02 = ratio_cwt(spec, freqs[r], 0, 2);
      }
    }
  }

  parallel_for(rows, [&](std::size_t r) {
    const RowRatios& rr = row_ratios[r];
    for (std::size_t q = 0; q < cols; ++q) {
      if (mask && mask->at(r, q) == 0.0) continue;
      const TaylorCoeffs c = taylor_coeffs(model, freqs[r], times[q]);
      double v;
      if (windowed) {
        v = (c.c10 * c.c10 + 2.0 * c.c20 * c.c00) * rr.r2200 +
            c.c01 * c.c01 * rr.r0020 + 2.0 * c.c02 * c.c00 * rr.r0101;
      } else if (order == 1) {
        v = 2.0 * c.c00 * c.c01 * rr.rw01 + 2.0 * c.c00 * c.c10 * rr.rw10;
      } else {
        v = (c.c10 * c.c10 + 2.0 * c.c00 * c.c20) * rr.rw20 +
            (2.0 * c.c10 * c.c01 + 2.0 * c.c00 * c.c11) * rr.rw11 +
            (c.c01 * c.c01 + 2.0 * c.c00 * c.c02) * rr.rw02;
      }
      values[r * cols + q] = v;
    }
  });
  return SpectralGrid(freqs, times, std::move(values), true);
}

double aggregate_abs(const SpectralGrid& grid, const SpectralGrid* mask) {
  if (mask && (mask->rows() != grid.rows() || mask->cols() != grid.cols())) {
    throw std::invalid_argument("aggregate_abs: mask shape mismatch");
  }
  double acc = 0.0;
  std::size_t n = 0;
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t q = 0; q < grid.cols(); ++q) {
      if (mask && mask->at(r, q) == 0.0) continue;
      acc += std::abs(grid.at(r, q));
      ++n;
    }
  }
  return n == 0 ? 0.0 : acc / static_cast<double>(n);
}

}  // namespace epsd
