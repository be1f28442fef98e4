// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
#include "epsd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epsd {

namespace {

// Lanczos coefficients for g = 7, n = 9 (Godfrey's set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,  12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("gamma_fn: argument must be positive");
  }
  if (x < 0.5) {
    // Reflection keeps the Lanczos series in its accurate range.
    return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1, 1] (7-point Gauss embedded).
constexpr double kXgk[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kWk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kWg[7] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469,
                           0.381830050505119, 0.279705391489277,
                           0.129484966168870};

struct GkResult {
  double integral;
  double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  // Symmetric nodes are summed in +/- pairs so that integrands odd about the
  // midpoint cancel exactly (bit-zero), not just to rounding.
  const double vc = f(c);
  double k = kWk[7] * vc;
  double g = kWg[3] * vc;
  for (int i = 0; i < 7; ++i) {
    const double pair = f(c + h * kXgk[i]) + f(c + h * kXgk[14 - i]);
    k += kWk[i] * pair;
    if (i % 2 == 1) g += kWg[i / 2] * pair;
  }
  return {k * h, std::abs((k - g) * h)};
}

void adapt(const std::function<double(double)>& f, double a, double b,
           double tol, int depth, double& total, double& err_total) {
  const GkResult r = gk15(f, a, b);
  if (depth >= 50 || r.error <= tol) {
    total += r.integral;
    err_total += r.error;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, tol * 0.6, depth + 1, total, err_total);
  adapt(f, c, b, tol * 0.6, depth + 1, total, err_total);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  const GkResult first = gk15(f, a, b);
  double tol = std::max(abs_tol, rel_tol * std::abs(first.integral));
  if (tol <= 0.0) tol = rel_tol;  // fully zero estimate: fall back
  if (first.error <= tol) return first.integral;
  double total = 0.0, err = 0.0;
  const double c = 0.5 * (a + b);
  adapt(f, a, c, 0.5 * tol, 1, total, err);
  adapt(f, c, b, 0.5 * tol, 1, total, err);
  return total;
}

double integrate_line(const std::function<double(double)>& f, double peak_x,
                      double initial_halfwidth, double rel_tol,
                      double tail_cut) {
  if (!(initial_halfwidth > 0.0)) {
    throw std::invalid_argument("integrate_line: halfwidth must be positive");
  }
  // Integrate an initial window around the peak, then add geometrically
  // growing shells until a shell's contribution falls below tail_cut of the
  // running total. Each piece gets its own well-scaled tolerance, so a wide
  // tail never dilutes the resolution of the peak region.
  double w = initial_halfwidth;
  double total = integrate(f, peak_x - w, peak_x + w, rel_tol);
  double scale = std::abs(total);
  for (int i = 0; i < 60; ++i) {
    const double lo = integrate(f, peak_x - 2.0 * w, peak_x - w, rel_tol);
    const double hi = integrate(f, peak_x + w, peak_x + 2.0 * w, rel_tol);
    total += lo + hi;
    scale = std::max(scale, std::abs(total));
    w *= 2.0;
    if (std::abs(lo) + std::abs(hi) <= tail_cut * std::max(scale, 1e-300)) {
      break;
    }
  }
  return total;
}

double pairwise_sum(const double* data, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace epsd
