// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
#include "epsd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "epsd/numerics.hpp"

namespace epsd {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double sq(double x) { return x * x; }

// sin(u)/u with a series branch near zero.
double sinc_u(double u) {
  if (std::abs(u) < 1e-3) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0);
  }
  return std::sin(u) / u;
}

}  // namespace

// ---------------------------------------------------------------------------
// Spec helpers
// ---------------------------------------------------------------------------

bool is_stft(const TransformSpec& spec) {
  return std::holds_alternative<StftBox>(spec) ||
         std::holds_alternative<StftGauss>(spec);
}

bool is_s_transform(const TransformSpec& spec) {
  return std::holds_alternative<STrans>(spec);
}

bool is_cwt(const TransformSpec& spec) {
  return std::holds_alternative<CwtHarmonic>(spec) ||
         std::holds_alternative<CwtMorse>(spec);
}

const char* spec_name(const TransformSpec& spec) {
  struct Visitor {
    const char* operator()(const StftBox&) const { return "stft-box"; }
    const char* operator()(const StftGauss&) const { return "stft-gauss"; }
    const char* operator()(const STrans&) const { return "s-transform"; }
    const char* operator()(const CwtHarmonic&) const { return "cwt-harmonic"; }
    const char* operator()(const CwtMorse&) const { return "cwt-morse"; }
  };
  return std::visit(Visitor{}, spec);
}

void validate_spec(const TransformSpec& spec) {
  struct Visitor {
    void operator()(const StftBox& s) const {
      if (!(s.h > 0.0) || !std::isfinite(s.h)) {
        throw std::invalid_argument("stft-box: h must be positive and finite");
      }
    }
    void operator()(const StftGauss& s) const {
      if (!(s.sigma > 0.0) || !std::isfinite(s.sigma)) {
        throw std::invalid_argument("stft-gauss: sigma must be positive and finite");
      }
    }
    void operator()(const STrans& s) const {
      if (s.k_of_f.has_value()) {
        if (const auto* pl = std::get_if<PowerLawK>(&*s.k_of_f)) {
          if (!(pl->kappa0 > 0.0) || !(pl->f_ref > 0.0) || !std::isfinite(pl->p)) {
            throw std::invalid_argument(
                "s-transform: power-law K(f) needs kappa0 > 0, f_ref > 0, finite p");
          }
        } else {
          const auto& tab = std::get<TabulatedK>(*s.k_of_f);
          if (tab.freqs.size() < 2 || tab.freqs.size() != tab.values.size()) {
            throw std::invalid_argument(
                "s-transform: tabulated K(f) needs matching freq/value arrays (>= 2)");
          }
          for (std::size_t i = 0; i < tab.freqs.size(); ++i) {
            if (!(tab.values[i] > 0.0) || !(tab.freqs[i] > 0.0)) {
              throw std::invalid_argument(
                  "s-transform: tabulated K(f) needs positive entries");
            }
            if (i > 0 && tab.freqs[i] <= tab.freqs[i - 1]) {
              throw std::invalid_argument(
                  "s-transform: tabulated K(f) frequencies must strictly increase");
            }
          }
        }
      } else if (!(s.kappa > 0.0) || !std::isfinite(s.kappa)) {
        throw std::invalid_argument("s-transform: kappa must be positive and finite");
      }
    }
    void operator()(const CwtHarmonic& s) const {
      if (!(s.m > 0.0) || !(s.n > s.m)) {
        throw std::invalid_argument("cwt-harmonic: require 0 < m < n");
      }
      check_scales(s.scales);
    }
    void operator()(const CwtMorse& s) const {
      if (!(s.beta > 0.0) || !(s.gamma > 0.0)) {
        throw std::invalid_argument("cwt-morse: require beta > 0 and gamma > 0");
      }
      check_scales(s.scales);
    }
    static void check_scales(const ScaleGridSpec& g) {
      if (!(g.c0 > 0.0) || !(g.s0 > 1.0)) {
        throw std::invalid_argument("cwt: scale grid needs c0 > 0 and s0 > 1");
      }
      if (g.levels.has_value() && *g.levels == 0) {
        throw std::invalid_argument("cwt: scale grid needs at least one level");
      }
    }
  };
  std::visit(Visitor{}, spec);
}

double effective_kappa(const STrans& spec, double f) {
  if (!(f > 0.0)) {
    throw std::invalid_argument("s-transform: frequency must be positive");
  }
  if (!spec.k_of_f.has_value()) return spec.kappa;
  if (const auto* pl = std::get_if<PowerLawK>(&*spec.k_of_f)) {
    return pl->kappa0 * std::pow(pl->f_ref / f, pl->p);
  }
  const auto& tab = std::get<TabulatedK>(*spec.k_of_f);
  if (f <= tab.freqs.front()) return tab.values.front();
  if (f >= tab.freqs.back()) return tab.values.back();
  const auto it = std::upper_bound(tab.freqs.begin(), tab.freqs.end(), f);
  const std::size_t hi = static_cast<std::size_t>(it - tab.freqs.begin());
  const double w = (f - tab.freqs[hi - 1]) / (tab.freqs[hi] - tab.freqs[hi - 1]);
  return tab.values[hi - 1] + w * (tab.values[hi] - tab.values[hi - 1]);
}

// ---------------------------------------------------------------------------
// Window / moment kernels
// ---------------------------------------------------------------------------

namespace {

// Gaussian-window moment kernels for time std sigma_t:
//   M_0 = exp(-2 pi^2 sigma^2 xi^2)
//   M_1 = +i 2 pi sigma^2 xi M_0      (purely imaginary, odd)
//   M_2 = (sigma^2 - 4 pi^2 sigma^4 xi^2) M_0
std::complex<double> gauss_moment(double sigma, int m, double xi) {
  const double m0 = std::exp(-2.0 * sq(kPi) * sq(sigma) * sq(xi));
  switch (m) {
    case 0:
      return {m0, 0.0};
    case 1:
      return {0.0, kTwoPi * sq(sigma) * xi * m0};
    default:
      return {(sq(sigma) - 4.0 * sq(kPi) * sq(sq(sigma)) * sq(xi)) * m0, 0.0};
  }
}

// Box-window moment kernels with u = 2 pi h xi:
//   M_0 = sin(u)/u
//   M_1 = -i h (u cos u - sin u)/u^2
//   M_2 = h^2 (u^2 sin u + 2 u cos u - 2 sin u)/u^3
std::complex<double> box_moment(double h, int m, double xi) {
  const double u = kTwoPi * h * xi;
  switch (m) {
    case 0:
      return {sinc_u(u), 0.0};
    case 1: {
      double g;
      if (std::abs(u) < 1e-3) {
        g = -u / 3.0 * (1.0 - u * u / 10.0);
      } else {
        g = (u * std::cos(u) - std::sin(u)) / (u * u);
      }
      return {0.0, -h * g};
    }
    default: {
      double g;
      if (std::abs(u) < 1e-3) {
        g = 1.0 / 3.0 - u * u / 10.0;
      } else {
        g = (u * u * std::sin(u) + 2.0 * u * std::cos(u) - 2.0 * std::sin(u)) /
            (u * u * u);
      }
      return {h * h * g, 0.0};
    }
  }
}

double require_st_frequency(const std::optional<double>& f) {
  if (!f.has_value()) {
    throw std::invalid_argument(
        "s-transform kernel: analysis frequency f is required");
  }
  if (*f == 0.0 || !std::isfinite(*f)) {
    throw std::invalid_argument(
        "s-transform kernel: analysis frequency must be nonzero and finite");
  }
  return std::abs(*f);
}

}  // namespace

double window_ft(const TransformSpec& spec, double xi, std::optional<double> f) {
  if (const auto* box = std::get_if<StftBox>(&spec)) {
    return sinc_u(kTwoPi * box->h * xi);
  }
  if (const auto* g = std::get_if<StftGauss>(&spec)) {
    return std::exp(-2.0 * sq(kPi) * sq(g->sigma) * sq(xi));
  }
  if (const auto* st = std::get_if<STrans>(&spec)) {
    const double fa = require_st_frequency(f);
    const double sigma = effective_kappa(*st, fa) / fa;
    return std::exp(-2.0 * sq(kPi) * sq(sigma) * sq(xi));
  }
  throw std::invalid_argument("window_ft: spec is not a windowed transform");
}

std::complex<double> moment_kernel(const TransformSpec& spec, int m, double xi,
                                   std::optional<double> f) {
  if (m < 0 || m > 2) {
    throw std::invalid_argument("moment_kernel: only moments 0, 1, 2 are supported");
  }
  if (const auto* box = std::get_if<StftBox>(&spec)) {
    return box_moment(box->h, m, xi);
  }
  if (const auto* g = std::get_if<StftGauss>(&spec)) {
    return gauss_moment(g->sigma, m, xi);
  }
  if (const auto* st = std::get_if<STrans>(&spec)) {
    const double fa = require_st_frequency(f);
    return gauss_moment(effective_kappa(*st, fa) / fa, m, xi);
  }
  throw std::invalid_argument("moment_kernel: spec is not a windowed transform");
}

// ---------------------------------------------------------------------------
// Wavelets
// ---------------------------------------------------------------------------

namespace {

double morse_log_amplitude(double beta, double gamma) {
  // ln a_{beta,gamma} with a = 2 (e gamma / beta)^(beta/gamma)
  return std::log(2.0) + beta / gamma * (1.0 + std::log(gamma) - std::log(beta));
}

double morse_ft_value(double beta, double gamma, double f) {
  if (!(f > 0.0)) return 0.0;
  const double w = kTwoPi * f;
  const double lnv = morse_log_amplitude(beta, gamma) + beta * std::log(w) -
                     std::pow(w, gamma);
  return lnv < -745.0 ? 0.0 : std::exp(lnv);
}

}  // namespace

std::complex<double> wavelet_ft(const TransformSpec& spec, double f) {
  if (const auto* hw = std::get_if<CwtHarmonic>(&spec)) {
    if (f >= hw->m && f < hw->n) {
      return {1.0 / std::sqrt(hw->n - hw->m), 0.0};
    }
    return {0.0, 0.0};
  }
  if (const auto* mw = std::get_if<CwtMorse>(&spec)) {
    return {morse_ft_value(mw->beta, mw->gamma, f), 0.0};
  }
  throw std::invalid_argument("wavelet_ft: spec is not a CWT transform");
}

// ---------------------------------------------------------------------------
// D_kappa
// ---------------------------------------------------------------------------

DKappaResult d_kappa_quadrature(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("d_kappa: kappa must be positive and finite");
  }
  const double a = sq(kTwoPi * kappa);
  // Tails truncated where the Gaussian factor falls below 1e-14 of its peak.
  const double half = std::sqrt(14.0 * std::log(10.0) / a);
  const double delta = d_kappa_singular_cutoff;
  auto integrand = [a](double z) {
    return std::exp(-a * sq(z - 1.0)) / std::abs(z);
  };
  double total = 0.0;
  // Positive side, peak region around z = 1.
  const double peak_lo = std::max(delta, 1.0 - half);
  total += integrate(integrand, peak_lo, 1.0 + half);
  // Positive side between the singular cutoff and the peak region.
  if (peak_lo > delta) total += integrate(integrand, delta, peak_lo);
  // Negative side (Gaussian tail only).
  if (1.0 - half < -delta) total += integrate(integrand, 1.0 - half, -delta);
  return {total, false};
}

DKappaResult d_kappa_regression(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("d_kappa: kappa must be positive and finite");
  }
  const double cns0 = 1.0 / (kappa * std::sqrt(4.0 * kPi));
  const double value =
      (1.0 + 2.3 * std::exp(-70.0 * std::pow(kappa, 3.14))) * cns0;
  return {value, kappa <= 0.1};
}

// ---------------------------------------------------------------------------
// Normalization constants
// ---------------------------------------------------------------------------

KernelConstants norm_constants(const TransformSpec& spec, std::optional<double> f) {
  validate_spec(spec);
  KernelConstants k;
  if (const auto* box = std::get_if<StftBox>(&spec)) {
    k.cn2 = 1.0 / (2.0 * box->h);
    k.epsd_scale = 1.0;
    return k;
  }
  if (const auto* g = std::get_if<StftGauss>(&spec)) {
    k.cn2 = 1.0 / (2.0 * g->sigma * std::sqrt(kPi));
    k.epsd_scale = 1.0;
    return k;
  }
  if (const auto* st = std::get_if<STrans>(&spec)) {
    if (!f.has_value()) {
      throw std::invalid_argument(
          "norm_constants: s-transform constants require the analysis frequency");
    }
    const double fa = require_st_frequency(f);
    const double K = effective_kappa(*st, fa);
    k.cns0 = 1.0 / (K * std::sqrt(4.0 * kPi));
    k.d_kappa = d_kappa_quadrature(K).value;
    k.epsd_scale = *k.d_kappa / *k.cns0;
    return k;
  }
  if (const auto* hw = std::get_if<CwtHarmonic>(&spec)) {
    k.c_psi = std::log(hw->n / hw->m) / (hw->n - hw->m);
    k.cnw2 = 1.0;
    k.f0 = 0.5 * (hw->m + hw->n);
    k.epsd_scale = *k.c_psi * *k.f0 / *k.cnw2;
    return k;
  }
  const auto& mw = std::get<CwtMorse>(spec);
  const double b = mw.beta, g = mw.gamma;
  const double a_bg = std::exp(morse_log_amplitude(b, g));
  const double a_2bg = std::exp(morse_log_amplitude(2.0 * b, g));
  k.a_bg = a_bg;
  k.c_psi = 2.0 * a_2bg * gamma_fn(2.0 * b / g) / g;
  k.c1_psi = a_bg * gamma_fn(b / g) / g;
  k.cnw2 = 2.0 * a_2bg * gamma_fn((2.0 * b + 1.0) / g) /
           (kTwoPi * std::pow(2.0, 1.0 / g) * g);
  k.f0 = std::pow(b / g, 1.0 / g) / kTwoPi;
  k.epsd_scale = *k.c_psi * *k.f0 / *k.cnw2;
  return k;
}

// ---------------------------------------------------------------------------
// Scale <-> frequency
// ---------------------------------------------------------------------------

namespace {

double cwt_peak_frequency(const TransformSpec& spec) {
  if (const auto* hw = std::get_if<CwtHarmonic>(&spec)) {
    return 0.5 * (hw->m + hw->n);
  }
  if (const auto* mw = std::get_if<CwtMorse>(&spec)) {
    return std::pow(mw->beta / mw->gamma, 1.0 / mw->gamma) / kTwoPi;
  }
  throw std::invalid_argument("scale map: spec is not a CWT transform");
}

}  // namespace

double scale_to_freq(const TransformSpec& spec, double s) {
  if (!(s > 0.0)) {
    throw std::invalid_argument("scale_to_freq: scale must be positive");
  }
  return cwt_peak_frequency(spec) / s;
}

double freq_to_scale(const TransformSpec& spec, double f) {
  if (!(f > 0.0)) {
    throw std::invalid_argument("freq_to_scale: frequency must be positive");
  }
  return cwt_peak_frequency(spec) / f;
}

// ---------------------------------------------------------------------------
// Effective time width and boundary validity
// ---------------------------------------------------------------------------

namespace {

// Half-width containing 68.3% of the harmonic wavelet's |psi(t)|^2 energy at
// unit scale: |psi(t)|^2 = sin^2(pi (n-m) t) / (pi^2 t^2 (n-m)), so the
// half-width is U*/(pi (n-m)) where (2/pi) * I(U*) = 0.683 with
// I(U) = int_0^U sin^2(u)/u^2 du.
double hw_halfwidth68(double m, double n) {
  auto frac = [](double U) {
    const double I = integrate(
        [](double u) {
          const double s = sinc_u(u);
          return s * s;  // sin^2(u)/u^2
        },
        0.0, U, 1e-10);
    return 2.0 / kPi * I;
  };
  double lo = 0.1, hi = 50.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (frac(mid) < 0.683 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi) / (kPi * (n - m));
}

// RMS time spread of the Morse wavelet at unit scale via
//   sigma_t^2 = (1/4 pi^2) int |psi_hat'(f)|^2 df / int |psi_hat(f)|^2 df,
// with both integrals reducing to gamma functions.
double morse_rms_time(double b, double g) {
  auto mom = [g](double p) {
    // int_0^inf w^p exp(-2 w^gamma) dw = Gamma((p+1)/g) / (g * 2^((p+1)/g))
    return gamma_fn((p + 1.0) / g) / (g * std::pow(2.0, (p + 1.0) / g));
  };
  // |psi_hat'|^2 = a^2 (2 pi)^2 [b w^{b-1} - g w^{b+g-1}]^2 exp(-2 w^g)
  const double d2 = sq(b) * mom(2.0 * b - 2.0) - 2.0 * b * g * mom(2.0 * b + g - 2.0) +
                    sq(g) * mom(2.0 * b + 2.0 * g - 2.0);
  const double e0 = mom(2.0 * b);
  // a^2 cancels; the (2 pi)^2 from the derivative cancels the 1/(4 pi^2), and
  // the dw/(2 pi) substitution factor cancels between numerator and
  // denominator.
  return std::sqrt(d2 / e0);
}

double cwt_unit_scale_width(const TransformSpec& spec) {
  struct Key {
    double a, b;
    int kind;
    bool operator<(const Key& o) const {
      if (kind != o.kind) return kind < o.kind;
      if (a != o.a) return a < o.a;
      return b < o.b;
    }
  };
  static std::map<Key, double> cache;
  static std::mutex mutex;
  Key key{};
  if (const auto* hw = std::get_if<CwtHarmonic>(&spec)) {
    key = {hw->m, hw->n, 0};
  } else {
    const auto& mw = std::get<CwtMorse>(spec);
    key = {mw.beta, mw.gamma, 1};
  }
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const double w = key.kind == 0 ? hw_halfwidth68(key.a, key.b)
                                 : morse_rms_time(key.a, key.b);
  cache.emplace(key, w);
  return w;
}

}  // namespace

double effective_time_sigma(const TransformSpec& spec, double f) {
  if (const auto* box = std::get_if<StftBox>(&spec)) {
    return box->h / std::sqrt(3.0);
  }
  if (const auto* g = std::get_if<StftGauss>(&spec)) {
    return g->sigma;
  }
  if (const auto* st = std::get_if<STrans>(&spec)) {
    if (!(f > 0.0)) {
      throw std::invalid_argument("effective_time_sigma: frequency must be positive");
    }
    return effective_kappa(*st, f) / f;
  }
  if (!(f > 0.0)) {
    throw std::invalid_argument("effective_time_sigma: frequency must be positive");
  }
  const double s = freq_to_scale(spec, f);
  return s * cwt_unit_scale_width(spec);
}

double boundary_validity(const TransformSpec& spec, double f, double tau,
                         double duration) {
  if (const auto* box = std::get_if<StftBox>(&spec)) {
    const double h = box->h;
    const double overlap = std::min(h, std::max(0.0, duration - tau)) +
                           std::min(h, std::max(0.0, tau));
    return std::clamp(overlap / (2.0 * h), 0.0, 1.0);
  }
  const double sigma = effective_time_sigma(spec, f);
  const double mass =
      normal_cdf((duration - tau) / sigma) + normal_cdf(tau / sigma) - 1.0;
  return std::clamp(mass, 0.0, 1.0);
}

}  // namespace epsd
