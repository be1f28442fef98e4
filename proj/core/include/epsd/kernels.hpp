// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Transform specifications and their analytic kernels: window Fourier
// transforms, moment kernels, wavelet Fourier transforms, normalization
// constants, the S-transform energy integral D_kappa, and scale<->frequency
// maps.
#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "epsd/types.hpp"

namespace epsd {

// ---------------------------------------------------------------------------
// Transform specifications
// ---------------------------------------------------------------------------

// Box window v(t) = 1/(2h) on [-h, h].
struct StftBox {
  double h = 1.0;
};

// Gaussian window v(t) = exp(-t^2/(2 sigma^2)) / (sqrt(2 pi) sigma).
struct StftGauss {
  double sigma = 1.0;
};

// Frequency-dependent S-transform width K(f): power law kappa0*(f_ref/f)^p.
struct PowerLawK {
  double kappa0 = 1.0;
  double f_ref = 1.0;
  double p = 0.0;
};

// Tabulated monotone K(f) curve, linearly interpolated (clamped outside).
struct TabulatedK {
  std::vector<double> freqs;   // strictly increasing, positive
  std::vector<double> values;  // positive
};

// S-transform with voice window
//   w(f, t) = |f| exp(-f^2 t^2 / (2 K(f)^2)) / (sqrt(2 pi) K(f)).
// Constant kappa is the classic case; k_of_f generalizes it.
struct STrans {
  double kappa = 1.0;
  std::optional<std::variant<PowerLawK, TabulatedK>> k_of_f;
};

// Scale grid request: s_j = c0 * s0^j for j = 0..levels-1. When `levels` is
// omitted the transform resolves it against the record (levels whose center
// frequency lies within [1/duration, nyquist]).
struct ScaleGridSpec {
  double c0 = 0.01;
  double s0 = 1.4142135623730951;
  std::optional<std::size_t> levels;
};

// Harmonic wavelet: flat band psi_hat = 1/sqrt(n - m) on [m, n), m < n.
struct CwtHarmonic {
  double m = 1.0;
  double n = 2.0;
  ScaleGridSpec scales;
};

// Generalized Morse wavelet psi_hat(f) = a * (2 pi f)^beta exp(-(2 pi f)^gamma).
struct CwtMorse {
  double beta = 20.0;
  double gamma = 3.0;
  ScaleGridSpec scales;
};

using TransformSpec =
    std::variant<StftBox, StftGauss, STrans, CwtHarmonic, CwtMorse>;

bool is_stft(const TransformSpec& spec);
bool is_s_transform(const TransformSpec& spec);
bool is_cwt(const TransformSpec& spec);
// Short machine name: stft-box, stft-gauss, s-transform, cwt-harmonic, cwt-morse.
const char* spec_name(const TransformSpec& spec);
// Validates parameter ranges; throws std::invalid_argument on violation.
void validate_spec(const TransformSpec& spec);

// Effective K at frequency f for an S-transform spec (kappa if no K(f)).
double effective_kappa(const STrans& spec, double f);

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

// Window Fourier transform M_0(xi) for STFT windows; for the S-transform the
// voice window depends on the analysis frequency f (required, nonzero).
double window_ft(const TransformSpec& spec, double xi,
                 std::optional<double> f = std::nullopt);

// Moment kernel M_m(xi) = integral of s^m v(-s) e^{i 2 pi xi s} ds for
// m in {0, 1, 2}. For even real windows M_0 and M_2 are real, M_1 is purely
// imaginary and odd.
std::complex<double> moment_kernel(const TransformSpec& spec, int m, double xi,
                                   std::optional<double> f = std::nullopt);

// Wavelet Fourier transform psi_hat(f) (analytic wavelets: zero for f <= 0).
std::complex<double> wavelet_ft(const TransformSpec& spec, double f);

// Normalization constants. Fields are populated only where applicable to the
// spec's family; absent means "not defined for this transform".
struct KernelConstants {
  std::optional<double> cn2;         // STFT: integral of |M_0|^2
  std::optional<double> cns0;        // ST: 1/(K sqrt(4 pi))
  std::optional<double> d_kappa;     // ST: energy integral D_K (quadrature)
  std::optional<double> c_psi;       // CWT admissibility constant
  std::optional<double> c1_psi;      // CWT first moment of psi_hat (Morse)
  std::optional<double> cnw2;        // CWT energy of psi_hat
  std::optional<double> f0;          // CWT peak frequency of psi_hat
  std::optional<double> a_bg;        // Morse amplitude a_{beta,gamma}
  double epsd_scale = 1.0;           // transform-domain PSD -> EPSD multiplier
};

// f is required for S-transform variants (constants depend on K(f)).
KernelConstants norm_constants(const TransformSpec& spec,
                               std::optional<double> f = std::nullopt);

// S-transform energy integral D_kappa = ∫ exp(-(2 pi kappa (z-1))^2) dz/|z|.
// The 1/|z| weight makes the integral log-divergent at z = 0 with coefficient
// exp(-(2 pi kappa)^2); the quadrature excludes |z| < d_kappa_singular_cutoff,
// which reproduces the published regression curve (see d_kappa_regression)
// within 10% over kappa in [0.1, 3] and is numerically irrelevant for
// kappa >= 0.5.
inline constexpr double d_kappa_singular_cutoff = 3e-3;

struct DKappaResult {
  double value = 0.0;
  bool low_kappa_warning = false;  // regression evaluated at kappa <= 0.1
};

DKappaResult d_kappa_quadrature(double kappa);
DKappaResult d_kappa_regression(double kappa);

// Scale <-> frequency maps for CWT specs: f = f0 / s.
double scale_to_freq(const TransformSpec& spec, double s);
double freq_to_scale(const TransformSpec& spec, double f);

// Effective time-localization width (seconds) of the analyzing kernel at a
// given frequency, used by boundary masking: box h/sqrt(3) is not used --
// the box is handled by exact overlap; Gauss sigma; ST K(f)/f; CWT
// s * (unit-scale halfwidth containing 68.3% of |psi|^2 energy).
double effective_time_sigma(const TransformSpec& spec, double f);

// Fraction of window mass inside [0, duration] for a window centered at tau.
// Box windows use the exact overlap fraction; all other kernels use the
// Gaussian-mass model with effective_time_sigma.
double boundary_validity(const TransformSpec& spec, double f, double tau,
                         double duration);

}  // namespace epsd
