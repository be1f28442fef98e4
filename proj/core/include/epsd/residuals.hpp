// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Taylor-coefficient engine for the modulation amplitude, the window/wavelet
// moment-ratio integrals, and the signed residual grids that quantify the
// slow-variation error of each transform's EPSD estimate.
#pragma once

#include <optional>
#include <vector>

#include "epsd/kernels.hpp"
#include "epsd/model.hpp"
#include "epsd/types.hpp"

namespace epsd {

// Taylor coefficients of A = sqrt(S) at (f,t), including the 1/(l! m!)
// factors. Uses the model's analytic derivatives when provided; otherwise
// central finite differences with steps df = max(1e-3 |f|, 1e-4) and
// dt = max(1e-3 |t|, 1e-4). Rejects stencils touching S <= 0 (the square
// root is not differentiable there).
TaylorCoeffs taylor_coeffs(const EpsdModel& model, double f, double t);

// Moment-ratio integral for the short-time windows:
//   r(k,l,m,n) = (1/C_n^2) * integral xi^k M_0^l |M_1|^m M_2^n dxi
// over the supported tuples (2,2,0,0), (0,0,2,0), (0,1,0,1). For the box
// window, (2,2,0,0) does not converge without a finite band [-band, band]
// and is rejected when none is given; the other box tuples use the exact
// window time-moment identities (the integrands decay too slowly for direct
// quadrature, and Parseval gives them in closed form).
double ratio_stft(const TransformSpec& spec, int k, int l, int m, int n,
                  std::optional<double> band = std::nullopt);

// Same ratios for the S-transform voice window at analysis frequency f > 0
// (Gaussian with time std K(f)/f).
double ratio_st(const TransformSpec& spec, double f, int k, int l, int m, int n);

// Wavelet power-moment ratio at analysis frequency f (scale s = f0/f):
//   r_w(j,k) = (s^k / C_nw^2) * integral (eta - f)^j s |psi_hat(s eta)|^2 deta
// for (j,k) in {(1,0),(0,1),(2,0),(1,1),(0,2)}, evaluated by quadrature of
// the wavelet's central power moments.
double ratio_cwt(const TransformSpec& spec, double f, int j, int k);

// Signed residual grid of the given order (1 or 2) for the model under the
// transform, evaluated pointwise on (freqs x times).
//   order 1: identically zero for the short-time windows and the
//            S-transform; for CWT,
//            R1 = 2 c00 c01 r_w(0,1) + 2 c00 c10 r_w(1,0).
//   order 2: windowed, (c10^2 + 2 c00 c20) r(2,2,0,0) + c01^2 r(0,0,2,0)
//            + 2 c00 c02 r(0,1,0,1);  CWT,
//            (c10^2 + 2 c00 c20) r_w(2,0) + (2 c10 c01 + 2 c00 c11) r_w(1,1)
//            + (c01^2 + 2 c00 c02) r_w(0,2).
// `band` propagates to ratio_stft for the box window (required at order 2).
// Cells where `mask` (if given) is zero are skipped and left at zero; all
// other cells require S > 0 on the difference stencil.
SpectralGrid residual_grid(const EpsdModel& model, const TransformSpec& spec,
                           const FrequencyAxis& freqs,
                           const std::vector<double>& times, int order,
                           std::optional<double> band = std::nullopt,
                           const SpectralGrid* mask = nullptr);

// Mean absolute value over the cells where `mask` is nonzero (all cells when
// no mask); 0 when no cell qualifies.
double aggregate_abs(const SpectralGrid& grid, const SpectralGrid* mask = nullptr);

}  // namespace epsd
