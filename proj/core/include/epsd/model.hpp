// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Abstract target-EPSD model interface shared by the simulator, the residual
// machinery, and the Monte Carlo pipeline.
#pragma once

#include <optional>

namespace epsd {

// Taylor coefficients of the modulation amplitude A(f,t) = sqrt(S(f,t))
// around a point, through total order 2:
//   c_lm = (1/(l! m!)) d^{l+m} A / df^l dt^m.
struct TaylorCoeffs {
  double f = 0.0;
  double t = 0.0;
  double c00 = 0.0;
  double c10 = 0.0;  // d/df
  double c01 = 0.0;  // d/dt
  double c20 = 0.0;  // (1/2) d2/df2
  double c11 = 0.0;  // d2/df dt
  double c02 = 0.0;  // (1/2) d2/dt2
};

// Two-sided evolutionary PSD surface S(f,t) >= 0 with S(f,t) = S(-f,t),
// defined for t in [0, duration].
class EpsdModel {
 public:
  virtual ~EpsdModel() = default;

  // Two-sided spectral density (units^2/Hz); must be >= 0 and finite.
  virtual double value(double f, double t) const = 0;

  // Record length in seconds over which the model is defined.
  virtual double duration() const = 0;

  // Models that know the analytic derivatives of A = sqrt(S) may supply them;
  // the default defers to finite differences in the residual machinery.
  virtual std::optional<TaylorCoeffs> analytic_taylor(double /*f*/,
                                                      double /*t*/) const {
    return std::nullopt;
  }
};

}  // namespace epsd
