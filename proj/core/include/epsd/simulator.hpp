// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Target EPSD models and spectral-representation generation of evolutionary
// Gaussian sample records.
#pragma once

#include <cstdint>
#include <vector>

#include "epsd/model.hpp"
#include "epsd/types.hpp"

namespace epsd {

// Nonstationary seismic target: a lognormal frequency shape with a
// time-decaying corner frequency, modulated by a lognormal-form energy
// envelope lambda0(t). Two-sided:
//   S(f,t) = (1/2) e_t lambda0(t) / (|f| sqrt(2 pi) eta)
//            * exp(-((ln|f| - ln Fc(t) + eta^2/2)^2) / (2 eta^2))
//   Fc(t)  = exp(fc_a - fc_b ln t)
//   lambda0(t) = exp(-((ln t - lam_mu)^2)/lam_den) / (lam_c t sqrt(lam_pi_mult pi))
// The full-line frequency integral of S equals e_t * lambda0(t).
struct SeismicModelParams {
  double e_t = 1478.0;      // total-energy scale, units^2/s
  double t_total = 21.5;    // record duration, s
  double eta = 0.71;        // lognormal frequency spread
  double fc_a = 1.942;      // corner-frequency intercept (log-space)
  double fc_b = 0.35;       // corner-frequency decay exponent
  double lam_c = 0.42;      // envelope normalization coefficient
  double lam_pi_mult = 1.42;  // pi multiplier under the envelope square root
  double lam_mu = 2.15;     // envelope log-time center
  double lam_den = 0.18;    // envelope log-time denominator (2 sigma^2 form)
};

class SeismicModel final : public EpsdModel {
 public:
  explicit SeismicModel(SeismicModelParams params = {});

  double value(double f, double t) const override;
  double duration() const override { return params_.t_total; }

  // Energy-envelope density; 0 for t <= 0 (continuous limit).
  double lambda0(double t) const;
  // Corner frequency Fc(t); requires t > 0.
  double corner_frequency(double t) const;
  const SeismicModelParams& params() const { return params_; }

 private:
  SeismicModelParams params_;
};

// Phase for one (seed, record, harmonic) triple: uniform on [0, 2 pi),
// produced by a counter-based integer mix so that any record or harmonic can
// be generated independently and in any order.
double srm_phase(std::uint64_t seed, std::uint64_t record, std::uint64_t harmonic);

// Spectral-representation generator over a model:
//   x(t_q) = sum_k sqrt(4 S(f_k, t_q) df) cos(2 pi f_k t_q + phi_k),
// f_k = (k + 1/2) df with df = 1/T, keeping harmonics strictly below the
// Nyquist frequency. Amplitudes are precomputed once per model; records differ
// only by their keyed random phases, so generation is deterministic and
// order-free.
class SrmGenerator {
 public:
  SrmGenerator(const EpsdModel& model, double dt, std::uint64_t seed);

  std::size_t samples() const { return samples_; }
  std::size_t harmonics() const { return freqs_.size(); }
  double dt() const { return dt_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<double>& harmonic_freqs() const { return freqs_; }

  TimeSeries record(std::size_t index) const;

 private:
  double dt_;
  std::uint64_t seed_;
  std::size_t samples_;
  std::vector<double> freqs_;       // f_k
  std::vector<double> amplitudes_;  // harmonics x samples, sqrt(4 S df)
};

// Convenience batch form of SrmGenerator::record for indices [0, count).
std::vector<TimeSeries> srm_simulate(const EpsdModel& model, std::size_t count,
                                     double dt, std::uint64_t seed);

}  // namespace epsd
