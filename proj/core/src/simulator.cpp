// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
#include "epsd/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace epsd {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

SeismicModel::SeismicModel(SeismicModelParams params) : params_(params) {
  if (!(params_.e_t > 0.0) || !(params_.t_total > 0.0) || !(params_.eta > 0.0) ||
      !(params_.lam_c > 0.0) || !(params_.lam_pi_mult > 0.0) ||
      !(params_.lam_den > 0.0)) {
    throw std::invalid_argument(
        "seismic model: energy, duration, spread, and envelope coefficients "
        "must be positive");
  }
}

double SeismicModel::lambda0(double t) const {
  if (!(t > 0.0)) return 0.0;
  const double lt = std::log(t);
  const double arg = (lt - params_.lam_mu);
  const double expo = -arg * arg / params_.lam_den;
  if (expo < -745.0) return 0.0;
  return std::exp(expo) /
         (params_.lam_c * t * std::sqrt(params_.lam_pi_mult * kPi));
}

double SeismicModel::corner_frequency(double t) const {
  if (!(t > 0.0)) {
    throw std::invalid_argument("corner_frequency: t must be positive");
  }
  return std::exp(params_.fc_a - params_.fc_b * std::log(t));
}

double SeismicModel::value(double f, double t) const {
  const double lam = lambda0(t);
  const double af = std::abs(f);
  if (lam == 0.0 || af == 0.0) return 0.0;
  const double eta = params_.eta;
  // Log-space evaluation keeps the 1/f factor and the lognormal exponent from
  // overflowing separately at extreme frequencies.
  const double z = (std::log(af) - (params_.fc_a - params_.fc_b * std::log(t)) +
                    0.5 * eta * eta) /
                   eta;
  const double ln_s = std::log(0.5 * params_.e_t * lam / (std::sqrt(kTwoPi) * eta)) -
                      std::log(af) - 0.5 * z * z;
  if (ln_s < -745.0) return 0.0;
  return std::exp(ln_s);
}

double srm_phase(std::uint64_t seed, std::uint64_t record, std::uint64_t harmonic) {
  const std::uint64_t bits = mix64(mix64(mix64(seed) ^ record) ^ harmonic);
  // Top 53 bits -> [0,1), scaled to [0, 2 pi).
  return kTwoPi * (static_cast<double>(bits >> 11) * 0x1.0p-53);
}

SrmGenerator::SrmGenerator(const EpsdModel& model, double dt, std::uint64_t seed)
    : dt_(dt), seed_(seed) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("srm: dt must be positive");
  }
  const double T = model.duration();
  const double n_real = T / dt;
  const auto n = static_cast<std::size_t>(std::llround(n_real));
  if (n < 2 || std::abs(static_cast<double>(n) * dt - T) > dt) {
    throw std::invalid_argument(
        "srm: model duration must be a whole number of samples (within one)");
  }
  samples_ = n;

  const double df = 1.0 / T;
  const double nyquist = 0.5 / dt;
  for (std::size_t k = 0;; ++k) {
    const double fk = (static_cast<double>(k) + 0.5) * df;
    if (!(fk < nyquist)) break;  // strictly below Nyquist
    freqs_.push_back(fk);
  }

  amplitudes_.resize(freqs_.size() * samples_);
  for (std::size_t k = 0; k < freqs_.size(); ++k) {
    for (std::size_t q = 0; q < samples_; ++q) {
      const double s = model.value(freqs_[k], static_cast<double>(q) * dt);
      if (!(s >= 0.0) || !std::isfinite(s)) {
        throw std::invalid_argument(
            "srm: model must be finite and nonnegative over the sampling grid");
      }
      amplitudes_[k * samples_ + q] = std::sqrt(4.0 * s * df);
    }
  }
}

TimeSeries SrmGenerator::record(std::size_t index) const {
  std::vector<double> x(samples_, 0.0);
  for (std::size_t k = 0; k < freqs_.size(); ++k) {
    const double phi = srm_phase(seed_, index, k);
    const double step = kTwoPi * freqs_[k] * dt_;
    // Two-term cosine recurrence over the uniform time grid.
    const double coef = 2.0 * std::cos(step);
    double prev = std::cos(phi - step);
    double curr = std::cos(phi);
    const double* amp = &amplitudes_[k * samples_];
    for (std::size_t q = 0; q < samples_; ++q) {
      x[q] += amp[q] * curr;
      const double next = coef * curr - prev;
      prev = curr;
      curr = next;
    }
  }
  return TimeSeries(std::move(x), dt_);
}

std::vector<TimeSeries> srm_simulate(const EpsdModel& model, std::size_t count,
                                     double dt, std::uint64_t seed) {
  SrmGenerator gen(model, dt, seed);
  std::vector<TimeSeries> out;
  out.reserve(count);
  for (std::size_t r = 0; r < count; ++r) out.push_back(gen.record(r));
  return out;
}

}  // namespace epsd
