// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Seismic target model (closed-form envelope/corner-frequency facts and the
// frequency-integral identity) and the spectral-representation generator
// (keyed phases, closed-form single-harmonic records, ensemble statistics).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "epsd/model.hpp"
#include "epsd/numerics.hpp"
#include "epsd/simulator.hpp"
#include "epsd/types.hpp"
#include "helpers.hpp"

using namespace epsd;
using testutil::rel_err;
using testutil::throws_with;

namespace {
constexpr double kPi = 3.14159265358979323846;

// S(f,t) = s0 on band_lo <= |f| <= band_hi, 0 elsewhere: under the generator's
// half-integer harmonic comb this can be tuned to excite exactly one harmonic.
class BandModel final : public EpsdModel {
 public:
  BandModel(double s0, double lo, double hi, double duration)
      : s0_(s0), lo_(lo), hi_(hi), duration_(duration) {}
  double value(double f, double /*t*/) const override {
    const double af = std::abs(f);
    return (af >= lo_ && af <= hi_) ? s0_ : 0.0;
  }
  double duration() const override { return duration_; }

 private:
  double s0_, lo_, hi_, duration_;
};

class NanModel final : public EpsdModel {
 public:
  double value(double f, double /*t*/) const override {
    return f > 5.0 ? std::nan("") : 1.0;
  }
  double duration() const override { return 10.0; }
};

class NegativeModel final : public EpsdModel {
 public:
  double value(double f, double /*t*/) const override {
    return f > 5.0 ? -1.0 : 1.0;
  }
  double duration() const override { return 10.0; }
};
}  // namespace

// ---------------------------------------------------------------------------
// Seismic target model
// ---------------------------------------------------------------------------

TEST_CASE("seismic model rejects non-positive shape parameters") {
  SeismicModelParams p;
  p.e_t = -1.0;
  CHECK(throws_with<std::invalid_argument>([&] { SeismicModel m(p); },
                                           "must be positive"));
  p = SeismicModelParams{};
  p.eta = 0.0;
  CHECK(throws_with<std::invalid_argument>([&] { SeismicModel m(p); },
                                           "must be positive"));
  p = SeismicModelParams{};
  p.lam_den = -0.1;
  CHECK(throws_with<std::invalid_argument>([&] { SeismicModel m(p); },
                                           "must be positive"));
  CHECK_NOTHROW(SeismicModel{});
}

TEST_CASE("energy envelope: zero for t <= 0, lognormal peak, exact area") {
  SeismicModel m;
  const auto& p = m.params();
  CHECK(m.lambda0(0.0) == 0.0);
  CHECK(m.lambda0(-3.0) == 0.0);
  CHECK(m.lambda0(1e-300) >= 0.0);

  // d/dt ln lambda0 = 0 at ln t = mu - den/2.
  const double t_peak = std::exp(p.lam_mu - 0.5 * p.lam_den);
  CHECK(t_peak == doctest::Approx(7.84597).epsilon(1e-4));
  CHECK(m.lambda0(t_peak) > m.lambda0(t_peak * 0.9));
  CHECK(m.lambda0(t_peak) > m.lambda0(t_peak * 1.1));

  // Substituting w = ln t makes the area Gaussian:
  // integral lambda0 dt = sqrt(den/mult)/c.
  const double area = integrate([&](double t) { return m.lambda0(t); }, 1e-6,
                                120.0, 1e-11);
  const double want = std::sqrt(p.lam_den / p.lam_pi_mult) / p.lam_c;
  CHECK(rel_err(area, want) < 1e-8);

  // Frozen envelope scale used by the Monte-Carlo variance targets.
  CHECK(rel_err(p.e_t * m.lambda0(8.0), 202.583) < 5e-4);
}

TEST_CASE("corner frequency decays as a power of time") {
  SeismicModel m;
  const auto& p = m.params();
  CHECK(rel_err(m.corner_frequency(1.0), std::exp(p.fc_a)) < 1e-12);
  CHECK(rel_err(m.corner_frequency(std::exp(1.0)),
                std::exp(p.fc_a - p.fc_b)) < 1e-12);
  // Power law: Fc(4)/Fc(2) = 2^{-fc_b}.
  CHECK(rel_err(m.corner_frequency(4.0) / m.corner_frequency(2.0),
                std::pow(2.0, -p.fc_b)) < 1e-12);
  CHECK(throws_with<std::invalid_argument>([&] { m.corner_frequency(0.0); },
                                           "must be positive"));
  CHECK(throws_with<std::invalid_argument>([&] { m.corner_frequency(-2.0); },
                                           "must be positive"));
}

TEST_CASE("seismic surface: symmetry, zero lines, and positivity") {
  SeismicModel m;
  for (double t : {1.0, 8.0, 20.0}) {
    for (double f : {0.3, 1.0, 4.7, 20.0}) {
      CHECK(m.value(f, t) == m.value(-f, t));
      CHECK(m.value(f, t) > 0.0);
    }
    CHECK(m.value(0.0, t) == 0.0);
  }
  CHECK(m.value(1.0, 0.0) == 0.0);
  CHECK(m.value(1.0, -5.0) == 0.0);
  // Far tails underflow to a hard zero rather than denormal noise.
  CHECK(m.value(1e280, 8.0) == 0.0);
}

TEST_CASE("two-sided frequency integral of S equals e_t * lambda0(t)") {
  SeismicModel m;
  const auto& p = m.params();
  for (double t : {4.0, 8.0, 16.0}) {
    CAPTURE(t);
    // Integrate in u = ln f: the integrand S(e^u, t) e^u is an exact Gaussian
    // bump centered at ln Fc(t) - eta^2/2.
    const double center = std::log(m.corner_frequency(t)) - 0.5 * p.eta * p.eta;
    const double one_sided = integrate_line(
        [&](double u) { return m.value(std::exp(u), t) * std::exp(u); },
        center, 10.0 * p.eta, 1e-11);
    CHECK(rel_err(2.0 * one_sided, p.e_t * m.lambda0(t)) < 1e-8);
  }
}

// ---------------------------------------------------------------------------
// Keyed phases
// ---------------------------------------------------------------------------

TEST_CASE("srm_phase is deterministic, keyed, and lands in [0, 2 pi)") {
  CHECK(srm_phase(7, 3, 11) == srm_phase(7, 3, 11));
  CHECK(srm_phase(7, 3, 11) != srm_phase(8, 3, 11));
  CHECK(srm_phase(7, 3, 11) != srm_phase(7, 4, 11));
  CHECK(srm_phase(7, 3, 11) != srm_phase(7, 3, 12));
  for (std::uint64_t k = 0; k < 2000; ++k) {
    const double phi = srm_phase(0x5EED, 0, k);
    CHECK(phi >= 0.0);
    CHECK(phi < 2.0 * kPi);
  }
}

TEST_CASE("srm_phase is coarsely uniform over the circle") {
  const std::size_t n = 4096;
  double sum = 0.0;
  std::size_t below = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double phi = srm_phase(0x5EED, 17, k);
    sum += phi;
    if (phi < kPi) ++below;
  }
  const double mean = sum / static_cast<double>(n);
  CHECK(std::abs(mean - kPi) < 0.05 * kPi);  // SE of the mean ~ 0.9% of pi
  CHECK(std::abs(static_cast<double>(below) / n - 0.5) < 0.05);
}

// ---------------------------------------------------------------------------
// Generator structure and validation
// ---------------------------------------------------------------------------

TEST_CASE("generator grid: half-integer harmonics strictly below Nyquist") {
  SeismicModel m;
  SrmGenerator gen(m, 0.02, 1);
  CHECK(gen.samples() == 1075);  // 21.5 / 0.02
  CHECK(gen.harmonics() == 537);
  CHECK(gen.dt() == 0.02);
  CHECK(gen.seed() == 1);
  const auto& fk = gen.harmonic_freqs();
  CHECK(rel_err(fk.front(), 0.5 / 21.5) < 1e-12);
  CHECK(rel_err(fk.back(), 536.5 / 21.5) < 1e-12);
  CHECK(fk.back() < 25.0);
  // Uniform comb with spacing 1/T.
  for (std::size_t k = 1; k < fk.size(); ++k) {
    CHECK(rel_err(fk[k] - fk[k - 1], 1.0 / 21.5) < 1e-9);
  }
}

TEST_CASE("generator validation") {
  testutil::FlatModel flat(1.0, 10.0);
  CHECK(throws_with<std::invalid_argument>(
      [&] { SrmGenerator gen(flat, 0.0, 1); }, "dt must be positive"));
  CHECK(throws_with<std::invalid_argument>(
      [&] { SrmGenerator gen(flat, -0.1, 1); }, "dt must be positive"));
  // duration 1 at dt 0.7 rounds to a single sample: too short to simulate.
  testutil::FlatModel one(1.0, 1.0);
  CHECK(throws_with<std::invalid_argument>(
      [&] { SrmGenerator gen(one, 0.7, 1); }, "whole number of samples"));
  CHECK(throws_with<std::invalid_argument>([&] { SrmGenerator gen(NanModel{}, 0.05, 1); },
                                           "finite and nonnegative"));
  CHECK(throws_with<std::invalid_argument>(
      [&] { SrmGenerator gen(NegativeModel{}, 0.05, 1); },
      "finite and nonnegative"));
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

TEST_CASE("single-harmonic model reproduces the closed-form cosine record") {
  // duration 10, dt 0.05: harmonics at (k+1/2)/10; the band [0.7, 0.8]
  // contains only f_7 = 0.75.
  const double s0 = 2.0, df = 0.1;
  BandModel model(s0, 0.7, 0.8, 10.0);
  const std::uint64_t seed = 42;
  SrmGenerator gen(model, 0.05, seed);
  CHECK(gen.samples() == 200);

  const double amp = std::sqrt(4.0 * s0 * df);
  for (std::size_t rec : {std::size_t{0}, std::size_t{3}}) {
    CAPTURE(rec);
    TimeSeries x = gen.record(rec);
    REQUIRE(x.size() == 200);
    CHECK(x.dt() == 0.05);
    const double phi = srm_phase(seed, rec, 7);
    for (std::size_t q = 0; q < x.size(); ++q) {
      const double t = 0.05 * static_cast<double>(q);
      const double want = amp * std::cos(2.0 * kPi * 0.75 * t + phi);
      CHECK(std::abs(x.samples()[q] - want) < 1e-10);
    }
  }
}

TEST_CASE("records are deterministic and order-free") {
  SeismicModel m;
  SrmGenerator gen(m, 0.05, 0x5EED);
  const TimeSeries a = gen.record(5);
  const TimeSeries b = gen.record(5);  // same generator, repeated call
  CHECK(a.samples() == b.samples());

  SrmGenerator gen2(m, 0.05, 0x5EED);
  (void)gen2.record(9);  // consume a different index first
  const TimeSeries c = gen2.record(5);
  CHECK(a.samples() == c.samples());  // keyed phases: no sequential state

  SrmGenerator other_seed(m, 0.05, 0x5EEE);
  CHECK(a.samples() != other_seed.record(5).samples());
}

TEST_CASE("srm_simulate matches the generator record-for-record") {
  SeismicModel m;
  const auto records = srm_simulate(m, 3, 0.05, 123);
  REQUIRE(records.size() == 3);
  SrmGenerator gen(m, 0.05, 123);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(records[r].samples() == gen.record(r).samples());
    CHECK(records[r].dt() == 0.05);
  }
}

TEST_CASE("a vanishing target produces exactly zero records") {
  testutil::FlatModel zero(0.0, 10.0);
  SrmGenerator gen(zero, 0.05, 7);
  TimeSeries x = gen.record(0);
  for (double v : x.samples()) CHECK(v == 0.0);
}

TEST_CASE("ensemble variance tracks the target energy envelope") {
  SeismicModel m;
  const std::size_t n_records = 200;
  const double dt = 0.02;
  SrmGenerator gen(m, dt, 0x5EED);

  // Accumulate mean and second moment at three probe times.
  const std::size_t probes[3] = {300, 400, 600};  // t = 6, 8, 12
  double sum[3] = {0, 0, 0}, sumsq[3] = {0, 0, 0};
  for (std::size_t r = 0; r < n_records; ++r) {
    TimeSeries x = gen.record(r);
    for (int i = 0; i < 3; ++i) {
      const double v = x.samples()[probes[i]];
      sum[i] += v;
      sumsq[i] += v * v;
    }
  }
  for (int i = 0; i < 3; ++i) {
    const double t = dt * static_cast<double>(probes[i]);
    CAPTURE(t);
    const double target = m.params().e_t * m.lambda0(t);
    const double mean = sum[i] / n_records;
    const double var = sumsq[i] / n_records - mean * mean;
    // The ensemble mean is zero-mean Gaussian with SE = sigma/sqrt(n).
    CHECK(std::abs(mean) < 4.0 * std::sqrt(target / n_records));
    // Deterministic seed: the ratio is a fixed draw, pinned with margin for
    // the ~10% relative standard error of a 200-record variance estimate.
    MESSAGE("var/target at t=", t, ": ", var / target);
    CHECK(var / target > 0.90);
    CHECK(var / target < 1.10);
  }
}
