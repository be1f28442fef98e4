// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Study orchestration: the bundled transform set, the common evaluation grid,
// Monte-Carlo estimator validation (determinism, worker-count independence,
// failure isolation, statistical recovery of a known target), and the
// slow-variation residual study.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <string>
#include <variant>
#include <vector>

#include "epsd/model.hpp"
#include "epsd/pipeline.hpp"
#include "epsd/simulator.hpp"
#include "epsd/types.hpp"
#include "helpers.hpp"

using namespace epsd;
using testutil::rel_err;
using testutil::throws_with;

namespace {
const McSpecResult& result_named(const std::vector<McSpecResult>& results,
                                 const std::string& name) {
  for (const auto& r : results) {
    if (r.name == name) return r;
  }
  REQUIRE(false);
  return results.front();
}

const ResidualSpecResult& residual_named(
    const std::vector<ResidualSpecResult>& results, const std::string& name) {
  for (const auto& r : results) {
    if (r.name == name) return r;
  }
  REQUIRE(false);
  return results.front();
}
}  // namespace

// ---------------------------------------------------------------------------
// Bundled specs and the common grid
// ---------------------------------------------------------------------------

TEST_CASE("reference_specs bundles the five transforms with stable names") {
  const auto specs = reference_specs();
  REQUIRE(specs.size() == 5);
  CHECK(specs[0].name == "stft-box");
  CHECK(std::get<StftBox>(specs[0].spec).h == 1.0);
  CHECK(specs[1].name == "stft-gauss");
  CHECK(std::get<StftGauss>(specs[1].spec).sigma == 1.0);
  CHECK(specs[2].name == "s-transform");
  CHECK(std::get<STrans>(specs[2].spec).kappa == 1.0);
  CHECK(!std::get<STrans>(specs[2].spec).k_of_f.has_value());
  const auto& hw = std::get<CwtHarmonic>(specs[3].spec);
  CHECK(specs[3].name == "cwt-harmonic");
  CHECK(hw.m == 1.0);
  CHECK(hw.n == doctest::Approx(std::sqrt(2.0)));
  CHECK(hw.scales.c0 == 0.01);
  CHECK(hw.scales.s0 == doctest::Approx(std::sqrt(2.0)));
  CHECK(!hw.scales.levels.has_value());
  const auto& mw = std::get<CwtMorse>(specs[4].spec);
  CHECK(specs[4].name == "cwt-morse");
  CHECK(mw.beta == 20.0);
  CHECK(mw.gamma == 3.0);
  CHECK(mw.scales.c0 == 0.01);
  CHECK(mw.scales.s0 == doctest::Approx(std::pow(2.0, 0.1)));
}

TEST_CASE("study_grid spans DFT bins by the record sample times") {
  SeismicModel m;
  StudyGrid g = study_grid(m, 0.02);
  CHECK(g.freqs.size() == 537);
  CHECK(rel_err(g.freqs[0], 1.0 / 21.5) < 1e-12);
  CHECK(g.freqs[536] < 25.0);
  REQUIRE(g.times.size() == 1075);
  CHECK(g.times.front() == 0.0);
  CHECK(rel_err(g.times.back(), 21.48) < 1e-12);

  CHECK(throws_with<std::invalid_argument>(
      [&] { study_grid(m, 0.0); }, "dt must be positive"));
  testutil::FlatModel one(1.0, 1.0);
  CHECK(throws_with<std::invalid_argument>(
      [&] { study_grid(one, 0.7); }, "whole number of samples"));
}

// ---------------------------------------------------------------------------
// Monte-Carlo study: structure and determinism
// ---------------------------------------------------------------------------

TEST_CASE("run_mc validates the ensemble size") {
  testutil::FlatModel flat(1.0, 10.0);
  McOptions opt;
  opt.records = 1;
  CHECK(throws_with<std::invalid_argument>(
      [&] { run_mc(flat, reference_specs(), opt); },
      "at least two records required"));
  CHECK(run_mc(flat, {}, McOptions{}).empty());
}

TEST_CASE("run_mc is deterministic and isolates failing specs") {
  testutil::FlatModel flat(2.0, 10.0);
  McOptions opt;
  opt.records = 6;
  opt.dt = 0.05;
  std::vector<NamedSpec> pair;
  pair.push_back({"gauss", StftGauss{0.5}});
  // Every requested level sits far above the Nyquist frequency.
  pair.push_back({"bad-wavelet",
                  CwtHarmonic{1.0, 2.0, ScaleGridSpec{0.001, 1.01, 2}}});

  const auto both = run_mc(flat, pair, opt);
  REQUIRE(both.size() == 2);
  CHECK(both[0].ok);
  CHECK(!both[1].ok);
  CHECK(both[1].error.find("no usable scale levels") != std::string::npos);
  CHECK(!both[1].mean.has_value());
  CHECK(!both[1].mask.has_value());

  // The failing companion must not perturb the healthy spec: bit-identical
  // to a solo run, and to a repeated run (full determinism).
  const auto solo = run_mc(flat, {pair[0]}, opt);
  REQUIRE(solo.size() == 1);
  CHECK(solo[0].ok);
  CHECK(both[0].mean->values() == solo[0].mean->values());
  CHECK(both[0].stddev->values() == solo[0].stddev->values());
  CHECK(both[0].diff->values() == solo[0].diff->values());
  CHECK(both[0].mask->values() == solo[0].mask->values());
  CHECK(both[0].power_ratio == solo[0].power_ratio);

  const auto again = run_mc(flat, pair, opt);
  CHECK(both[0].mean->values() == again[0].mean->values());
  CHECK(both[0].stddev->values() == again[0].stddev->values());
}

TEST_CASE("run_mc output is independent of the worker count") {
  testutil::FlatModel flat(2.0, 10.0);
  McOptions opt;
  opt.records = 6;
  opt.dt = 0.05;
  std::vector<NamedSpec> specs;
  specs.push_back({"gauss", StftGauss{0.5}});
  specs.push_back({"hw", CwtHarmonic{1.0, std::sqrt(2.0),
                                     ScaleGridSpec{0.01, std::sqrt(2.0), {}}}});

  setenv("EPSD_WORKERS", "1", 1);
  const auto serial = run_mc(flat, specs, opt);
  setenv("EPSD_WORKERS", "2", 1);
  const auto threaded = run_mc(flat, specs, opt);
  unsetenv("EPSD_WORKERS");

  REQUIRE(serial.size() == threaded.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    REQUIRE(serial[i].ok);
    REQUIRE(threaded[i].ok);
    CHECK(serial[i].mean->values() == threaded[i].mean->values());
    CHECK(serial[i].stddev->values() == threaded[i].stddev->values());
    CHECK(serial[i].diff->values() == threaded[i].diff->values());
    CHECK(serial[i].power_ratio == threaded[i].power_ratio);
    CHECK(serial[i].pearson_time == threaded[i].pearson_time);
    CHECK(serial[i].pearson_freq_probe == threaded[i].pearson_freq_probe);
  }
}

// ---------------------------------------------------------------------------
// Monte-Carlo study: statistical recovery of a flat target
// ---------------------------------------------------------------------------

TEST_CASE("run_mc recovers a flat target spectrum" * doctest::timeout(600)) {
  testutil::FlatModel flat(2.0, 10.0);
  McOptions opt;
  opt.records = 300;
  opt.dt = 0.05;
  std::vector<NamedSpec> specs;
  specs.push_back({"gauss", StftGauss{0.5}});
  specs.push_back({"hw", CwtHarmonic{1.0, std::sqrt(2.0),
                                     ScaleGridSpec{0.01, std::sqrt(2.0), {}}}});
  const auto results = run_mc(flat, specs, opt);
  const auto& g = result_named(results, "gauss");
  const auto& w = result_named(results, "hw");
  REQUIRE(g.ok);
  REQUIRE(w.ok);

  // Both emit on the common DFT-bin axis: spacing 0.1 up to the Nyquist 10.
  REQUIRE(g.mean->rows() == 100);
  REQUIRE(g.mean->cols() == 200);
  CHECK(w.mean->rows() == 100);

  // The signed difference is primary: mean = target + diff, bit for bit.
  for (std::size_t r = 0; r < g.mean->rows(); ++r) {
    for (std::size_t q = 0; q < g.mean->cols(); q += 7) {
      const double target =
          flat.value(g.mean->freqs()[r], g.mean->times()[q]);
      CHECK(g.mean->at(r, q) == target + g.diff->at(r, q));
      CHECK(w.mean->at(r, q) ==
            flat.value(w.mean->freqs()[r], w.mean->times()[q]) +
                w.diff->at(r, q));
    }
  }

  // Degenerate marginals (a constant target) define correlation as zero.
  CHECK(g.pearson_time == 0.0);
  CHECK(g.pearson_freq_probe == 0.0);

  MESSAGE("gauss power_ratio: ", g.power_ratio);
  MESSAGE("hw    power_ratio: ", w.power_ratio);
  CHECK(g.power_ratio > 0.93);
  CHECK(g.power_ratio < 1.07);
  CHECK(w.power_ratio > 0.93);
  CHECK(w.power_ratio < 1.07);

  // Gaussian-window row cut: only the sub-bin row f = 0.1 < 2 df is masked.
  const auto& gm = *g.mask;
  for (std::size_t q = 0; q < gm.cols(); ++q) CHECK(gm.at(0, q) == 0.0);
  // Time cut: record edges fall below the 0.9 window-mass threshold.
  CHECK(gm.at(50, 0) == 0.0);
  CHECK(gm.at(50, 100) == 1.0);

  // Wavelet coverage: eight levels sit above the Nyquist and are dropped;
  // the surviving native band is [~0.167, ~7.54], so common-axis rows above
  // it (and the sub-bin row) are masked out.
  CHECK(w.dropped_scales.size() == 8);
  const auto& wm = *w.mask;
  for (std::size_t q = 0; q < wm.cols(); ++q) {
    CHECK(wm.at(0, q) == 0.0);   // f = 0.1
    CHECK(wm.at(99, q) == 0.0);  // f = 10.0 > native top
    CHECK(wm.at(80, q) == 0.0);  // f = 8.1 > native top
  }
  CHECK(wm.at(30, 100) == 1.0);  // f = 3.1, mid-record

  // Per-cell recovery over the well-covered band f in [1.5, 3.5]: the
  // ensemble mean lands on the target within Monte-Carlo noise, and the
  // per-cell ensemble std of a squared-magnitude estimate sits near its mean.
  for (const auto* res : {&g, &w}) {
    double lo = 1e300, hi = -1e300, sr = 0.0;
    std::size_t n = 0;
    for (std::size_t r = 0; r < res->mean->rows(); ++r) {
      const double f = res->mean->freqs()[r];
      if (f < 1.5 || f > 3.5) continue;
      for (std::size_t q = 0; q < res->mean->cols(); ++q) {
        if (res->mask->at(r, q) == 0.0) continue;
        const double ratio = res->mean->at(r, q) / 2.0;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        sr += res->stddev->at(r, q) / res->mean->at(r, q);
        ++n;
      }
    }
    REQUIRE(n > 0);
    MESSAGE(res->name, " mid-band cell ratio range: [", lo, ", ", hi,
            "], mean std/mean: ", sr / static_cast<double>(n));
    CHECK(lo > 0.70);
    CHECK(hi < 1.30);
    const double rel_std = sr / static_cast<double>(n);
    CHECK(rel_std > 0.75);
    CHECK(rel_std < 1.25);
  }
}

TEST_CASE("run_mc tracks the seismic target across all five transforms" *
          doctest::timeout(1200)) {
  SeismicModel model;
  McOptions opt;
  opt.records = 40;
  const auto results = run_mc(model, reference_specs(), opt);
  REQUIRE(results.size() == 5);
  for (const auto& r : results) {
    CAPTURE(r.name);
    REQUIRE(r.ok);
    CHECK(r.mean->rows() == 537);
    CHECK(r.mean->cols() == 1075);
    MESSAGE(r.name, ": power ", r.power_ratio, ", r_time ", r.pearson_time,
            ", r_freq ", r.pearson_freq_probe);
    CHECK(r.power_ratio > 0.95);
    CHECK(r.power_ratio < 1.07);
    CHECK(r.pearson_time > 0.99);
    CHECK(r.pearson_freq_probe > 0.97);
  }
  CHECK(result_named(results, "cwt-harmonic").dropped_scales.size() == 5);
  CHECK(result_named(results, "cwt-morse").dropped_scales.size() == 3);
  CHECK(result_named(results, "stft-box").dropped_scales.empty());
}

// ---------------------------------------------------------------------------
// Residual study
// ---------------------------------------------------------------------------

TEST_CASE("run_residual_study: constant modulation yields zero everywhere") {
  testutil::FlatModel flat(2.0, 20.0);
  FrequencyAxis freqs({0.5, 1.0, 2.0, 4.0});
  std::vector<double> times{2.0, 6.0, 10.0, 14.0, 18.0};
  const auto results = run_residual_study(flat, reference_specs(), freqs, times);
  REQUIRE(results.size() == 5);
  for (const auto& r : results) {
    CAPTURE(r.name);
    REQUIRE(r.ok);
    REQUIRE(r.second_order.has_value());
    for (double v : r.second_order->values()) CHECK(v == 0.0);
    CHECK(r.aggregate_second == 0.0);
    const bool wavelet = r.name.rfind("cwt-", 0) == 0;
    CHECK(r.first_order.has_value() == wavelet);
    if (wavelet) {
      for (double v : r.first_order->values()) CHECK(v == 0.0);
      CHECK(r.aggregate_first == 0.0);
    }
  }
}

TEST_CASE("run_residual_study rejects degenerate inputs") {
  FrequencyAxis freqs({0.5, 1.0});
  testutil::FlatModel zero(0.0, 10.0);
  CHECK(throws_with<std::invalid_argument>(
      [&] {
        run_residual_study(zero, reference_specs(), freqs, {2.0, 5.0});
      },
      "model vanishes on the grid"));
  testutil::FlatModel flat(1.0, 10.0);
  CHECK(throws_with<std::invalid_argument>(
      [&] { run_residual_study(flat, reference_specs(), freqs, {}); },
      "empty evaluation grid"));
}

TEST_CASE("run_residual_study on the seismic target") {
  SeismicModel model;
  FrequencyAxis freqs({0.5, 1.0, 2.0, 3.0, 5.0});
  std::vector<double> times{2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0};
  const auto results =
      run_residual_study(model, reference_specs(), freqs, times);
  REQUIRE(results.size() == 5);
  for (const auto& r : results) {
    CAPTURE(r.name);
    REQUIRE(r.ok);
    CHECK(r.second_order->is_signed());
    CHECK(r.mask.has_value());
    CHECK(r.aggregate_second > 0.0);
    MESSAGE(r.name, ": |R2| ", r.aggregate_second, ", |R1| ",
            r.aggregate_first);
  }
  // Wavelets also carry first-order terms.
  CHECK(residual_named(results, "cwt-harmonic").aggregate_first > 0.0);
  CHECK(residual_named(results, "cwt-morse").aggregate_first > 0.0);
  CHECK(!residual_named(results, "stft-box").first_order.has_value());
  CHECK(residual_named(results, "stft-box").aggregate_first == 0.0);

  // The S-transform's frequency-adaptive window tracks the target's drifting
  // corner frequency better than either fixed window.
  const double st = residual_named(results, "s-transform").aggregate_second;
  CHECK(st < residual_named(results, "stft-box").aggregate_second);
  CHECK(st < residual_named(results, "stft-gauss").aggregate_second);
}
