// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Spectral-representation simulator costs: building the per-harmonic
// amplitude table (once per study) versus synthesizing individual records
// (thousands per study), plus the keyed-phase primitive itself.
#include <benchmark/benchmark.h>

#include <cstdint>

#include "epsd/simulator.hpp"
#include "epsd/types.hpp"

using namespace epsd;

namespace {
constexpr std::uint64_t kSeed = 0x5EED;
}  // namespace

// Amplitude-table construction: one model evaluation per (harmonic, sample)
// pair, 537 x 1075 at the default study resolution.
static void BM_GeneratorBuild(benchmark::State& state) {
  const double dt = 1.0 / static_cast<double>(state.range(0));
  const SeismicModel model;
  for (auto _ : state) {
    SrmGenerator gen(model, dt, kSeed);
    benchmark::DoNotOptimize(gen.harmonics());
  }
}
BENCHMARK(BM_GeneratorBuild)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

// Record synthesis from the prebuilt table: the hot path of a Monte-Carlo
// study, one cosine-sum per sample over all harmonics.
static void BM_GeneratorRecord(benchmark::State& state) {
  const double dt = 1.0 / static_cast<double>(state.range(0));
  const SeismicModel model;
  SrmGenerator gen(model, dt, kSeed);
  std::size_t r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen.record(r++));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(gen.samples()));
}
BENCHMARK(BM_GeneratorRecord)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

// Keyed phase draws: three mixing rounds per (seed, record, harmonic) triple.
static void BM_SrmPhase(benchmark::State& state) {
  std::uint64_t record = 0;
  double acc = 0.0;
  for (auto _ : state) {
    acc += srm_phase(kSeed, record, record + 1);
    ++record;
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_SrmPhase);

// Seismic target surface evaluation, the per-cell cost behind the amplitude
// table and every residual/validation grid.
static void BM_SeismicValue(benchmark::State& state) {
  const SeismicModel model;
  double f = 0.5;
  double acc = 0.0;
  for (auto _ : state) {
    acc += model.value(f, 8.0);
    f = (f < 20.0) ? f + 0.1 : 0.5;
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_SeismicValue);

BENCHMARK_MAIN();
