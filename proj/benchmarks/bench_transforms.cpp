// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Transform throughput on realistic record sizes: one seismic-study record is
// 1075 samples at dt = 0.02 s with 537 analysis rows; Monte-Carlo studies run
// thousands of these per transform.
#include <benchmark/benchmark.h>

#include <cmath>

#include "epsd/estimators.hpp"
#include "epsd/kernels.hpp"
#include "epsd/simulator.hpp"
#include "epsd/transforms.hpp"
#include "epsd/types.hpp"

using namespace epsd;

namespace {

TimeSeries study_record(double dt) {
  const SeismicModel model;
  SrmGenerator gen(model, dt, 0x5EED);
  return gen.record(0);
}

void run_transform(benchmark::State& state, const TransformSpec& spec) {
  const TimeSeries x = study_record(0.02);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_transform(x, spec));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(x.size()));
}

}  // namespace

static void BM_TransformBox(benchmark::State& state) {
  run_transform(state, StftBox{1.0});
}
BENCHMARK(BM_TransformBox)->Unit(benchmark::kMillisecond);

static void BM_TransformGauss(benchmark::State& state) {
  run_transform(state, StftGauss{1.0});
}
BENCHMARK(BM_TransformGauss)->Unit(benchmark::kMillisecond);

static void BM_TransformSTransform(benchmark::State& state) {
  run_transform(state, STrans{1.0, {}});
}
BENCHMARK(BM_TransformSTransform)->Unit(benchmark::kMillisecond);

static void BM_TransformHarmonic(benchmark::State& state) {
  run_transform(state,
                CwtHarmonic{1.0, std::sqrt(2.0),
                            ScaleGridSpec{0.01, std::sqrt(2.0), {}}});
}
BENCHMARK(BM_TransformHarmonic)->Unit(benchmark::kMillisecond);

static void BM_TransformMorse(benchmark::State& state) {
  run_transform(state,
                CwtMorse{20.0, 3.0, ScaleGridSpec{0.01, std::pow(2.0, 0.1), {}}});
}
BENCHMARK(BM_TransformMorse)->Unit(benchmark::kMillisecond);

static void BM_EstimateGauss(benchmark::State& state) {
  const TimeSeries x = study_record(0.02);
  const TransformSpec spec = StftGauss{1.0};
  const TransformOutput t = compute_transform(x, spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(epsd_estimate(t.grid, spec));
  }
}
BENCHMARK(BM_EstimateGauss)->Unit(benchmark::kMillisecond);

static void BM_PlanScalesHarmonic(benchmark::State& state) {
  const CwtHarmonic spec{1.0, std::sqrt(2.0),
                         ScaleGridSpec{0.01, std::sqrt(2.0), {}}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan_scales(spec, 25.0, 2.0 / 21.5));
  }
}
BENCHMARK(BM_PlanScalesHarmonic);

BENCHMARK_MAIN();
