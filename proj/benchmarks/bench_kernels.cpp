// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Microbenchmarks for kernel constants and moment-ratio quadratures: these
// sit on the hot path of residual studies (one evaluation per grid row).
#include <benchmark/benchmark.h>

#include <cmath>

#include "epsd/kernels.hpp"
#include "epsd/residuals.hpp"

using namespace epsd;

static void BM_NormConstantsGauss(benchmark::State& state) {
  const StftGauss spec{1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm_constants(spec));
  }
}
BENCHMARK(BM_NormConstantsGauss);

static void BM_NormConstantsSTransform(benchmark::State& state) {
  const STrans spec{1.0, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm_constants(spec, 1.5));
  }
}
BENCHMARK(BM_NormConstantsSTransform);

static void BM_NormConstantsHarmonic(benchmark::State& state) {
  const CwtHarmonic spec{1.0, std::sqrt(2.0), {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm_constants(spec));
  }
}
BENCHMARK(BM_NormConstantsHarmonic);

static void BM_NormConstantsMorse(benchmark::State& state) {
  const CwtMorse spec{20.0, 3.0, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm_constants(spec));
  }
}
BENCHMARK(BM_NormConstantsMorse);

static void BM_DKappaQuadrature(benchmark::State& state) {
  const double kappa = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(d_kappa_quadrature(kappa));
  }
}
BENCHMARK(BM_DKappaQuadrature)->Arg(2)->Arg(10)->Arg(30);

static void BM_DKappaRegression(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(d_kappa_regression(1.0));
  }
}
BENCHMARK(BM_DKappaRegression);

static void BM_MomentKernelBox(benchmark::State& state) {
  const StftBox spec{1.0};
  double xi = 0.0;
  for (auto _ : state) {
    xi += 1e-4;
    benchmark::DoNotOptimize(moment_kernel(spec, 2, xi));
  }
}
BENCHMARK(BM_MomentKernelBox);

static void BM_RatioGauss2200(benchmark::State& state) {
  const StftGauss spec{1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ratio_stft(spec, 2, 2, 0, 0));
  }
}
BENCHMARK(BM_RatioGauss2200);

static void BM_RatioCwtMorse(benchmark::State& state) {
  const CwtMorse spec{20.0, 3.0, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ratio_cwt(spec, 1.5, 2, 0));
  }
}
BENCHMARK(BM_RatioCwtMorse);

static void BM_BoundaryValidity(benchmark::State& state) {
  const STrans spec{1.0, {}};
  double tau = 0.0;
  for (auto _ : state) {
    tau = tau < 20.0 ? tau + 0.01 : 0.0;
    benchmark::DoNotOptimize(boundary_validity(spec, 1.5, tau, 21.5));
  }
}
BENCHMARK(BM_BoundaryValidity);

BENCHMARK_MAIN();
