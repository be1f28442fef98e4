// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Study orchestration: Monte Carlo validation of the estimators against a
// known target spectrum, and residual-term studies quantifying the
// slow-variation assumption, both across a set of named transforms.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epsd/estimators.hpp"
#include "epsd/kernels.hpp"
#include "epsd/model.hpp"
#include "epsd/types.hpp"

namespace epsd {

// A transform configuration with the identifier used in results and
// manifests.
struct NamedSpec {
  std::string name;
  TransformSpec spec;
};

// The bundled five-transform reference parameter set: box window h = 1,
// Gaussian window sigma = 1, S-transform kappa = 1, harmonic wavelet
// (m, n) = (1, sqrt 2) on scales 0.01 * (sqrt 2)^p, Morse wavelet
// (beta, gamma) = (20, 3) on scales 0.01 * 2^(p/10).
std::vector<NamedSpec> reference_specs();

// Common evaluation grid for a model sampled at step dt: discrete-Fourier-bin
// frequencies (spacing 1/duration, strictly positive, up to Nyquist) by the
// record's sample times q*dt.
struct StudyGrid {
  FrequencyAxis freqs;
  std::vector<double> times;
};
StudyGrid study_grid(const EpsdModel& model, double dt);

struct McOptions {
  std::size_t records = 2000;  // ensemble size (>= 2)
  double dt = 0.02;            // sampling step (s)
  std::uint64_t seed = 0x5EED; // pinned so rerounds reproduce bit-exactly
  double probe_time = 8.0;     // frequency-marginal correlation probe (s)
  double min_validity = 0.9;   // window-mass threshold for usable columns
};

// Per-transform outcome of the Monte Carlo study. When ok is false, `error`
// holds the reason and the grids are absent.
struct McSpecResult {
  std::string name;
  bool ok = false;
  std::string error;
  std::optional<SpectralGrid> mean;    // ensemble mean on the common axis
  std::optional<SpectralGrid> stddev;  // (n-1)-normalized ensemble std
  std::optional<SpectralGrid> diff;    // mean - target, signed; the emitted
                                       // mean equals target + diff bit-exactly
  std::optional<SpectralGrid> mask;    // 1 = cell participates in aggregates
  std::vector<double> dropped_scales;  // wavelet levels above Nyquist, if any
  double power_ratio = 0.0;            // masked sum(mean) / sum(target)
  double pearson_time = 0.0;           // masked time marginals, mean vs target
  double pearson_freq_probe = 0.0;     // masked probe column, mean vs target
};

// Simulates one shared record ensemble from the model and pushes every record
// through each transform's estimator; per spec, emits ensemble mean/std on
// the common frequency axis (wavelet estimates are interpolated in
// log-frequency onto it), the signed difference to the target model, the
// usability mask, and masked aggregate metrics. A spec that cannot run at the
// sampling rate is reported failed; the others proceed. Output is a
// deterministic function of (model, specs, options), independent of worker
// count.
std::vector<McSpecResult> run_mc(const EpsdModel& model,
                                 const std::vector<NamedSpec>& specs,
                                 const McOptions& options = {});

struct ResidualStudyOptions {
  double min_validity = 0.9;  // window-mass threshold for usable columns
  double model_floor = 0.01;  // exclude cells below this fraction of the peak
  // Frequency band limit for the box-window curvature ratio (its integrand
  // needs a finite band); defaults to the top of the evaluation axis.
  std::optional<double> box_band;
};

struct ResidualSpecResult {
  std::string name;
  bool ok = false;
  std::string error;
  std::optional<SpectralGrid> first_order;   // wavelet transforms only
  std::optional<SpectralGrid> second_order;  // all transforms
  std::optional<SpectralGrid> mask;          // 1 = cell enters the aggregates
  double aggregate_first = 0.0;   // mean |R(.;1)| over masked cells (wavelets)
  double aggregate_second = 0.0;  // mean |R(.;2)| over masked cells
};

// Evaluates each transform's slow-variation residual terms against the model
// on (freqs x times): second-order grids for the windowed transforms, first-
// and second-order grids for the wavelet transforms. Aggregates are mean
// absolute values over cells that pass the usability mask (window mass
// >= min_validity with the window centered inside [0, model duration],
// frequency >= twice the duration's bin spacing) and where the model exceeds
// model_floor times its grid peak.
std::vector<ResidualSpecResult> run_residual_study(
    const EpsdModel& model, const std::vector<NamedSpec>& specs,
    const FrequencyAxis& freqs, const std::vector<double>& times,
    const ResidualStudyOptions& options = {});

}  // namespace epsd
