// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
#include "epsd/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "epsd/parallel.hpp"
#include "epsd/residuals.hpp"
#include "epsd/simulator.hpp"
#include "epsd/transforms.hpp"

namespace epsd {

namespace {

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  if (n != b.size() || n < 2) return 0.0;
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

std::vector<NamedSpec> reference_specs() {
  const double rt2 = std::sqrt(2.0);
  std::vector<NamedSpec> out;
  out.push_back({"stft-box", StftBox{1.0}});
  out.push_back({"stft-gauss", StftGauss{1.0}});
  out.push_back({"s-transform", STrans{1.0, std::nullopt}});
  out.push_back({"cwt-harmonic",
                 CwtHarmonic{1.0, rt2, ScaleGridSpec{0.01, rt2, std::nullopt}}});
  out.push_back({"cwt-morse",
                 CwtMorse{20.0, 3.0,
                          ScaleGridSpec{0.01, std::pow(2.0, 0.1), std::nullopt}}});
  return out;
}

StudyGrid study_grid(const EpsdModel& model, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("study grid: dt must be positive");
  }
  const double T = model.duration();
  const auto n = static_cast<std::size_t>(std::llround(T / dt));
  if (n < 2 || std::abs(static_cast<double>(n) * dt - T) > dt) {
    throw std::invalid_argument(
        "study grid: model duration must be a whole number of samples");
  }
  const double df = 1.0 / (static_cast<double>(n) * dt);
  std::vector<double> times(n);
  for (std::size_t q = 0; q < n; ++q) times[q] = static_cast<double>(q) * dt;
  return {FrequencyAxis::dft_bins(df, 0.5 / dt), std::move(times)};
}

std::vector<McSpecResult> run_mc(const EpsdModel& model,
                                 const std::vector<NamedSpec>& specs,
                                 const McOptions& options) {
  if (options.records < 2) {
    throw std::invalid_argument("mc study: at least two records required");
  }
  SrmGenerator gen(model, options.dt, options.seed);
  StudyGrid grid = study_grid(model, options.dt);
  const FrequencyAxis& common = grid.freqs;
  const std::vector<double>& times = grid.times;
  const std::size_t n_f = common.size();
  const std::size_t n_t = times.size();
  const std::size_t n_cells = n_f * n_t;
  const double span = static_cast<double>(n_t) * options.dt;
  const double df = 1.0 / span;

  std::vector<double> target(n_cells);
  parallel_for(n_f, [&](std::size_t r) {
    for (std::size_t q = 0; q < n_t; ++q) {
      target[r * n_t + q] = model.value(common[r], times[q]);
    }
  });

  struct Accum {
    bool ok = true;
    std::string error;
    std::optional<FrequencyAxis> request_rows;  // windowed transforms only
    std::vector<double> sum, sumsq;
    std::vector<double> native_freqs;  // ascending rows of the estimate
    std::vector<double> dropped;
    std::size_t cells = 0;
  };
  std::vector<Accum> acc(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!is_cwt(specs[i].spec)) acc[i].request_rows = common;
  }

  // Records are processed in a fixed serial order and summed in place, so the
  // accumulated statistics are independent of the worker count used inside
  // the transforms.
  for (std::size_t r = 0; r < options.records; ++r) {
    const TimeSeries x = gen.record(r);
    for (std::size_t i = 0; i < specs.size(); ++i) {
      Accum& a = acc[i];
      if (!a.ok) continue;
      try {
        TransformOutput t = compute_transform(x, specs[i].spec, a.request_rows);
        const SpectralGrid est = epsd_estimate(t.grid, specs[i].spec);
        if (a.cells == 0) {
          a.native_freqs = est.freqs().values();
          a.dropped = std::move(t.dropped_scales);
          a.cells = est.values().size();
          a.sum.assign(a.cells, 0.0);
          a.sumsq.assign(a.cells, 0.0);
        }
        const std::vector<double>& v = est.values();
        for (std::size_t c = 0; c < a.cells; ++c) {
          a.sum[c] += v[c];
          a.sumsq[c] += v[c] * v[c];
        }
      } catch (const std::exception& e) {
        a.ok = false;
        a.error = e.what();
      }
    }
  }

  std::vector<McSpecResult> out(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    McSpecResult& res = out[i];
    res.name = specs[i].name;
    if (!acc[i].ok) {
      res.error = acc[i].error;
      continue;
    }
    const double n = static_cast<double>(options.records);
    const std::size_t cells = acc[i].cells;
    std::vector<double> mean_native(cells), std_native(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      const double m = acc[i].sum[c] / n;
      mean_native[c] = m;
      const double ss = acc[i].sumsq[c] - n * m * m;
      std_native[c] = std::sqrt(std::max(0.0, ss / (n - 1.0)));
    }

    MaskPolicy policy;
    policy.min_validity = options.min_validity;
    policy.min_freq = 2.0 * df;

    std::vector<double> mean_vals, std_vals;
    if (is_cwt(specs[i].spec)) {
      FrequencyAxis native(acc[i].native_freqs);
      SpectralGrid mean_nat(native, times, std::move(mean_native));
      SpectralGrid std_nat(native, times, std::move(std_native));
      mean_vals = resample_log_frequency(mean_nat, common).values();
      std_vals = resample_log_frequency(std_nat, common).values();
      policy.f_coverage = {acc[i].native_freqs.front(), acc[i].native_freqs.back()};
    } else {
      mean_vals = std::move(mean_native);
      std_vals = std::move(std_native);
    }

    SpectralGrid mask = usability_mask(specs[i].spec, common, times, span, policy);

    // diff is the primary signed field; the emitted mean is reconstituted as
    // target + diff so the decomposition holds bit-exactly.
    std::vector<double> diff_vals(n_cells), mean_out(n_cells);
    for (std::size_t c = 0; c < n_cells; ++c) {
      diff_vals[c] = mean_vals[c] - target[c];
      mean_out[c] = target[c] + diff_vals[c];
    }

    double s_mean = 0.0, s_target = 0.0;
    std::vector<double> marg_mean(n_t, 0.0), marg_target(n_t, 0.0);
    std::vector<char> col_used(n_t, 0);
    for (std::size_t rr = 0; rr < n_f; ++rr) {
      for (std::size_t q = 0; q < n_t; ++q) {
        if (mask.at(rr, q) == 0.0) continue;
        const double v = mean_out[rr * n_t + q];
        const double w = target[rr * n_t + q];
        s_mean += v;
        s_target += w;
        marg_mean[q] += v;
        marg_target[q] += w;
        col_used[q] = 1;
      }
    }
    res.power_ratio = s_target > 0.0 ? s_mean / s_target : 0.0;

    std::vector<double> a, b;
    for (std::size_t q = 0; q < n_t; ++q) {
      if (!col_used[q]) continue;
      a.push_back(marg_mean[q]);
      b.push_back(marg_target[q]);
    }
    res.pearson_time = pearson(a, b);

    std::size_t q_star = 0;
    for (std::size_t q = 1; q < n_t; ++q) {
      if (std::abs(times[q] - options.probe_time) <
          std::abs(times[q_star] - options.probe_time)) {
        q_star = q;
      }
    }
    a.clear();
    b.clear();
    for (std::size_t rr = 0; rr < n_f; ++rr) {
      if (mask.at(rr, q_star) == 0.0) continue;
      a.push_back(mean_out[rr * n_t + q_star]);
      b.push_back(target[rr * n_t + q_star]);
    }
    res.pearson_freq_probe = pearson(a, b);

    res.mean.emplace(common, times, std::move(mean_out));
    res.stddev.emplace(common, times, std::move(std_vals));
    res.diff.emplace(common, times, std::move(diff_vals), /*is_signed=*/true);
    res.mask = std::move(mask);
    res.dropped_scales = acc[i].dropped;
    res.ok = true;
  }
  return out;
}

std::vector<ResidualSpecResult> run_residual_study(
    const EpsdModel& model, const std::vector<NamedSpec>& specs,
    const FrequencyAxis& freqs, const std::vector<double>& times,
    const ResidualStudyOptions& options) {
  if (freqs.size() == 0 || times.empty()) {
    throw std::invalid_argument("residual study: empty evaluation grid");
  }
  const double span = model.duration();
  const std::size_t n_f = freqs.size();
  const std::size_t n_t = times.size();

  std::vector<double> model_vals(n_f * n_t);
  parallel_for(n_f, [&](std::size_t r) {
    for (std::size_t q = 0; q < n_t; ++q) {
      model_vals[r * n_t + q] = model.value(freqs[r], times[q]);
    }
  });
  const double peak = *std::max_element(model_vals.begin(), model_vals.end());
  if (!(peak > 0.0)) {
    throw std::invalid_argument("residual study: model vanishes on the grid");
  }
  const double floor_val = options.model_floor * peak;
  const double box_band = options.box_band.value_or(freqs.values().back());

  std::vector<ResidualSpecResult> out(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    ResidualSpecResult& res = out[i];
    res.name = specs[i].name;
    try {
      MaskPolicy policy;
      policy.min_validity = options.min_validity;
      policy.min_freq = 2.0 / span;
      SpectralGrid mask = usability_mask(specs[i].spec, freqs, times, span, policy);
      for (std::size_t c = 0; c < model_vals.size(); ++c) {
        if (model_vals[c] <= floor_val) mask.values()[c] = 0.0;
      }

      SpectralGrid r2 = residual_grid(model, specs[i].spec, freqs, times, 2,
                                      box_band, &mask);
      res.aggregate_second = aggregate_abs(r2, &mask);
      res.second_order = std::move(r2);

      if (is_cwt(specs[i].spec)) {
        SpectralGrid r1 = residual_grid(model, specs[i].spec, freqs, times, 1,
                                        std::nullopt, &mask);
        res.aggregate_first = aggregate_abs(r1, &mask);
        res.first_order = std::move(r1);
      }
      res.mask = std::move(mask);
      res.ok = true;
    } catch (const std::exception& e) {
      res.ok = false;
      res.error = e.what();
    }
  }
  return out;
}

}  // namespace epsd
