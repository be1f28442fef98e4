// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Command-line front end. Subcommands:
//   simulate        draw records from the bundled seismic model
//   transform       time-frequency transform of a record
//   estimate        single-record EPSD estimate
//   residual        slow-variation residual grid against a model
//   ratios          moment-ratio values, optionally swept over a parameter
//   constants       normalization constants of a transform
//   mc              Monte Carlo estimator study (mean/std/diff + metrics)
//   residual-study  residual grids and aggregates for a set of transforms
//
// Exit codes: 0 success, 1 computation error, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epsd/csv.hpp"
#include "epsd/estimators.hpp"
#include "epsd/kernels.hpp"
#include "epsd/pipeline.hpp"
#include "epsd/residuals.hpp"
#include "epsd/simulator.hpp"
#include "epsd/spec_json.hpp"
#include "epsd/transforms.hpp"
#include "epsd/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void usage_error(const std::string& message) {
  throw CLI::ValidationError(message);
}

// --spec accepts either a JSON document or a bare transform name (parameters
// then come from defaults or a sweep).
json spec_base_json(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') {
    json j;
    try {
      j = json::parse(arg);
    } catch (const json::parse_error& e) {
      usage_error(std::string("--spec: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) usage_error("--spec: document must be a JSON object");
    return j;
  }
  return json{{"transform", arg}};
}

epsd::TransformSpec parse_spec_arg(const std::string& arg) {
  try {
    return epsd::parse_spec_json(spec_base_json(arg).dump());
  } catch (const std::invalid_argument& e) {
    usage_error(e.what());
  }
}

struct Sweep {
  std::string name;
  std::vector<double> values;
};

// name=start:stop:count; geometric spacing when both endpoints are positive
// (widths, scales, and frequencies), linear otherwise.
Sweep parse_sweep(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0) {
    usage_error("--sweep: expected name=start:stop:count");
  }
  Sweep sweep;
  sweep.name = arg.substr(0, eq);
  const std::string rest = arg.substr(eq + 1);
  double start = 0.0, stop = 0.0;
  long count = 0;
  if (std::sscanf(rest.c_str(), "%lf:%lf:%ld", &start, &stop, &count) != 3 ||
      count < 1) {
    usage_error("--sweep: expected name=start:stop:count with count >= 1");
  }
  if (count == 1) {
    sweep.values.push_back(start);
    return sweep;
  }
  const bool geometric = start > 0.0 && stop > 0.0;
  for (long i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(count - 1);
    sweep.values.push_back(geometric
                               ? start * std::pow(stop / start, u)
                               : start + (stop - start) * u);
  }
  return sweep;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create directory '" + dir + "': " + ec.message());
  }
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

// Output sink: write to the given path, or stdout when the path is empty.
void emit_text(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
  } else {
    epsd::write_text_atomic(path, content);
  }
}

std::vector<epsd::NamedSpec> resolve_specs(const std::string& preset,
                                           const std::vector<std::string>& spec_args) {
  if (spec_args.empty()) {
    if (preset == "reference") return epsd::reference_specs();
    usage_error("--preset: unknown preset '" + preset + "' (available: reference)");
  }
  std::vector<epsd::NamedSpec> specs;
  for (const auto& arg : spec_args) {
    epsd::TransformSpec spec = parse_spec_arg(arg);
    std::string name = epsd::spec_name(spec);
    int suffix = 1;
    std::string candidate = name;
    while (std::any_of(specs.begin(), specs.end(), [&](const epsd::NamedSpec& s) {
      return s.name == candidate;
    })) {
      candidate = name + "-" + std::to_string(++suffix);
    }
    specs.push_back({std::move(candidate), std::move(spec)});
  }
  return specs;
}

json constants_json(const epsd::TransformSpec& spec, std::optional<double> f) {
  const epsd::KernelConstants kc = epsd::norm_constants(spec, f);
  json j;
  j["transform"] = epsd::spec_name(spec);
  j["epsd_scale"] = kc.epsd_scale;
  if (kc.cn2) j["cn2"] = *kc.cn2;
  if (kc.cns0) j["cns0"] = *kc.cns0;
  if (kc.d_kappa) j["d_kappa"] = *kc.d_kappa;
  if (kc.c_psi) j["c_psi"] = *kc.c_psi;
  if (kc.c1_psi) j["c1_psi"] = *kc.c1_psi;
  if (kc.cnw2) j["cnw2"] = *kc.cnw2;
  if (kc.f0) j["f0"] = *kc.f0;
  if (kc.a_bg) j["a_bg"] = *kc.a_bg;
  if (f) j["f"] = *f;
  return j;
}

// ---------------------------------------------------------------------------
// Subcommand actions
// ---------------------------------------------------------------------------

struct SimulateOpts {
  std::string model = "seismic";
  std::size_t records = 10;
  double dt = 0.02;
  std::uint64_t seed = 0x5EED;
  std::string out;
};

int cmd_simulate(const SimulateOpts& o) {
  ensure_dir(o.out);
  const epsd::SeismicModel model;
  epsd::SrmGenerator gen(model, o.dt, o.seed);
  json files = json::array();
  for (std::size_t r = 0; r < o.records; ++r) {
    char name[32];
    std::snprintf(name, sizeof(name), "record_%04zu.csv", r);
    epsd::write_time_series_csv(join_path(o.out, name), gen.record(r));
    files.push_back(name);
  }
  json manifest{{"model", o.model},
                {"records", o.records},
                {"dt", o.dt},
                {"seed", o.seed},
                {"duration", model.duration()},
                {"harmonics", gen.harmonics()},
                {"files", files}};
  epsd::write_text_atomic(join_path(o.out, "manifest.json"), manifest.dump(2) + "\n");
  return 0;
}

struct TransformOpts {
  std::string spec;
  std::string in;
  std::string out;
};

int cmd_transform(const TransformOpts& o) {
  const epsd::TransformSpec spec = parse_spec_arg(o.spec);
  const epsd::TimeSeries x = epsd::read_time_series_csv(o.in);
  const epsd::TransformOutput t = epsd::compute_transform(x, spec);
  if (!t.dropped_scales.empty()) {
    std::cerr << "note: " << t.dropped_scales.size()
              << " scale level(s) above the Nyquist frequency were dropped\n";
  }
  epsd::write_coefficient_csv(o.out, t.grid);
  return 0;
}

struct EstimateOpts {
  std::string spec;
  std::string in;
  std::string out;
  double smooth = 0.0;
};

int cmd_estimate(const EstimateOpts& o) {
  const epsd::TransformSpec spec = parse_spec_arg(o.spec);
  const epsd::TimeSeries x = epsd::read_time_series_csv(o.in);
  const epsd::TransformOutput t = epsd::compute_transform(x, spec);
  epsd::SpectralGrid est = epsd::epsd_estimate(t.grid, spec);
  if (o.smooth > 0.0) est = epsd::smooth_time(est, o.smooth);
  epsd::write_spectral_grid_csv(o.out, est);
  return 0;
}

struct ResidualOpts {
  std::string spec;
  std::string model = "seismic";
  int order = 2;
  double dt = 0.02;
  double min_validity = 0.9;
  double model_floor = 0.01;
  std::string out;
};

int cmd_residual(const ResidualOpts& o) {
  const epsd::TransformSpec spec = parse_spec_arg(o.spec);
  const epsd::SeismicModel model;
  const epsd::StudyGrid grid = epsd::study_grid(model, o.dt);

  epsd::MaskPolicy policy;
  policy.min_validity = o.min_validity;
  policy.min_freq = 2.0 / model.duration();
  epsd::SpectralGrid mask =
      epsd::usability_mask(spec, grid.freqs, grid.times, model.duration(), policy);
  double peak = 0.0;
  std::vector<double> model_vals(grid.freqs.size() * grid.times.size());
  for (std::size_t r = 0; r < grid.freqs.size(); ++r) {
    for (std::size_t q = 0; q < grid.times.size(); ++q) {
      const double v = model.value(grid.freqs[r], grid.times[q]);
      model_vals[r * grid.times.size() + q] = v;
      peak = std::max(peak, v);
    }
  }
  for (std::size_t c = 0; c < model_vals.size(); ++c) {
    if (model_vals[c] <= o.model_floor * peak) mask.values()[c] = 0.0;
  }

  const epsd::SpectralGrid res =
      epsd::residual_grid(model, spec, grid.freqs, grid.times, o.order,
                          grid.freqs.values().back(), &mask);
  epsd::write_spectral_grid_csv(o.out, res);
  return 0;
}

struct RatiosOpts {
  std::string spec;
  std::string tuple;
  std::string sweep;
  std::optional<double> f;
  std::optional<double> band;
  std::string out;  // empty = stdout
};

int cmd_ratios(const RatiosOpts& o) {
  std::vector<int> tuple;
  {
    int a = 0, b = 0, c = 0, d = 0;
    const int got = std::sscanf(o.tuple.c_str(), "%d,%d,%d,%d", &a, &b, &c, &d);
    if (got == 2) {
      tuple = {a, b};
    } else if (got == 4) {
      tuple = {a, b, c, d};
    } else {
      usage_error("--tuple: expected k,l,m,n (windowed) or j,k (wavelet)");
    }
  }

  const json base = spec_base_json(o.spec);
  std::optional<Sweep> sweep;
  if (!o.sweep.empty()) sweep = parse_sweep(o.sweep);

  std::vector<std::pair<double, double>> rows;  // (swept value, ratio)
  const std::vector<double> points =
      sweep ? sweep->values : std::vector<double>{0.0};
  for (double v : points) {
    json j = base;
    std::optional<double> f = o.f;
    if (sweep) {
      if (sweep->name == "f") {
        f = v;
      } else {
        j[sweep->name] = v;
      }
    }
    epsd::TransformSpec spec;
    try {
      spec = epsd::parse_spec_json(j.dump());
    } catch (const std::invalid_argument& e) {
      usage_error(e.what());
    }

    double ratio = 0.0;
    if (tuple.size() == 4) {
      if (epsd::is_cwt(spec)) {
        usage_error("--tuple: wavelet specs take a 2-element tuple j,k");
      }
      if (epsd::is_s_transform(spec)) {
        if (!f) usage_error("--f is required for s-transform ratios");
        ratio = epsd::ratio_st(spec, *f, tuple[0], tuple[1], tuple[2], tuple[3]);
      } else {
        ratio = epsd::ratio_stft(spec, tuple[0], tuple[1], tuple[2], tuple[3],
                                 o.band);
      }
    } else {
      if (!epsd::is_cwt(spec)) {
        usage_error("--tuple: windowed specs take a 4-element tuple k,l,m,n");
      }
      if (!f) usage_error("--f is required for wavelet ratios");
      ratio = epsd::ratio_cwt(spec, *f, tuple[0], tuple[1]);
    }
    rows.emplace_back(sweep ? v : (f ? *f : 0.0), ratio);
  }

  std::string csv = sweep ? sweep->name + ",value\n" : "param,value\n";
  for (const auto& [param, value] : rows) {
    csv += format_number(param);
    csv += ',';
    csv += format_number(value);
    csv += '\n';
  }
  emit_text(o.out, csv);
  return 0;
}

struct ConstantsOpts {
  std::string spec;
  std::optional<double> f;
  std::string out;  // empty = stdout
};

int cmd_constants(const ConstantsOpts& o) {
  const epsd::TransformSpec spec = parse_spec_arg(o.spec);
  if (epsd::is_s_transform(spec) && !o.f) {
    usage_error("--f is required for s-transform constants");
  }
  emit_text(o.out, constants_json(spec, o.f).dump(2) + "\n");
  return 0;
}

struct McOpts {
  std::string model = "seismic";
  std::string preset = "reference";
  std::vector<std::string> specs;
  std::size_t records = 2000;
  double dt = 0.02;
  std::uint64_t seed = 0x5EED;
  double probe_time = 8.0;
  std::string out;
};

int cmd_mc(const McOpts& o) {
  ensure_dir(o.out);
  const epsd::SeismicModel model;
  const std::vector<epsd::NamedSpec> specs = resolve_specs(o.preset, o.specs);

  epsd::McOptions options;
  options.records = o.records;
  options.dt = o.dt;
  options.seed = o.seed;
  options.probe_time = o.probe_time;
  const std::vector<epsd::McSpecResult> results = epsd::run_mc(model, specs, options);

  json summary{{"model", o.model},
               {"records", o.records},
               {"dt", o.dt},
               {"seed", o.seed},
               {"probe_time", o.probe_time}};
  summary["specs"] = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const epsd::McSpecResult& r = results[i];
    json js{{"name", r.name},
            {"spec", json::parse(epsd::spec_to_json(specs[i].spec))},
            {"ok", r.ok}};
    if (!r.ok) {
      js["error"] = r.error;
    } else {
      js["power_ratio"] = r.power_ratio;
      js["pearson_time"] = r.pearson_time;
      js["pearson_freq_probe"] = r.pearson_freq_probe;
      js["dropped_scales"] = r.dropped_scales;
      epsd::write_spectral_grid_csv(join_path(o.out, r.name + ".mean.csv"), *r.mean);
      epsd::write_spectral_grid_csv(join_path(o.out, r.name + ".std.csv"), *r.stddev);
      epsd::write_spectral_grid_csv(join_path(o.out, r.name + ".diff.csv"), *r.diff);
      epsd::write_spectral_grid_csv(join_path(o.out, r.name + ".mask.csv"), *r.mask);
    }
    summary["specs"].push_back(std::move(js));
  }
  epsd::write_text_atomic(join_path(o.out, "summary.json"), summary.dump(2) + "\n");

  bool all_ok = true;
  for (const auto& r : results) {
    if (!r.ok) {
      all_ok = false;
      std::cerr << "error: spec '" << r.name << "' failed: " << r.error << "\n";
    }
  }
  return all_ok ? 0 : 1;
}

struct StudyOpts {
  std::string model = "seismic";
  std::string preset = "reference";
  std::vector<std::string> specs;
  double dt = 0.02;
  double min_validity = 0.9;
  double model_floor = 0.01;
  std::string out;
};

int cmd_residual_study(const StudyOpts& o) {
  ensure_dir(o.out);
  const epsd::SeismicModel model;
  const std::vector<epsd::NamedSpec> specs = resolve_specs(o.preset, o.specs);
  const epsd::StudyGrid grid = epsd::study_grid(model, o.dt);

  epsd::ResidualStudyOptions options;
  options.min_validity = o.min_validity;
  options.model_floor = o.model_floor;
  const std::vector<epsd::ResidualSpecResult> results =
      epsd::run_residual_study(model, specs, grid.freqs, grid.times, options);

  json summary{{"model", o.model}, {"dt", o.dt}};
  summary["specs"] = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const epsd::ResidualSpecResult& r = results[i];
    json js{{"name", r.name},
            {"spec", json::parse(epsd::spec_to_json(specs[i].spec))},
            {"ok", r.ok}};
    if (!r.ok) {
      js["error"] = r.error;
    } else {
      js["aggregate_second"] = r.aggregate_second;
      epsd::write_spectral_grid_csv(join_path(o.out, r.name + ".r2.csv"),
                                    *r.second_order);
      epsd::write_spectral_grid_csv(join_path(o.out, r.name + ".mask.csv"), *r.mask);
      if (r.first_order) {
        js["aggregate_first"] = r.aggregate_first;
        epsd::write_spectral_grid_csv(join_path(o.out, r.name + ".r1.csv"),
                                      *r.first_order);
      }
    }
    summary["specs"].push_back(std::move(js));
  }
  epsd::write_text_atomic(join_path(o.out, "summary.json"), summary.dump(2) + "\n");

  bool all_ok = true;
  for (const auto& r : results) {
    if (!r.ok) {
      all_ok = false;
      std::cerr << "error: spec '" << r.name << "' failed: " << r.error << "\n";
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"epsd: evolutionary power spectral density toolkit"};
  app.set_version_flag("--version",
                       std::string("epsd ") + epsd::version_string);
  app.require_subcommand(1);

  int rc = 0;

  SimulateOpts sim;
  CLI::App* c_sim = app.add_subcommand(
      "simulate", "Draw records from the bundled seismic model");
  c_sim->add_option("--model", sim.model, "Target model")
      ->check(CLI::IsMember({"seismic"}));
  c_sim->add_option("--records", sim.records, "Number of records")
      ->check(CLI::PositiveNumber);
  c_sim->add_option("--dt", sim.dt, "Sampling step in seconds")
      ->check(CLI::PositiveNumber);
  c_sim->add_option("--seed", sim.seed, "Random seed");
  c_sim->add_option("--out", sim.out, "Output directory")->required();
  c_sim->callback([&] { rc = cmd_simulate(sim); });

  TransformOpts tr;
  CLI::App* c_tr = app.add_subcommand(
      "transform", "Time-frequency transform of a record");
  c_tr->add_option("--spec", tr.spec, "Transform spec (JSON or name)")->required();
  c_tr->add_option("--in", tr.in, "Input time-series CSV")->required();
  c_tr->add_option("--out", tr.out, "Output coefficient CSV")->required();
  c_tr->callback([&] { rc = cmd_transform(tr); });

  EstimateOpts est;
  CLI::App* c_est = app.add_subcommand(
      "estimate", "Single-record EPSD estimate");
  c_est->add_option("--spec", est.spec, "Transform spec (JSON or name)")->required();
  c_est->add_option("--in", est.in, "Input time-series CSV")->required();
  c_est->add_option("--out", est.out, "Output spectral-grid CSV")->required();
  c_est->add_option("--smooth", est.smooth,
                    "Box smoothing halfwidth along time, seconds (0 = off)")
      ->check(CLI::NonNegativeNumber);
  c_est->callback([&] { rc = cmd_estimate(est); });

  ResidualOpts res;
  CLI::App* c_res = app.add_subcommand(
      "residual", "Slow-variation residual grid against the model");
  c_res->add_option("--spec", res.spec, "Transform spec (JSON or name)")->required();
  c_res->add_option("--model", res.model, "Target model")
      ->check(CLI::IsMember({"seismic"}));
  c_res->add_option("--order", res.order, "Residual order")
      ->check(CLI::IsMember({1, 2}))
      ->required();
  c_res->add_option("--dt", res.dt, "Sampling step in seconds")
      ->check(CLI::PositiveNumber);
  c_res->add_option("--min-validity", res.min_validity,
                    "Window-mass threshold for usable cells");
  c_res->add_option("--model-floor", res.model_floor,
                    "Exclude cells below this fraction of the model peak");
  c_res->add_option("--out", res.out, "Output spectral-grid CSV")->required();
  c_res->callback([&] { rc = cmd_residual(res); });

  RatiosOpts rat;
  CLI::App* c_rat = app.add_subcommand(
      "ratios", "Moment-ratio values, optionally swept over a parameter");
  c_rat->add_option("--spec", rat.spec, "Transform spec (JSON or name)")->required();
  c_rat->add_option("--tuple", rat.tuple,
                    "Ratio tuple: k,l,m,n (windowed) or j,k (wavelet)")
      ->required();
  c_rat->add_option("--sweep", rat.sweep,
                    "Parameter sweep name=start:stop:count (geometric when both "
                    "endpoints are positive; 'f' sweeps the analysis frequency)");
  double rat_f = 0.0, rat_band = 0.0;
  CLI::Option* rat_f_opt =
      c_rat->add_option("--f", rat_f, "Analysis frequency in Hz");
  CLI::Option* rat_band_opt = c_rat->add_option(
      "--band", rat_band, "Frequency band limit for the box-window ratio");
  c_rat->callback([&] {
    if (rat_f_opt->count()) rat.f = rat_f;
    if (rat_band_opt->count()) rat.band = rat_band;
    rc = cmd_ratios(rat);
  });
  c_rat->add_option("--out", rat.out, "Output CSV (default: stdout)");

  ConstantsOpts con;
  CLI::App* c_con = app.add_subcommand(
      "constants", "Normalization constants of a transform");
  c_con->add_option("--spec", con.spec, "Transform spec (JSON or name)")->required();
  double con_f = 0.0;
  CLI::Option* con_f_opt = c_con->add_option(
      "--f", con_f, "Analysis frequency in Hz (required for s-transform)");
  c_con->add_option("--out", con.out, "Output JSON (default: stdout)");
  c_con->callback([&] {
    if (con_f_opt->count()) con.f = con_f;
    rc = cmd_constants(con);
  });

  McOpts mc;
  CLI::App* c_mc = app.add_subcommand(
      "mc", "Monte Carlo estimator study (mean/std/diff + metrics)");
  c_mc->add_option("--model", mc.model, "Target model")
      ->check(CLI::IsMember({"seismic"}));
  c_mc->add_option("--preset", mc.preset, "Named transform set");
  c_mc->add_option("--spec", mc.specs,
                   "Transform spec (JSON or name); repeat to run several "
                   "(overrides --preset)");
  c_mc->add_option("--records,--samples", mc.records, "Ensemble size")
      ->check(CLI::PositiveNumber);
  c_mc->add_option("--dt", mc.dt, "Sampling step in seconds")
      ->check(CLI::PositiveNumber);
  c_mc->add_option("--seed", mc.seed, "Random seed");
  c_mc->add_option("--probe-time", mc.probe_time,
                   "Probe time for the frequency-marginal correlation");
  c_mc->add_option("--out", mc.out, "Output directory")->required();
  c_mc->callback([&] { rc = cmd_mc(mc); });

  StudyOpts study;
  CLI::App* c_study = app.add_subcommand(
      "residual-study", "Residual grids and aggregates for a set of transforms");
  c_study->add_option("--model", study.model, "Target model")
      ->check(CLI::IsMember({"seismic"}));
  c_study->add_option("--preset", study.preset, "Named transform set");
  c_study->add_option("--spec", study.specs,
                      "Transform spec (JSON or name); repeat to run several "
                      "(overrides --preset)");
  c_study->add_option("--dt", study.dt, "Sampling step in seconds")
      ->check(CLI::PositiveNumber);
  c_study->add_option("--min-validity", study.min_validity,
                      "Window-mass threshold for usable cells");
  c_study->add_option("--model-floor", study.model_floor,
                      "Exclude cells below this fraction of the model peak");
  c_study->add_option("--out", study.out, "Output directory")->required();
  c_study->callback([&] { rc = cmd_residual_study(study); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
