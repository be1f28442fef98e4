// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// End-to-end checks of the command-line tool: exit codes, output formats,
// determinism, and re-ingestibility of every emitted artifact. The binary
// path arrives through the EPSD_CLI_PATH compile definition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "epsd/csv.hpp"
#include "epsd/simulator.hpp"
#include "epsd/types.hpp"
#include "helpers.hpp"

using testutil::rel_err;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr, interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(EPSD_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) {
    res.output.append(buf, n);
  }
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return in.good();
}

// Split a CSV body into lines, dropping a trailing empty line.
std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

const std::string kGauss = "'{\"transform\":\"stft-gauss\",\"sigma\":1}'";
const std::string kHw =
    "'{\"transform\":\"cwt-harmonic\",\"m\":1,\"n\":1.4142135623730951,"
    "\"scales\":{\"c0\":0.01,\"s0\":1.4142135623730951}}'";

}  // namespace

TEST_CASE("--version prints the tool name and semantic version") {
  RunResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("epsd 1.0.0") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").exit_code == 2);            // a subcommand is required
  CHECK(run_cli("frobnicate").exit_code == 2);  // unknown subcommand
  RunResult r = run_cli("constants");           // missing required --spec
  CHECK(r.exit_code == 2);
  CHECK(run_cli("simulate --records 3").exit_code == 2);  // missing --out
}

TEST_CASE("constants: wavelet JSON output carries the frozen scale factor") {
  RunResult r = run_cli("constants --spec " + kHw);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"transform\": \"cwt-harmonic\"") != std::string::npos);
  // epsd_scale = ln(n/m)/(n-m) * (m+n)/2 for the (1, sqrt 2) band.
  CHECK(r.output.find("1.00998945715423") != std::string::npos);
  CHECK(r.output.find("\"c_psi\"") != std::string::npos);
  CHECK(r.output.find("\"f0\"") != std::string::npos);
}

TEST_CASE("constants: spec validation failures are usage errors") {
  RunResult missing = run_cli(
      "constants --spec '{\"transform\":\"s-transform\"}' --f 1.5");
  CHECK(missing.exit_code == 2);
  CHECK(missing.output.find("missing field 'kappa'") != std::string::npos);

  RunResult no_f =
      run_cli("constants --spec '{\"transform\":\"s-transform\",\"kappa\":1}'");
  CHECK(no_f.exit_code == 2);
  CHECK(no_f.output.find("--f is required") != std::string::npos);

  RunResult band = run_cli(
      "constants --spec '{\"transform\":\"cwt-harmonic\",\"m\":1,\"n\":1,"
      "\"scales\":{\"c0\":0.01,\"s0\":1.5}}'");
  CHECK(band.exit_code == 2);
  CHECK(band.output.find("m < n") != std::string::npos);
}

TEST_CASE("ratios: geometric sweep emits a labeled two-column CSV") {
  RunResult r = run_cli("ratios --spec " + kGauss +
                        " --tuple 0,0,2,0 --sweep sigma=0.5:2:5");
  CHECK(r.exit_code == 0);
  const auto rows = lines_of(r.output);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "sigma,value");
  const double ratio = std::pow(4.0, 0.25);  // geometric step over [0.5, 2]
  double sigma = 0.5;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double s = 0.0, v = 0.0;
    REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%lf", &s, &v) == 2);
    CHECK(rel_err(s, sigma) < 1e-12);
    CHECK(rel_err(v, sigma * sigma / 2.0) < 1e-6);  // r(0,0,2,0) = sigma^2/2
    sigma *= ratio;
  }
}

TEST_CASE("ratios: argument contract") {
  // Wavelet ratios need an analysis frequency.
  RunResult no_f = run_cli("ratios --spec " + kHw + " --tuple 0,1");
  CHECK(no_f.exit_code == 2);
  CHECK(no_f.output.find("--f is required") != std::string::npos);
  // Tuple arity must match the transform family.
  RunResult arity = run_cli("ratios --spec " + kHw + " --tuple 2,2,0,0 --f 2");
  CHECK(arity.exit_code == 2);
  CHECK(arity.output.find("2-element tuple") != std::string::npos);
  RunResult arity2 =
      run_cli("ratios --spec " + kGauss + " --tuple 0,1 --f 2");
  CHECK(arity2.exit_code == 2);
  CHECK(arity2.output.find("4-element tuple") != std::string::npos);
  // Malformed sweep.
  RunResult sweep = run_cli("ratios --spec " + kGauss +
                            " --tuple 0,0,2,0 --sweep sigma=1:2");
  CHECK(sweep.exit_code == 2);
  CHECK(sweep.output.find("name=start:stop:count") != std::string::npos);
}

TEST_CASE("simulate: deterministic records plus a manifest") {
  testutil::TempDir dir;
  const std::string out1 = dir.file("a");
  const std::string out2 = dir.file("b");
  const std::string args = "simulate --records 2 --dt 0.05 --seed 7 --out ";
  CHECK(run_cli(args + out1).exit_code == 0);
  CHECK(run_cli(args + out2).exit_code == 0);

  const std::string manifest = slurp(out1 + "/manifest.json");
  CHECK(manifest.find("\"records\": 2") != std::string::npos);
  CHECK(manifest.find("\"seed\": 7") != std::string::npos);
  CHECK(manifest.find("record_0000.csv") != std::string::npos);
  CHECK(manifest.find("record_0001.csv") != std::string::npos);

  // Byte-identical across reruns.
  CHECK(slurp(out1 + "/record_0000.csv") == slurp(out2 + "/record_0000.csv"));
  CHECK(slurp(out1 + "/record_0001.csv") == slurp(out2 + "/record_0001.csv"));

  // The emitted series round-trips and matches the library generator.
  epsd::TimeSeries x = epsd::read_time_series_csv(out1 + "/record_0000.csv");
  CHECK(x.size() == 430);  // 21.5 s at dt = 0.05
  CHECK(rel_err(x.dt(), 0.05) < 1e-12);
  epsd::SeismicModel model;
  epsd::SrmGenerator gen(model, 0.05, 7);
  const epsd::TimeSeries want = gen.record(0);
  REQUIRE(want.size() == x.size());
  for (std::size_t q = 0; q < x.size(); q += 13) {
    CHECK(rel_err(x.samples()[q], want.samples()[q]) < 1e-12);
  }
}

TEST_CASE("transform and estimate emit re-ingestible grids") {
  testutil::TempDir dir;
  const std::string rec = dir.file("records");
  REQUIRE(run_cli("simulate --records 1 --dt 0.05 --seed 11 --out " + rec)
              .exit_code == 0);
  const std::string record_csv = rec + "/record_0000.csv";

  const std::string coef_csv = dir.file("coef.csv");
  RunResult tr = run_cli("transform --spec " + kGauss + " --in " + record_csv +
                         " --out " + coef_csv);
  CHECK(tr.exit_code == 0);
  epsd::CoefficientGrid coef = epsd::read_coefficient_csv(coef_csv);
  CHECK(coef.rows() == 215);  // DFT bins: spacing 1/21.5 up to Nyquist 10
  CHECK(coef.cols() == 430);
  CHECK(file_exists(coef_csv + ".meta.json"));

  const std::string est_csv = dir.file("est.csv");
  RunResult est = run_cli("estimate --spec " + kGauss + " --in " + record_csv +
                          " --smooth 0.5 --out " + est_csv);
  CHECK(est.exit_code == 0);
  epsd::SpectralGrid grid = epsd::read_spectral_grid_csv(est_csv);
  CHECK(grid.rows() == 215);
  CHECK(grid.cols() == 430);
  for (double v : grid.values()) CHECK(v >= 0.0);

  // A wavelet transform warns about dropped levels on stderr but succeeds.
  const std::string wav_csv = dir.file("wav.csv");
  RunResult wt = run_cli("transform --spec " + kHw + " --in " + record_csv +
                         " --out " + wav_csv);
  CHECK(wt.exit_code == 0);
  CHECK(wt.output.find("above the Nyquist frequency were dropped") !=
        std::string::npos);
  epsd::CoefficientGrid wav = epsd::read_coefficient_csv(wav_csv);
  CHECK(wav.cols() == 430);
  CHECK(wav.rows() > 10);
}

TEST_CASE("transform: missing input file is a computation error") {
  testutil::TempDir dir;
  RunResult r = run_cli("transform --spec " + kGauss +
                        " --in /nonexistent/input.csv --out " +
                        dir.file("out.csv"));
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("residual: signed grid on the study axes") {
  testutil::TempDir dir;
  const std::string out = dir.file("r2.csv");
  RunResult r = run_cli("residual --spec " + kGauss +
                        " --order 2 --dt 0.1 --out " + out);
  CHECK(r.exit_code == 0);
  epsd::SpectralGrid g = epsd::read_spectral_grid_csv(out, /*is_signed=*/true);
  CHECK(g.rows() == 107);  // bins of 1/21.5 up to Nyquist 5
  CHECK(g.cols() == 215);
  // Masked edges are exact zeros; the usable interior is not.
  double max_abs = 0.0;
  for (double v : g.values()) max_abs = std::max(max_abs, std::abs(v));
  CHECK(max_abs > 0.0);
  for (std::size_t row = 0; row < g.rows(); ++row) {
    CHECK(g.at(row, 0) == 0.0);  // window centered at the record start
  }
  RunResult bad = run_cli("residual --spec " + kGauss +
                          " --order 3 --dt 0.1 --out " + out);
  CHECK(bad.exit_code == 2);
}

TEST_CASE("mc: tiny study writes grids, metrics, and a summary") {
  testutil::TempDir dir;
  const std::string out = dir.file("mc");
  RunResult r = run_cli("mc --spec " + kGauss +
                        " --records 4 --dt 0.1 --seed 3 --out " + out);
  CHECK(r.exit_code == 0);

  const std::string summary = slurp(out + "/summary.json");
  CHECK(summary.find("\"ok\": true") != std::string::npos);
  CHECK(summary.find("\"power_ratio\"") != std::string::npos);
  CHECK(summary.find("\"pearson_time\"") != std::string::npos);
  CHECK(summary.find("\"records\": 4") != std::string::npos);

  epsd::SpectralGrid mean =
      epsd::read_spectral_grid_csv(out + "/stft-gauss.mean.csv");
  epsd::SpectralGrid diff =
      epsd::read_spectral_grid_csv(out + "/stft-gauss.diff.csv", true);
  epsd::SpectralGrid mask =
      epsd::read_spectral_grid_csv(out + "/stft-gauss.mask.csv");
  CHECK(mean.rows() == 107);
  CHECK(mean.cols() == 215);
  CHECK(diff.rows() == 107);
  CHECK(mask.rows() == 107);
  CHECK(file_exists(out + "/stft-gauss.std.csv"));
}

TEST_CASE("mc: a spec that cannot run at the sampling rate fails the run") {
  testutil::TempDir dir;
  const std::string out = dir.file("mc-bad");
  // Every requested wavelet level sits above the Nyquist frequency.
  RunResult r = run_cli(
      "mc --spec '{\"transform\":\"cwt-harmonic\",\"m\":1,\"n\":2,"
      "\"scales\":{\"c0\":0.001,\"s0\":1.01,\"levels\":2}}'"
      " --records 2 --dt 0.1 --out " +
      out);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("failed") != std::string::npos);
  const std::string summary = slurp(out + "/summary.json");
  CHECK(summary.find("\"ok\": false") != std::string::npos);
  CHECK(summary.find("no usable scale levels") != std::string::npos);
}

TEST_CASE("mc: unknown preset is a usage error") {
  testutil::TempDir dir;
  RunResult r = run_cli("mc --preset bogus --out " + dir.file("x"));
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("unknown preset") != std::string::npos);
}

TEST_CASE("residual-study: per-spec grids and aggregates") {
  testutil::TempDir dir;
  const std::string out = dir.file("study");
  RunResult r = run_cli("residual-study --spec " + kGauss + " --spec " + kHw +
                        " --dt 0.1 --out " + out);
  CHECK(r.exit_code == 0);

  const std::string summary = slurp(out + "/summary.json");
  CHECK(summary.find("\"aggregate_second\"") != std::string::npos);
  CHECK(summary.find("\"aggregate_first\"") != std::string::npos);

  CHECK(file_exists(out + "/stft-gauss.r2.csv"));
  CHECK(file_exists(out + "/stft-gauss.mask.csv"));
  CHECK(!file_exists(out + "/stft-gauss.r1.csv"));  // windowed: R1 == 0
  CHECK(file_exists(out + "/cwt-harmonic.r2.csv"));
  CHECK(file_exists(out + "/cwt-harmonic.r1.csv"));

  epsd::SpectralGrid r2 =
      epsd::read_spectral_grid_csv(out + "/stft-gauss.r2.csv", true);
  CHECK(r2.rows() == 107);
  CHECK(r2.cols() == 215);
}
