// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
#include "epsd/csv.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace epsd {

namespace {

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  out += buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& context) {
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  double v = 0.0;
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() ||
      (res.ptr != e && std::string_view(res.ptr, e - res.ptr)
                               .find_first_not_of(" \t") != std::string_view::npos)) {
    throw std::runtime_error("csv: cannot parse number '" + s + "' in " + context);
  }
  if (!std::isfinite(v)) {
    throw std::runtime_error("csv: non-finite value in " + context);
  }
  return v;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("csv: cannot open '" + path + "'");
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

void check_header(const std::string& got, const std::string& want,
                  const std::string& path) {
  if (got != want) {
    throw std::runtime_error("csv: expected header '" + want + "' in '" + path +
                             "', got '" + got + "'");
  }
}

// Recover a uniform time axis from the ordered unique time values.
double uniform_dt(const std::vector<double>& times, const std::string& path) {
  if (times.size() < 2) {
    throw std::runtime_error("csv: need at least 2 time points in '" + path + "'");
  }
  const double dt =
      (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  if (!(dt > 0.0)) {
    throw std::runtime_error("csv: time values must strictly increase in '" + path + "'");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double expect = times.front() + static_cast<double>(i) * dt;
    if (std::abs(times[i] - expect) > 1e-6 * std::max(1.0, std::abs(expect))) {
      throw std::runtime_error("csv: unevenly sampled time axis in '" + path + "'");
    }
  }
  return dt;
}

}  // namespace

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("csv: cannot open '" + tmp.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw std::runtime_error("csv: write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    throw std::runtime_error("csv: rename to '" + path + "' failed: " + ec.message());
  }
}

void write_time_series_csv(const std::string& path, const TimeSeries& ts) {
  std::string out = "time_s,value\n";
  out.reserve(ts.size() * 32);
  for (std::size_t q = 0; q < ts.size(); ++q) {
    append_number(out, ts.time_at(q));
    out += ',';
    append_number(out, ts.samples()[q]);
    out += '\n';
  }
  write_text_atomic(path, out);
}

TimeSeries read_time_series_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) {
    throw std::runtime_error("csv: empty file '" + path + "'");
  }
  check_header(lines[0], "time_s,value", path);
  std::vector<double> times, values;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_line(lines[i]);
    if (f.size() != 2) {
      throw std::runtime_error("csv: expected 2 columns in '" + path + "'");
    }
    times.push_back(parse_double(f[0], path));
    values.push_back(parse_double(f[1], path));
  }
  const double dt = uniform_dt(times, path);
  return TimeSeries(std::move(values), dt, times.front());
}

void write_spectral_grid_csv(const std::string& path, const SpectralGrid& grid) {
  std::string out = "time_s,freq_hz,value\n";
  out.reserve(grid.rows() * grid.cols() * 40);
  for (std::size_t c = 0; c < grid.cols(); ++c) {
    for (std::size_t r = 0; r < grid.rows(); ++r) {
      append_number(out, grid.times()[c]);
      out += ',';
      append_number(out, grid.freqs()[r]);
      out += ',';
      append_number(out, grid.at(r, c));
      out += '\n';
    }
  }
  write_text_atomic(path, out);
}

SpectralGrid read_spectral_grid_csv(const std::string& path, bool is_signed) {
  const auto lines = read_lines(path);
  if (lines.empty()) {
    throw std::runtime_error("csv: empty file '" + path + "'");
  }
  check_header(lines[0], "time_s,freq_hz,value", path);
  std::set<double> tset, fset;
  std::vector<std::array<double, 3>> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_line(lines[i]);
    if (f.size() != 3) {
      throw std::runtime_error("csv: expected 3 columns in '" + path + "'");
    }
    const double t = parse_double(f[0], path);
    const double fr = parse_double(f[1], path);
    const double v = parse_double(f[2], path);
    tset.insert(t);
    fset.insert(fr);
    rows.push_back({t, fr, v});
  }
  std::vector<double> times(tset.begin(), tset.end());
  std::vector<double> freqs(fset.begin(), fset.end());
  std::map<double, std::size_t> tidx, fidx;
  for (std::size_t i = 0; i < times.size(); ++i) tidx[times[i]] = i;
  for (std::size_t i = 0; i < freqs.size(); ++i) fidx[freqs[i]] = i;
  if (rows.size() != times.size() * freqs.size()) {
    throw std::runtime_error("csv: grid in '" + path + "' is not complete");
  }
  std::vector<double> values(rows.size(), 0.0);
  for (const auto& r : rows) {
    values[fidx[r[1]] * times.size() + tidx[r[0]]] = r[2];
  }
  return SpectralGrid(FrequencyAxis(std::move(freqs)), std::move(times),
                      std::move(values), is_signed);
}

void write_coefficient_csv(const std::string& path, const CoefficientGrid& grid) {
  std::string out = "time_s,axis_value,re,im\n";
  out.reserve(grid.rows() * grid.cols() * 56);
  for (std::size_t c = 0; c < grid.cols(); ++c) {
    for (std::size_t r = 0; r < grid.rows(); ++r) {
      append_number(out, grid.times()[c]);
      out += ',';
      append_number(out, grid.axis_value(r));
      out += ',';
      append_number(out, grid.at(r, c).real());
      out += ',';
      append_number(out, grid.at(r, c).imag());
      out += '\n';
    }
  }
  write_text_atomic(path, out);

  std::ostringstream meta;
  meta << "{\n  \"axis\": \""
       << (grid.axis_is_frequency() ? "frequency" : "scale")
       << "\",\n  \"rows\": " << grid.rows()
       << ",\n  \"columns\": " << grid.cols() << "\n}\n";
  write_text_atomic(path + ".meta.json", meta.str());
}

CoefficientGrid read_coefficient_csv(const std::string& path) {
  const auto meta_lines = read_lines(path + ".meta.json");
  bool axis_is_freq = false, axis_found = false;
  for (const auto& line : meta_lines) {
    if (line.find("\"axis\"") == std::string::npos) continue;
    axis_found = true;
    axis_is_freq = line.find("\"frequency\"") != std::string::npos;
    if (!axis_is_freq && line.find("\"scale\"") == std::string::npos) {
      throw std::runtime_error("csv: unknown axis kind in '" + path + ".meta.json'");
    }
  }
  if (!axis_found) {
    throw std::runtime_error("csv: missing \"axis\" field in '" + path + ".meta.json'");
  }

  const auto lines = read_lines(path);
  if (lines.empty()) {
    throw std::runtime_error("csv: empty file '" + path + "'");
  }
  check_header(lines[0], "time_s,axis_value,re,im", path);
  std::set<double> tset, aset;
  std::vector<std::array<double, 4>> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_line(lines[i]);
    if (f.size() != 4) {
      throw std::runtime_error("csv: expected 4 columns in '" + path + "'");
    }
    const double t = parse_double(f[0], path);
    const double a = parse_double(f[1], path);
    tset.insert(t);
    aset.insert(a);
    rows.push_back({t, a, parse_double(f[2], path), parse_double(f[3], path)});
  }
  std::vector<double> times(tset.begin(), tset.end());
  std::vector<double> axis_vals(aset.begin(), aset.end());
  std::map<double, std::size_t> tidx, aidx;
  for (std::size_t i = 0; i < times.size(); ++i) tidx[times[i]] = i;
  for (std::size_t i = 0; i < axis_vals.size(); ++i) aidx[axis_vals[i]] = i;
  if (rows.size() != times.size() * axis_vals.size()) {
    throw std::runtime_error("csv: grid in '" + path + "' is not complete");
  }
  std::vector<std::complex<double>> data(rows.size());
  for (const auto& r : rows) {
    data[aidx[r[1]] * times.size() + tidx[r[0]]] = {r[2], r[3]};
  }
  AxisVariant axis =
      axis_is_freq ? AxisVariant(FrequencyAxis(std::move(axis_vals)))
                   : AxisVariant(ScaleAxis(std::move(axis_vals)));
  return CoefficientGrid(std::move(axis), std::move(times), std::move(data));
}

}  // namespace epsd
