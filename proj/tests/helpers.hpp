// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Shared test utilities: temp directories, simple analytic EPSD models, and
// small comparison helpers.
#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "epsd/model.hpp"

namespace testutil {

// RAII temporary directory under the system temp path.
class TempDir {
 public:
  TempDir() {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "epsd-test-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) {
      throw std::runtime_error("mkdtemp failed");
    }
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string file(const std::string& name) const { return path_ + "/" + name; }

 private:
  std::string path_;
};

// Flat two-sided EPSD: S(f,t) = s0 everywhere on [0, duration].
class FlatModel final : public epsd::EpsdModel {
 public:
  FlatModel(double s0, double duration) : s0_(s0), dur_(duration) {}
  double value(double, double) const override { return s0_; }
  double duration() const override { return dur_; }

 private:
  double s0_;
  double dur_;
};

// Time-linear modulation A(f,t) = a + b t (frequency-flat): S = (a + b t)^2.
class RampModel final : public epsd::EpsdModel {
 public:
  RampModel(double a, double b, double duration) : a_(a), b_(b), dur_(duration) {}
  double value(double, double t) const override {
    const double amp = a_ + b_ * t;
    return amp * amp;
  }
  double duration() const override { return dur_; }

 private:
  double a_, b_, dur_;
};

// Wraps a model, multiplying the surface by c^2 (i.e. A -> c A).
class ScaledModel final : public epsd::EpsdModel {
 public:
  ScaledModel(const epsd::EpsdModel& base, double c) : base_(base), c2_(c * c) {}
  double value(double f, double t) const override {
    return c2_ * base_.value(f, t);
  }
  double duration() const override { return base_.duration(); }

 private:
  const epsd::EpsdModel& base_;
  double c2_;
};

// Model whose surface evaluation must never be reached; value() throws.
class TrapModel final : public epsd::EpsdModel {
 public:
  explicit TrapModel(double duration) : dur_(duration) {}
  double value(double, double) const override {
    throw std::logic_error("TrapModel::value must not be called");
  }
  double duration() const override { return dur_; }

 private:
  double dur_;
};

// Model that reports fixed analytic Taylor coefficients regardless of (f,t);
// the surface itself is c00^2.
class AnalyticStubModel final : public epsd::EpsdModel {
 public:
  AnalyticStubModel(epsd::TaylorCoeffs coeffs, double duration)
      : coeffs_(coeffs), dur_(duration) {}
  double value(double, double) const override { return coeffs_.c00 * coeffs_.c00; }
  double duration() const override { return dur_; }
  std::optional<epsd::TaylorCoeffs> analytic_taylor(double f, double t) const override {
    epsd::TaylorCoeffs c = coeffs_;
    c.f = f;
    c.t = t;
    return c;
  }

 private:
  epsd::TaylorCoeffs coeffs_;
  double dur_;
};

inline double rel_err(double got, double want) {
  const double denom = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / denom;
}

inline std::vector<double> random_vector(std::size_t n, unsigned seed,
                                         double lo = -1.0, double hi = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

// True when fn() throws an exception of type E whose what() contains `needle`.
template <typename E = std::exception>
bool throws_with(const std::function<void()>& fn, const std::string& needle) {
  try {
    fn();
  } catch (const E& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  } catch (...) {
    return false;
  }
  return false;
}

}  // namespace testutil
