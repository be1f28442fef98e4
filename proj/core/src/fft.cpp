// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
#include "epsd/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace epsd {

namespace {

// FFTW plan creation is not thread-safe; execution of a plan on its own
// buffers is. Plans are cached per (size, direction) and executed via the
// new-array interface on caller buffers.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    // Plan on scratch buffers; FFTW_ESTIMATE keeps planning deterministic and
    // does not overwrite the arrays.
    std::vector<std::complex<double>> scratch(n);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (p == nullptr) {
      throw std::runtime_error("fft: failed to create FFTW plan");
    }
    plans_.emplace(key, p);
    return p;
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

}  // namespace

void fft_complex(std::vector<std::complex<double>>& data, bool inverse) {
  if (data.empty()) {
    throw std::invalid_argument("fft: empty input");
  }
  const int sign = inverse ? FFTW_BACKWARD : FFTW_FORWARD;
  fftw_plan plan = PlanCache::instance().get(data.size(), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= scale;
  }
}

double Spectrum::frequency(std::size_t k) const {
  const std::size_t n = bins.size();
  if (k <= n / 2) return static_cast<double>(k) * df;
  return (static_cast<double>(k) - static_cast<double>(n)) * df;
}

Spectrum fourier_transform(const TimeSeries& ts) {
  std::vector<std::complex<double>> buf(ts.samples().begin(),
                                        ts.samples().end());
  fft_complex(buf, false);
  Spectrum s;
  s.bins = std::move(buf);
  s.dt = ts.dt();
  s.df = 1.0 / (static_cast<double>(ts.size()) * ts.dt());
  return s;
}

std::vector<std::complex<double>> inverse_fourier(const Spectrum& spec) {
  std::vector<std::complex<double>> buf = spec.bins;
  fft_complex(buf, true);
  return buf;
}

}  // namespace epsd
