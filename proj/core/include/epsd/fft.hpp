// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Discrete Fourier transform plumbing. The forward transform is unnormalized
// (no 1/N); the inverse applies 1/N so inverse(forward(x)) == x.
#pragma once

#include <complex>
#include <vector>

#include "epsd/types.hpp"

namespace epsd {

// Spectrum of a sampled record: unnormalized DFT bins with their resolution.
struct Spectrum {
  std::vector<std::complex<double>> bins;  // size N, bin k at frequency k*df (k <= N/2)
  double df = 0.0;                         // 1 / (N * dt)
  double dt = 0.0;

  std::size_t size() const { return bins.size(); }
  // Signed frequency of bin k (negative for k > N/2).
  double frequency(std::size_t k) const;
};

// Unnormalized forward DFT of a real record. df = 1/(N*dt).
Spectrum fourier_transform(const TimeSeries& ts);

// Inverse of fourier_transform: returns the complex samples (1/N applied).
std::vector<std::complex<double>> inverse_fourier(const Spectrum& spec);

// In-place-style complex transforms used by the transform kernels. Forward is
// unnormalized; inverse applies 1/N.
void fft_complex(std::vector<std::complex<double>>& data, bool inverse);

}  // namespace epsd
