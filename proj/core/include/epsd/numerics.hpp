// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// Shared numeric plumbing: gamma function, adaptive quadrature, normal CDF,
// and order-independent pairwise summation.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace epsd {

// Gamma function for positive real arguments, Lanczos approximation
// (g = 7, 9 coefficients), relative accuracy better than 1e-12.
double gamma_fn(double x);

// Standard normal cumulative distribution function.
double normal_cdf(double x);

// Adaptive Gauss-Kronrod (G7,K15) quadrature of f over [a, b].
// Subdivides until the local error estimate is below
// max(abs_tol, rel_tol * |integral so far|) scaled per interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-8, double abs_tol = 0.0);

// Integrate a kernel-shaped integrand over the whole real line by truncating
// the tails where |f| falls below tail_cut * peak. The caller supplies the
// peak location; the support is grown geometrically from there.
double integrate_line(const std::function<double(double)>& f, double peak_x,
                      double initial_halfwidth, double rel_tol = 1e-8,
                      double tail_cut = 1e-14);

// Sum values with a fixed pairwise (binary tree) order. The result depends
// only on the element order, never on chunking or thread count.
double pairwise_sum(const double* data, std::size_t n);
double pairwise_sum(const std::vector<double>& v);

}  // namespace epsd
