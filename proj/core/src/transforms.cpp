// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
#include "epsd/transforms.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "epsd/fft.hpp"
#include "epsd/parallel.hpp"

namespace epsd {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

// Sampled, area-normalized analysis window truncated to j in [-half, half].
struct SampledWindow {
  std::vector<double> w;  // w[half + j]
  long half = 0;
};

// Gaussian windows are cut where the amplitude falls below ~1e-14 of the
// peak (8 standard deviations).
constexpr double kGaussCutSigmas = 8.0;

SampledWindow sample_box(double h, double dt) {
  SampledWindow out;
  out.half = static_cast<long>(std::floor(h / dt * (1.0 + 1e-12)));
  out.w.assign(2 * out.half + 1, 1.0 / (2.0 * h));
  return out;
}

SampledWindow sample_gauss(double sigma, double dt) {
  SampledWindow out;
  out.half = static_cast<long>(std::ceil(kGaussCutSigmas * sigma / dt));
  out.w.resize(2 * out.half + 1);
  const double amp = 1.0 / (sigma * std::sqrt(kTwoPi));
  for (long j = -out.half; j <= out.half; ++j) {
    const double t = static_cast<double>(j) * dt;
    out.w[out.half + j] = amp * std::exp(-0.5 * t * t / (sigma * sigma));
  }
  return out;
}

SampledWindow sample_window(const TransformSpec& spec, double dt, double f) {
  if (const auto* box = std::get_if<StftBox>(&spec)) return sample_box(box->h, dt);
  if (const auto* g = std::get_if<StftGauss>(&spec)) return sample_gauss(g->sigma, dt);
  const auto& st = std::get<STrans>(spec);
  return sample_gauss(effective_kappa(st, f) / f, dt);
}

FrequencyAxis default_rows(const TimeSeries& x) {
  const double df = 1.0 / (static_cast<double>(x.size()) * x.dt());
  return FrequencyAxis::dft_bins(df, x.nyquist());
}

// True when every row frequency is an integer multiple of 1/(N dt); the
// multiples are written to `bins`.
bool rows_are_dft_bins(const FrequencyAxis& rows, double df, std::size_t n,
                       std::vector<std::size_t>& bins) {
  bins.clear();
  bins.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double k = rows[i] / df;
    const double kr = std::round(k);
    if (kr < 0.0 || kr > static_cast<double>(n) / 2.0 + 0.5) return false;
    if (std::abs(k - kr) > 1e-9 * std::max(1.0, k)) return false;
    bins.push_back(static_cast<std::size_t>(kr));
  }
  return true;
}

// Worst-case (least localized) row of a windowed/wavelet grid is the one with
// the widest effective window: frequency-independent for the short-time
// transforms, the lowest analysis frequency otherwise.
std::vector<double> worst_row_validity(const TransformSpec& spec, double f_widest,
                                       const TimeSeries& x) {
  const double span = static_cast<double>(x.size()) * x.dt();
  std::vector<double> v(x.size());
  for (std::size_t q = 0; q < x.size(); ++q) {
    v[q] = boundary_validity(spec, f_widest, static_cast<double>(q) * x.dt(), span);
  }
  return v;
}

// Direct per-column evaluation on DFT-bin rows: gather the windowed segment
// into an N-periodic buffer and take one length-N FFT per column. Requires the
// window support (2*half+1) to fit in N samples.
void stft_fft_columns(const TimeSeries& x, const SampledWindow& win,
                      const std::vector<std::size_t>& bins, CoefficientGrid& grid) {
  const std::size_t n = x.size();
  const long nl = static_cast<long>(n);
  const double dt = x.dt();
  parallel_for(n, [&](std::size_t q) {
    std::vector<std::complex<double>> buf(n, {0.0, 0.0});
    const long ql = static_cast<long>(q);
    for (long j = -win.half; j <= win.half; ++j) {
      const long t = ql + j;
      if (t < 0 || t >= nl) continue;
      const long idx = ((j % nl) + nl) % nl;
      buf[static_cast<std::size_t>(idx)] +=
          win.w[static_cast<std::size_t>(win.half + j)] *
          x.samples()[static_cast<std::size_t>(t)];
    }
    fft_complex(buf, false);
    for (std::size_t r = 0; r < bins.size(); ++r) {
      grid.at(r, q) = dt * buf[bins[r]];
    }
  });
}

// Per-row evaluation via padded-FFT correlation, exactly equivalent to the
// zero-extended direct sum: out[q] = dt * sum_j w_j x[q+j] exp(-i 2 pi f j dt).
class PaddedRowEngine {
 public:
  explicit PaddedRowEngine(const TimeSeries& x) : x_(x) {}

  // FFT length: the smallest power-of-two multiple of N that prevents
  // circular wrap for the given window half-width.
  std::size_t fft_length(long half) const {
    const std::size_t n = x_.size();
    std::size_t m = 1;
    while (m * n < n + static_cast<std::size_t>(half) + 1) m *= 2;
    return m * n;
  }

  void prepare(std::size_t length) {
    if (spectra_.count(length)) return;
    std::vector<std::complex<double>> pad(length, {0.0, 0.0});
    for (std::size_t q = 0; q < x_.size(); ++q) pad[q] = x_.samples()[q];
    fft_complex(pad, false);
    spectra_.emplace(length, std::move(pad));
  }

  void compute_row(const SampledWindow& win, double f, std::size_t row,
                   CoefficientGrid& grid) const {
    const std::size_t L = fft_length(win.half);
    const auto& xpad = spectra_.at(L);
    const long ll = static_cast<long>(L);
    std::vector<std::complex<double>> c(L, {0.0, 0.0});
    for (long j = -win.half; j <= win.half; ++j) {
      const double phase = kTwoPi * f * static_cast<double>(j) * x_.dt();
      const long idx = ((j % ll) + ll) % ll;
      // Kernel stores conj(g_j) so the frequency-domain correlation below
      // reproduces sum_j g_j x[q+j] with g_j = w_j exp(-i 2 pi f j dt).
      c[static_cast<std::size_t>(idx)] +=
          win.w[static_cast<std::size_t>(win.half + j)] *
          std::complex<double>(std::cos(phase), std::sin(phase));
    }
    fft_complex(c, false);
    for (std::size_t k = 0; k < L; ++k) c[k] = xpad[k] * std::conj(c[k]);
    fft_complex(c, true);
    const double dt = x_.dt();
    for (std::size_t q = 0; q < x_.size(); ++q) grid.at(row, q) = dt * c[q];
  }

 private:
  const TimeSeries& x_;
  std::map<std::size_t, std::vector<std::complex<double>>> spectra_;
};

TransformOutput windowed_transform(const TimeSeries& x, const TransformSpec& spec,
                                   std::optional<FrequencyAxis> rows_opt) {
  FrequencyAxis rows = rows_opt ? std::move(*rows_opt) : default_rows(x);
  if (is_s_transform(spec)) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!(rows[i] > 0.0)) {
        throw std::invalid_argument(
            "s-transform: the voice window degenerates at zero frequency "
            "(its width scales as K(f)/|f|); analysis rows must be strictly "
            "positive");
      }
    }
  }
  const std::size_t n = x.size();
  std::vector<double> times(n);
  for (std::size_t q = 0; q < n; ++q) times[q] = x.time_at(q);
  const bool stft = is_stft(spec);
  const double f_widest = stft ? 1.0 : rows[0];
  CoefficientGrid grid(rows, std::move(times),
                       std::vector<std::complex<double>>(rows.size() * n),
                       worst_row_validity(spec, f_widest, x));

  const double df = 1.0 / (static_cast<double>(n) * x.dt());
  std::vector<std::size_t> bins;
  bool fast = stft && rows_are_dft_bins(rows, df, n, bins);
  SampledWindow stft_win;
  if (stft) {
    stft_win = sample_window(spec, x.dt(), 1.0);
    if (2 * stft_win.half + 1 > static_cast<long>(n)) fast = false;
  }

  if (fast) {
    stft_fft_columns(x, stft_win, bins, grid);
  } else {
    PaddedRowEngine engine(x);
    std::vector<SampledWindow> wins(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      wins[r] = stft ? stft_win : sample_window(spec, x.dt(), rows[r]);
      engine.prepare(engine.fft_length(wins[r].half));
    }
    parallel_for(rows.size(), [&](std::size_t r) {
      engine.compute_row(wins[r], rows[r], r, grid);
    });
  }
  return {std::move(grid), {}};
}

TransformOutput cwt_transform(const TimeSeries& x, const TransformSpec& spec) {
  const std::size_t n = x.size();
  const double min_freq = 1.0 / (static_cast<double>(n) * x.dt());
  ScalePlan plan = plan_scales(spec, x.nyquist(), min_freq);
  if (plan.scales.empty()) {
    throw std::invalid_argument(
        "cwt: no usable scale levels at or below the Nyquist frequency");
  }
  const Spectrum spectrum = fourier_transform(x);
  const std::size_t kmax = (n - 1) / 2;  // positive-frequency bins only

  std::vector<double> times(n);
  for (std::size_t q = 0; q < n; ++q) times[q] = x.time_at(q);
  ScaleAxis axis{plan.scales};
  const double f_widest = scale_to_freq(spec, axis[axis.size() - 1]);
  CoefficientGrid grid(axis, std::move(times),
                       std::vector<std::complex<double>>(axis.size() * n),
                       worst_row_validity(spec, f_widest, x));

  parallel_for(axis.size(), [&](std::size_t r) {
    const double s = axis[r];
    const double root_s = std::sqrt(s);
    std::vector<std::complex<double>> z(n, {0.0, 0.0});
    for (std::size_t k = 1; k <= kmax; ++k) {
      const double fk = static_cast<double>(k) * spectrum.df;
      const double psi = wavelet_ft(spec, s * fk).real();
      if (psi != 0.0) z[k] = spectrum.bins[k] * psi;
    }
    fft_complex(z, true);
    for (std::size_t q = 0; q < n; ++q) grid.at(r, q) = root_s * z[q];
  });
  return {std::move(grid), std::move(plan.dropped)};
}

}  // namespace

ScalePlan plan_scales(const TransformSpec& spec, double nyquist, double min_freq) {
  if (!is_cwt(spec)) {
    throw std::invalid_argument("plan_scales: spec is not a CWT transform");
  }
  validate_spec(spec);
  const ScaleGridSpec* g = nullptr;
  if (const auto* hw = std::get_if<CwtHarmonic>(&spec)) g = &hw->scales;
  if (const auto* mw = std::get_if<CwtMorse>(&spec)) g = &mw->scales;
  if (!(nyquist > 0.0) || !(min_freq > 0.0) || !(min_freq < nyquist)) {
    throw std::invalid_argument("plan_scales: need 0 < min_freq < nyquist");
  }
  const double f0 = scale_to_freq(spec, 1.0);

  ScalePlan plan;
  constexpr std::size_t kMaxLevels = 10000;
  for (std::size_t p = 0; p < kMaxLevels; ++p) {
    if (g->levels.has_value() && p >= *g->levels) break;
    const double s = g->c0 * std::pow(g->s0, static_cast<double>(p));
    const double f = f0 / s;
    if (f > nyquist * (1.0 + 1e-12)) {
      plan.dropped.push_back(s);
    } else {
      plan.scales.push_back(s);
    }
    // Open-ended ladders stop one level past min_freq so the requested band
    // stays interpolable.
    if (!g->levels.has_value() && f < min_freq) break;
  }
  return plan;
}

TransformOutput compute_transform(const TimeSeries& x, const TransformSpec& spec,
                                  std::optional<FrequencyAxis> rows) {
  validate_spec(spec);
  if (is_cwt(spec)) {
    if (rows.has_value()) {
      throw std::invalid_argument(
          "compute_transform: CWT grids are indexed by scale; a frequency-row "
          "override is not accepted");
    }
    return cwt_transform(x, spec);
  }
  return windowed_transform(x, spec, std::move(rows));
}

}  // namespace epsd
