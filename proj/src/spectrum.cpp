#include "rabi/numerics/spectrum.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <unsupported/Eigen/FFT>

#include "rabi/errors.hpp"

namespace rabi {

namespace {

double sample_spacing(const TimeSeries& series) {
  const std::size_t n = series.t.size();
  if (n < 2 || series.p1.size() != n) {
    throw ContractViolation("spectrum: series needs matching t and p1 with >= 2 samples");
  }
  const double dt = (series.t.back() - series.t.front()) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) throw ContractViolation("spectrum: time grid must increase");
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(series.t[i] - series.t[i - 1] - dt) > 1e-9 * dt + 1e-12 * std::abs(series.t[i])) {
      throw ContractViolation("spectrum: time grid is not uniform");
    }
  }
  return dt;
}

}  // namespace

double spectral_bin_width(const TimeSeries& series) {
  return 1.0 / (static_cast<double>(series.t.size()) * sample_spacing(series));
}

std::vector<SpectralPeak> dominant_peaks(const TimeSeries& series, const PeakOptions& opts) {
  const double dt = sample_spacing(series);
  const std::size_t n = series.t.size();
  if (n < 1024) throw ContractViolation("dominant_peaks: needs at least 1024 samples");

  const Eigen::Map<const Eigen::VectorXd> p1(series.p1.data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXd window = Eigen::VectorXd::NullaryExpr(
      static_cast<Eigen::Index>(n), [n](Eigen::Index i) {
        return 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                    static_cast<double>(n - 1));
      });
  const std::vector<double> windowed = [&] {
    const Eigen::VectorXd w = (p1.array() - p1.mean()).matrix().cwiseProduct(window);
    return std::vector<double>(w.data(), w.data() + w.size());
  }();

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, windowed);

  const std::size_t half = n / 2;
  std::vector<double> mag(half + 1);
  for (std::size_t k = 0; k <= half; ++k) mag[k] = std::abs(spectrum[k]);
  const double gain = window.sum();
  const double loudest = *std::max_element(mag.begin() + 1, mag.end());
  if (!(loudest > 0.0)) return {};

  std::vector<SpectralPeak> peaks;
  for (std::size_t k = 1; k < half; ++k) {
    if (!(mag[k] > mag[k - 1] && mag[k] >= mag[k + 1])) continue;
    if (mag[k] < opts.relative_threshold * loudest) continue;
    const double lm = std::log(std::max(mag[k - 1], 1e-300));
    const double l0 = std::log(mag[k]);
    const double lp = std::log(std::max(mag[k + 1], 1e-300));
    const double curvature = lm - 2.0 * l0 + lp;
    double offset = 0.0;
    double log_peak = l0;
    if (curvature < 0.0) {
      offset = std::clamp(0.5 * (lm - lp) / curvature, -0.5, 0.5);
      log_peak = l0 - 0.25 * (lm - lp) * offset;
    }
    peaks.push_back({(static_cast<double>(k) + offset) / (static_cast<double>(n) * dt),
                     2.0 * std::exp(log_peak) / gain});
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const SpectralPeak& a, const SpectralPeak& b) { return a.amplitude > b.amplitude; });
  if (peaks.size() > static_cast<std::size_t>(std::max(0, opts.max_peaks))) {
    peaks.resize(static_cast<std::size_t>(opts.max_peaks));
  }
  return peaks;
}

}  // namespace rabi
