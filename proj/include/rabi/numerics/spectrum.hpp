#pragma once

#include <vector>

#include "rabi/time_series.hpp"

namespace rabi {

struct SpectralPeak {
  double frequency;  // cycles per unit time
  double amplitude;  // cosine amplitude of the line
};

struct PeakOptions {
  int max_peaks = 64;
  /// Peaks below this fraction of the strongest one are discarded.
  double relative_threshold = 1e-3;
};

/// Width of one DFT bin (cycles per unit time) for the given grid.
double spectral_bin_width(const TimeSeries& series);

/// Strongest spectral lines of a uniformly sampled series, sorted by amplitude.
///
/// The series is mean-subtracted and Hann-windowed before the DFT. Each local
/// maximum of the magnitude is refined by a parabola through the log-magnitudes
/// of the three bins around it. Requires at least 1024 uniform samples.
std::vector<SpectralPeak> dominant_peaks(const TimeSeries& series, const PeakOptions& opts = {});

}  // namespace rabi
