#pragma once

#include <vector>

namespace rabi {

/// Population of |1> sampled on a time grid.
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> p1;

  std::size_t size() const { return t.size(); }
};

/// n + 1 points t_k = k * dt, k = 0..n.
std::vector<double> uniform_grid(double dt, std::size_t n);

/// Root-mean-square difference of two equally sampled series.
double rms_difference(const TimeSeries& a, const TimeSeries& b);

}  // namespace rabi
