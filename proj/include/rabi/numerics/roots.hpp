#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "rabi/errors.hpp"

namespace rabi {

struct RootSet {
  std::vector<double> roots;  // strictly increasing
  double lo = 0.0;
  double hi = 0.0;
  double tolerance = 0.0;

  std::size_t size() const { return roots.size(); }
  bool empty() const { return roots.empty(); }
};

/// All roots of f on [lo, hi] visible as sign changes on a uniform scan.
///
/// Each bracketing interval is bisected to width <= tol; a sample that is
/// exactly zero is reported once. Roots closer together than the scan spacing
/// can pair up and cancel, so callers choose scan_points accordingly.
template <typename F>
RootSet find_roots(F&& f, double lo, double hi, int scan_points, double tol) {
  if (!(lo < hi)) throw ContractViolation("find_roots: requires lo < hi");
  if (scan_points < 2) throw ContractViolation("find_roots: requires scan_points >= 2");
  if (!(tol > 0.0)) throw ContractViolation("find_roots: requires tol > 0");

  auto eval = [&f](double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
      throw EvaluationError("find_roots: non-finite value at x = " + std::to_string(x), x);
    }
    return y;
  };
  auto abscissa = [&](int i) {
    return i == scan_points - 1 ? hi : lo + (hi - lo) * i / (scan_points - 1);
  };

  RootSet out{{}, lo, hi, tol};
  double x_prev = abscissa(0);
  double f_prev = eval(x_prev);
  if (f_prev == 0.0) out.roots.push_back(x_prev);
  for (int i = 1; i < scan_points; ++i) {
    const double x = abscissa(i);
    const double fx = eval(x);
    if (fx == 0.0) {
      out.roots.push_back(x);
    } else if ((f_prev < 0.0 && fx > 0.0) || (f_prev > 0.0 && fx < 0.0)) {
      double a = x_prev, b = x;
      double fa = f_prev;
      while (b - a > tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;  // interval at machine resolution
        const double fm = eval(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      out.roots.push_back(0.5 * (a + b));
    }
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

}  // namespace rabi
