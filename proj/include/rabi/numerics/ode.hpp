#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "rabi/errors.hpp"

namespace rabi {

struct OdeOptions {
  /// Successive step halvings stop once the trajectories differ by less than this.
  double rel_tol = 1e-10;
  /// Upper bound on the initial RK4 step; callers pass a fraction of the drive period.
  double max_step = std::numeric_limits<double>::infinity();
  int max_halvings = 18;
};

namespace detail {

template <typename State>
double max_abs(const State& y) {
  if constexpr (std::is_arithmetic_v<State>) {
    return std::abs(y);
  } else {
    return y.size() == 0 ? 0.0 : static_cast<double>(y.cwiseAbs().maxCoeff());
  }
}

template <typename State, typename Rhs>
std::vector<State> rk4_trajectory(Rhs& rhs, const State& y0, std::span<const double> t_grid,
                                  double max_step, int refine) {
  std::vector<State> out;
  out.reserve(t_grid.size());
  State y = y0;
  out.push_back(y);
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double t0 = t_grid[i - 1];
    const double span = t_grid[i] - t0;
    long steps = 1;
    if (std::isfinite(max_step)) steps = std::max(1L, static_cast<long>(std::ceil(span / max_step)));
    steps *= refine;
    const double h = span / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
      const double t = t0 + h * static_cast<double>(s);
      const State k1 = rhs(t, y);
      const State k2 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k1));
      const State k3 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k2));
      const State k4 = rhs(t + h, State(y + h * k3));
      y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace detail

/// Classical RK4 on a fixed grid with Richardson-style step halving.
///
/// The whole trajectory is recomputed with half the step until two successive
/// solutions agree at every grid time to rel_tol (scaled by max(1, |y|));
/// the finer one is returned. State is any Eigen vector type or a scalar.
template <typename State, typename Rhs>
std::vector<State> evolve_ode(Rhs&& rhs, const State& y0, std::span<const double> t_grid,
                              const OdeOptions& opts = {}) {
  if (t_grid.empty()) throw ContractViolation("evolve_ode: empty time grid");
  if (!(opts.rel_tol >= 1e-13 && opts.rel_tol <= 1e-3)) {
    throw ContractViolation("evolve_ode: rel_tol must lie in [1e-13, 1e-3]");
  }
  if (!(opts.max_step > 0.0)) throw ContractViolation("evolve_ode: max_step must be positive");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= t_grid[i - 1])) {
      throw ContractViolation("evolve_ode: time grid must be ascending");
    }
  }

  std::vector<State> coarse = detail::rk4_trajectory(rhs, y0, t_grid, opts.max_step, 1);
  double diff = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= opts.max_halvings; ++level) {
    std::vector<State> fine = detail::rk4_trajectory(rhs, y0, t_grid, opts.max_step, 1 << level);
    diff = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
      const double scale = std::max(1.0, detail::max_abs(fine[i]));
      diff = std::max(diff, detail::max_abs(State(fine[i] - coarse[i])) / scale);
    }
    if (!std::isfinite(diff)) break;
    if (diff < opts.rel_tol) return fine;
    coarse = std::move(fine);
  }
  throw ConvergenceError("evolve_ode: step halving did not reach rel_tol (last difference " +
                         std::to_string(diff) + ")");
}

}  // namespace rabi
