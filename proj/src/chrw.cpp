#include "rabi/chrw.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <string>
#include <thread>

#include "rabi/errors.hpp"
#include "rabi/numerics/bessel.hpp"

namespace rabi {

double xi_residual(const DriveParams& p, double xi) {
  return 0.5 * p.amplitude * (1.0 - xi) - p.omega0 * bessel_j01(p.amplitude * xi / p.omega)[1];
}

RootSet solve_xi(const DriveParams& p, int scan_points) {
  p.validate();
  if (p.amplitude == 0.0) {
    throw DegenerateInputError("solve_xi: A = 0, the CHRW condition is degenerate");
  }
  return find_roots([&p](double xi) { return xi_residual(p, xi); }, 0.0, 1.0, scan_points, 1e-12);
}

ChrwSolution chrw_solution(const DriveParams& p) {
  const RootSet roots = solve_xi(p);
  if (roots.empty()) {
    throw NoSolutionError("chrw_solution: no xi in [0, 1] for A = " + std::to_string(p.amplitude) +
                          ", omega = " + std::to_string(p.omega));
  }
  if (roots.size() > 1) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "chrw_solution: " << roots.size() << " roots for xi:";
    for (double r : roots.roots) msg << ' ' << r;
    throw AmbiguousSolutionError(msg.str(), roots.roots);
  }
  ChrwSolution s;
  s.xi = roots.roots.front();
  s.A_tilde = 2.0 * p.amplitude * (1.0 - s.xi);
  s.Delta_tilde = bessel_j01(p.amplitude * s.xi / p.omega)[0] * p.omega0 - p.omega;
  s.Omega_tilde = std::hypot(s.Delta_tilde, 0.5 * s.A_tilde);
  s.residual = xi_residual(p, s.xi);
  return s;
}

ChrwCoefficients chrw_coefficients(const ChrwSolution& sol, const DriveParams& p, int n_max) {
  p.validate();
  const double x = p.amplitude * sol.xi / p.omega;
  if (n_max <= 0) n_max = static_cast<int>(std::ceil(x)) + 15;
  const double At = sol.A_tilde, Dt = sol.Delta_tilde, Om = sol.Omega_tilde;
  if (!(Om > 0.0)) throw DegenerateInputError("chrw_coefficients: Omega~ vanishes");

  const BesselTable J(x, 2 * n_max + 1);
  const double om2 = Om * Om;
  ChrwCoefficients c;
  c.omega = p.omega;
  c.Omega_tilde = Om;
  c.c0 = 0.5 - Dt * Dt / (2.0 * om2) * J(0) + Dt * At / (4.0 * om2) * J(1);
  c.c1 = -At * At / (8.0 * om2) * J(0) - Dt * At / (4.0 * om2) * J(1);
  c.c2.resize(n_max);
  c.c3.resize(n_max);
  c.c4.resize(n_max);
  for (int n = 1; n <= n_max; ++n) {
    // n omega / (A xi) = n / x; J_2n(x) / x stays finite as x -> 0.
    const double j2n_over_x = x > 0.0 ? J(2 * n) / x : 0.0;
    const double mixed = n * At / (2.0 * Om) * j2n_over_x;
    const double odd = Dt * At / (8.0 * om2) * (J(2 * n - 1) - J(2 * n + 1));
    c.c2[n - 1] = -At * At / (8.0 * om2) * J(2 * n) - mixed + odd;
    c.c3[n - 1] = -At * At / (8.0 * om2) * J(2 * n) + mixed + odd;
    c.c4[n - 1] = Dt * At / (4.0 * om2) * (J(2 * n + 1) - J(2 * n - 1)) - Dt * Dt / om2 * J(2 * n);
  }
  return c;
}

TimeSeries p1_chrw(const ChrwCoefficients& c, std::span<const double> t_grid) {
  TimeSeries out;
  out.t.assign(t_grid.begin(), t_grid.end());
  out.p1.reserve(t_grid.size());
  for (double t : t_grid) {
    double v = c.c0 + c.c1 * std::cos(c.Omega_tilde * t);
    for (int n = 1; n <= c.n_max(); ++n) {
      const double base = 2.0 * n * c.omega * t;
      v += c.c2[n - 1] * std::cos(base + c.Omega_tilde * t) +
           c.c3[n - 1] * std::cos(base - c.Omega_tilde * t) + c.c4[n - 1] * std::cos(base);
    }
    out.p1.push_back(v);
  }
  return out;
}

SolutionCountMap solution_count_map(const std::vector<double>& omega_axis,
                                    const std::vector<double>& A_axis, double omega0,
                                    int scan_points) {
  for (double w : omega_axis)
    if (!(w > 0.0)) throw DomainError("solution_count_map: omega values must be positive");
  for (double a : A_axis)
    if (!(a >= 0.0)) throw DomainError("solution_count_map: A values must be non-negative");

  SolutionCountMap map{omega_axis, A_axis,
                       Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(omega_axis.size()),
                                             static_cast<Eigen::Index>(A_axis.size()))};
  const auto rows = static_cast<Eigen::Index>(omega_axis.size());
  auto fill_rows = [&](Eigen::Index first, Eigen::Index stride) {
    for (Eigen::Index i = first; i < rows; i += stride) {
      for (Eigen::Index j = 0; j < map.counts.cols(); ++j) {
        const DriveParams p{omega0, A_axis[j], omega_axis[i]};
        map.counts(i, j) =
            p.amplitude == 0.0 ? 1 : static_cast<int>(solve_xi(p, scan_points).size());
      }
    }
  };

  const auto workers = static_cast<Eigen::Index>(
      std::clamp<unsigned>(std::thread::hardware_concurrency(), 1u, 64u));
  if (workers == 1 || rows < 2) {
    fill_rows(0, 1);
    return map;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (Eigen::Index w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        fill_rows(w, workers);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return map;
}

std::vector<double> make_axis(double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(step > 0.0) || !(hi >= lo)) {
    throw DomainError("make_axis: need finite lo <= hi and step > 0");
  }
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  if (n > 10'000'000) throw DomainError("make_axis: too many points");
  std::vector<double> axis;
  axis.reserve(n + 1);
  for (long k = 0; k <= n; ++k) axis.push_back(lo + static_cast<double>(k) * step);
  return axis;
}

}  // namespace rabi
