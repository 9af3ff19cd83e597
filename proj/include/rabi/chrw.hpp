#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "rabi/model.hpp"
#include "rabi/numerics/roots.hpp"
#include "rabi/time_series.hpp"

namespace rabi {

constexpr int kXiScanPoints = 4000;

/// A (1 - xi) / 2 - omega0 J_1(A xi / omega), whose zeros on [0, 1] fix the CHRW parameter.
double xi_residual(const DriveParams& p, double xi);

/// Every root of xi_residual on [0, 1]. Throws DegenerateInputError for A = 0.
RootSet solve_xi(const DriveParams& p, int scan_points = kXiScanPoints);

struct ChrwSolution {
  double xi = 0.0;
  double A_tilde = 0.0;      // 2 A (1 - xi)
  double Delta_tilde = 0.0;  // J_0(A xi / omega) omega0 - omega
  double Omega_tilde = 0.0;  // sqrt(Delta_tilde^2 + A_tilde^2 / 4)
  double residual = 0.0;     // xi_residual at the root
};

/// Requires a unique root: NoSolutionError for none, AmbiguousSolutionError (carrying the
/// roots) for several.
ChrwSolution chrw_solution(const DriveParams& p);

/// Cosine amplitudes of P1(t) at frequencies 0, Omega~, 2n omega + Omega~, 2n omega - Omega~, 2n omega.
struct ChrwCoefficients {
  double omega = 0.0;
  double Omega_tilde = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  Eigen::VectorXd c2;  // entry n - 1 belongs to n = 1..n_max
  Eigen::VectorXd c3;
  Eigen::VectorXd c4;

  int n_max() const { return static_cast<int>(c2.size()); }
  /// P1(0), which vanishes once the series has converged.
  double closure() const { return c0 + c1 + c2.sum() + c3.sum() + c4.sum(); }
};

/// n_max <= 0 selects ceil(A xi / omega) + 15.
ChrwCoefficients chrw_coefficients(const ChrwSolution& sol, const DriveParams& p, int n_max = 0);

TimeSeries p1_chrw(const ChrwCoefficients& coeffs, std::span<const double> t_grid);

struct SolutionCountMap {
  std::vector<double> omega_axis;
  std::vector<double> A_axis;
  Eigen::MatrixXi counts;  // rows follow omega_axis, columns A_axis
};

/// Root counts over the grid; cells with A = 0 hold 1, the analytic limit.
/// Rows are distributed over hardware threads; the result does not depend on the split.
SolutionCountMap solution_count_map(const std::vector<double>& omega_axis,
                                    const std::vector<double>& A_axis, double omega0 = 1.0,
                                    int scan_points = kXiScanPoints);

/// lo, lo + step, ..., up to hi inclusive (to within step * 1e-9).
std::vector<double> make_axis(double lo, double hi, double step);

}  // namespace rabi
