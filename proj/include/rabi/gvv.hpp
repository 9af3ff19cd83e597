#pragma once

#include <Eigen/Core>

#include "rabi/floquet.hpp"
#include "rabi/model.hpp"

namespace rabi {

struct GvvShifts {
  double delta_1p = 0.0;
  double delta_0p = 0.0;
  double delta_10 = 0.0;
  double delta_01 = 0.0;
  int K = 0;
};

/// max(50, ceil(2 A / omega) + 20)
int default_gvv_terms(const DriveParams& p);

/// Second-order shifts summed over k in [-K, K] \ {0} with Bessel argument A / omega.
/// K <= 0 selects default_gvv_terms. A denominator J_0 omega0 -+ (2k +- 1) omega below
/// 1e-9 omega0 raises MultiphotonResonanceError carrying k.
GvvShifts gvv_shifts(const DriveParams& p, int K = 0);

struct GvvEffective {
  GvvShifts shifts;
  Eigen::Matrix2d h;  // basis (|s'_1, 0>, |s'_0, 1>)
  double B = 0.0;
  double Omega = 0.0;           // closed form
  double Omega_eigengap = 0.0;  // |lambda_1 - lambda_2| of h
  double Omega_grwa = 0.0;      // first order, no shifts
};

/// Throws ConsistencyError when the closed form and the eigengap of h differ by more
/// than 1e-10 omega0.
GvvEffective gvv_effective(const DriveParams& p, int K = 0);

/// Lines {2n omega} and {|+-base + 2n omega|}, n = 0..n_max.
FrequencyComb analytic_comb(double base, double omega, int n_max);

/// Floquet matrix of the DUT-frame Hamiltonian. Block (n, m) is
/// (omega0/2) J_{n-m}(A/omega) times sigma_z for even n - m and i sigma_y for odd,
/// plus n omega on the diagonal.
FloquetMatrix build_floquet_matrix_dut(const DriveParams& p, int truncation = kDefaultTruncation);

/// Half the DUT rotation angle, A sin(omega t) / (2 omega).
double dut_angle(const DriveParams& p, double t);

/// cos(theta) I + i sin(theta) sigma_x: columns are |s'_1(t)>, |s'_0(t)> in the lab basis.
Eigen::Matrix2cd dut_frame_unitary(const DriveParams& p, double t);

}  // namespace rabi
