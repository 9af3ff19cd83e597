#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "rabi/model.hpp"
#include "rabi/time_series.hpp"

namespace rabi {

/// Lab-frame Lindblad rates. Population channels enter as (Gamma / 2) D[O] and
/// dephasing channels as gamma D[P], with D[O] rho = 2 O rho O^+ - O^+ O rho - rho O^+ O.
struct DecayRates {
  double Gamma_10 = 0.0;  // |1> -> |0>
  double gamma_11 = 0.0;  // dephasing on |1><1|
  double Gamma_01 = 0.0;  // |0> -> |1>
  double gamma_00 = 0.0;  // dephasing on |0><0|

  /// Throws DomainError unless every rate is finite and non-negative.
  void validate() const;
};

/// Rates seen in the rotating DUT frame at time t.
struct RotatedRates {
  double t = 0.0;
  double gamma_s1s1 = 0.0;
  double gamma_s0s0 = 0.0;
  double Gamma_s1s0 = 0.0;
  double Gamma_s0s1 = 0.0;
};

/// With a = A sin(omega t) / omega:
///   gamma_s1s1 = sin^2(a) (Gamma_10 + Gamma_01) / 8 + cos^4(a/2) gamma_11 + sin^4(a/2) gamma_00
///   gamma_s0s0 = sin^2(a) (Gamma_10 + Gamma_01) / 8 + sin^4(a/2) gamma_11 + cos^4(a/2) gamma_00
///   Gamma_s1s0 = sin^2(a) (gamma_11 + gamma_00) / 2 + cos^4(a/2) Gamma_10 + sin^4(a/2) Gamma_01
///   Gamma_s0s1 = sin^2(a) (gamma_11 + gamma_00) / 2 + sin^4(a/2) Gamma_10 + cos^4(a/2) Gamma_01
RotatedRates rotated_rates(const DriveParams& p, const DecayRates& d, double t);

/// Entries of the frame rotation acting on the jump operators, theta = A sin(omega t) / (2 omega).
struct RotationWeights {
  double zeta = 0.0;  // sin(2 theta) / 2
  double beta = 0.0;  // sin^2(theta)
  double eta = 0.0;   // cos^2(theta)
};

RotationWeights rotation_weights(const DriveParams& p, double t);

/// U rho U^+ with U = cos(theta) I + i sin(theta) sigma_x.
DensityMatrix rotate_to_lab(const DensityMatrix& rho_rot, const DriveParams& p, double t);
/// Inverse of rotate_to_lab.
DensityMatrix rotate_to_frame(const DensityMatrix& rho_lab, const DriveParams& p, double t);

struct LindbladTrajectory {
  TimeSeries series;                  // P1 in the lab basis
  std::vector<DensityMatrix> states;  // lab-basis density matrices on the same grid
};

/// Largest violation of the physicality bounds along a trajectory.
struct PhysicalityReport {
  double trace_deviation = 0.0;
  double hermiticity = 0.0;
  double min_eigenvalue = 1.0;
};

PhysicalityReport physicality(const LindbladTrajectory& traj);

/// Integrates the lab-frame master equation with H(t) = hamiltonian_lab.
LindbladTrajectory evolve_lab_lindblad(const DriveParams& p, const DecayRates& d,
                                       const DensityMatrix& rho0, std::span<const double> t_grid,
                                       double rel_tol = 1e-9);

/// Two-level master equation in the GVV frame: time-independent effective Hamiltonian,
/// rotated jump rates, start in |s'_0>. Each stored state gets the Fourier phase of the
/// |s'_0, 1> block back before rotate_to_lab.
LindbladTrajectory evolve_gvv_lindblad(const DriveParams& p, const DecayRates& d,
                                       std::span<const double> t_grid, int K = 0,
                                       double rel_tol = 1e-9);

}  // namespace rabi
