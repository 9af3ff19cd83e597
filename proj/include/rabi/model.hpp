#pragma once

#include <Eigen/Core>
#include <complex>

#include "rabi/time_series.hpp"

namespace rabi {

using Complex = std::complex<double>;

// Two-level matrices use the basis ordering (|1>, |0>) throughout: index 0 is
// the excited state, so sigma_z = diag(1, -1) and |1><1| is the (0, 0) entry.
namespace pauli {
Eigen::Matrix2cd identity();
Eigen::Matrix2cd x();
Eigen::Matrix2cd y();
Eigen::Matrix2cd z();
/// |0><1|, the lowering operator.
Eigen::Matrix2cd lowering();
/// |1><0|
Eigen::Matrix2cd raising();
/// |1><1|
Eigen::Matrix2cd excited_projector();
/// |0><0|
Eigen::Matrix2cd ground_projector();
}  // namespace pauli

/// The closed Rabi model H(t) = (omega0/2) sigma_z + (A/2) cos(omega t) sigma_x.
struct DriveParams {
  double omega0 = 1.0;
  double amplitude = 0.0;
  double omega = 1.0;

  /// Throws DomainError unless everything is finite, omega0 > 0, omega > 0, A >= 0.
  void validate() const;
  double period() const;
};

/// Validated constructor.
DriveParams make_drive(double omega0, double amplitude, double omega);

struct PureState {
  Eigen::Vector2cd amplitudes;  // (c1, c0)

  static PureState excited();
  static PureState ground();
  /// Throws DomainError unless |c0|^2 + |c1|^2 = 1 within 1e-12.
  void validate() const;
  double p1() const { return std::norm(amplitudes[0]); }
};

struct DensityMatrix {
  Eigen::Matrix2cd rho;

  static DensityMatrix pure(const Eigen::Vector2cd& psi);
  static DensityMatrix excited();
  static DensityMatrix ground();

  double trace_deviation() const;
  double hermiticity_residual() const;
  double min_eigenvalue() const;
  double p1() const { return rho(0, 0).real(); }
  /// Throws DomainError unless Hermitian (1e-10), unit trace (1e-10) and eigenvalues >= -1e-9.
  void validate() const;
};

/// Lab-frame Hamiltonian; the cosine phase is reduced modulo 2 pi so H(t) and H(t + T) agree.
Eigen::Matrix2cd hamiltonian_lab(const DriveParams& p, double t);

}  // namespace rabi
