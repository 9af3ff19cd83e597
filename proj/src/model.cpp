#include "rabi/model.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

#include "rabi/errors.hpp"

namespace rabi {

namespace pauli {
Eigen::Matrix2cd identity() { return Eigen::Matrix2cd::Identity(); }
Eigen::Matrix2cd x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Eigen::Matrix2cd y() {
  Eigen::Matrix2cd m;
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}
Eigen::Matrix2cd z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
Eigen::Matrix2cd lowering() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(1, 0) = 1.0;
  return m;
}
Eigen::Matrix2cd raising() { return lowering().transpose(); }
Eigen::Matrix2cd excited_projector() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = 1.0;
  return m;
}
Eigen::Matrix2cd ground_projector() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(1, 1) = 1.0;
  return m;
}
}  // namespace pauli

void DriveParams::validate() const {
  if (!std::isfinite(omega0) || !std::isfinite(amplitude) || !std::isfinite(omega)) {
    throw DomainError("DriveParams: non-finite parameter");
  }
  if (!(omega0 > 0.0)) throw DomainError("DriveParams: omega0 must be positive");
  if (!(omega > 0.0)) throw DomainError("DriveParams: omega must be positive");
  if (!(amplitude >= 0.0)) throw DomainError("DriveParams: amplitude must be non-negative");
}

double DriveParams::period() const { return 2.0 * std::numbers::pi / omega; }

DriveParams make_drive(double omega0, double amplitude, double omega) {
  DriveParams p{omega0, amplitude, omega};
  p.validate();
  return p;
}

PureState PureState::excited() { return {Eigen::Vector2cd(1.0, 0.0)}; }
PureState PureState::ground() { return {Eigen::Vector2cd(0.0, 1.0)}; }

void PureState::validate() const {
  if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-12) {
    throw DomainError("PureState: state is not normalised");
  }
}

DensityMatrix DensityMatrix::pure(const Eigen::Vector2cd& psi) { return {psi * psi.adjoint()}; }
DensityMatrix DensityMatrix::excited() { return {pauli::excited_projector()}; }
DensityMatrix DensityMatrix::ground() { return {pauli::ground_projector()}; }

double DensityMatrix::trace_deviation() const { return std::abs(rho.trace() - 1.0); }

double DensityMatrix::hermiticity_residual() const {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const Eigen::Matrix2cd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
  if (hermiticity_residual() > 1e-10) throw DomainError("DensityMatrix: not Hermitian");
  if (trace_deviation() > 1e-10) throw DomainError("DensityMatrix: trace differs from 1");
  if (min_eigenvalue() < -1e-9) throw DomainError("DensityMatrix: negative eigenvalue");
}

Eigen::Matrix2cd hamiltonian_lab(const DriveParams& p, double t) {
  double phase = std::fmod(p.omega * std::fmod(t, p.period()), 2.0 * std::numbers::pi);
  const double drive = 0.5 * p.amplitude * std::cos(phase);
  Eigen::Matrix2cd h;
  h << 0.5 * p.omega0, drive, drive, -0.5 * p.omega0;
  return h;
}

std::vector<double> uniform_grid(double dt, std::size_t n) {
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = dt * static_cast<double>(k);
  return t;
}

double rms_difference(const TimeSeries& a, const TimeSeries& b) {
  if (a.p1.size() != b.p1.size() || a.p1.empty()) {
    throw ContractViolation("rms_difference: series lengths differ or are empty");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.p1.size(); ++i) {
    const double d = a.p1[i] - b.p1[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(a.p1.size()));
}

}  // namespace rabi
