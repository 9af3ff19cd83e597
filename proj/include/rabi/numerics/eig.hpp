#pragma once

#include <Eigen/Core>

namespace rabi {

/// Spectrum of a Hermitian matrix; eigenvalues ascending, eigenvectors in columns.
///
/// Each eigenvector is scaled so that its largest-magnitude component (the
/// first one, on ties) is real and positive, which makes results bit-stable
/// across runs.
struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;

  Eigen::Index dimension() const { return eigenvalues.size(); }
};

/// Throws ContractViolation when ||H - H^dagger||_max exceeds 1e-10 max(1, ||H||_max)
/// or H is empty or non-square.
EigenDecomposition eig_hermitian(const Eigen::MatrixXcd& h);

/// Real symmetric convenience overload.
inline EigenDecomposition eig_hermitian(const Eigen::MatrixXd& h) {
  return eig_hermitian(Eigen::MatrixXcd(h.cast<std::complex<double>>()));
}

}  // namespace rabi
