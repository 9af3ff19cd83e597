#include "rabi/numerics/eig.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>

#include "rabi/errors.hpp"

namespace rabi {

EigenDecomposition eig_hermitian(const Eigen::MatrixXcd& h) {
  if (h.rows() == 0 || h.rows() != h.cols()) {
    throw ContractViolation("eig_hermitian: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-10 * scale)) {
    throw ContractViolation("eig_hermitian: matrix is not Hermitian");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eig_hermitian: eigensolver did not converge");
  }

  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index j = 0; j < out.eigenvectors.cols(); ++j) {
    auto col = out.eigenvectors.col(j);
    const double biggest = col.cwiseAbs().maxCoeff();
    Eigen::Index pivot = 0;
    while (std::abs(col[pivot]) < biggest * (1.0 - 1e-12)) ++pivot;
    const std::complex<double> phase = col[pivot] / std::abs(col[pivot]);
    col *= std::conj(phase);
    col[pivot] = std::abs(col[pivot]);
  }
  return out;
}

}  // namespace rabi
