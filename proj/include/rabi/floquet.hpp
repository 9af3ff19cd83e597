#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "rabi/model.hpp"
#include "rabi/numerics/eig.hpp"
#include "rabi/time_series.hpp"

namespace rabi {

constexpr int kDefaultTruncation = 30;

enum class Frame { lab, dut };

/// Truncated Floquet matrix over Fourier indices n in [-N, N].
///
/// Row/column 2 (n + N) + level holds |level, n>, with level 0 the upper
/// state (|1> in the lab frame, |s'_1> in the DUT frame) and level 1 the lower.
struct FloquetMatrix {
  int truncation = 0;
  Frame frame = Frame::lab;
  Eigen::MatrixXcd matrix;

  Eigen::Index dimension() const { return matrix.rows(); }
  static Eigen::Index index(int n, int level, int truncation) {
    return 2 * static_cast<Eigen::Index>(n + truncation) + level;
  }
};

/// Diagonal blocks diag(omega0/2, -omega0/2) + n omega, (A/4) sigma_x between neighbouring blocks.
FloquetMatrix build_floquet_matrix_lab(const DriveParams& p, int truncation = kDefaultTruncation);

/// Folds q into the first zone [-omega/2, omega/2).
double fold_first_zone(double q, double omega);

/// Folds a frequency into the comb convention: the line set {2n omega, 2n omega +- f}
/// only depends on f modulo 2 omega and up to sign, so f is mapped into [0, omega].
double fold_to_comb(double f, double omega);

struct QuasienergySpectrum {
  double omega = 0.0;
  int truncation = 0;
  EigenDecomposition decomposition;   // raw eigenvalues q and eigenvectors
  std::vector<Eigen::Index> interior;  // eigenpairs unaffected by the truncation edge
  double folded_a = 0.0;               // the two classes in [-omega/2, omega/2), a <= b
  double folded_b = 0.0;
  /// |q_a - q_b| folded into [0, omega/2].
  double gap = 0.0;
  /// Quasienergy difference resolved within one generalized-parity sector
  /// (period 2 omega), folded into [0, omega]. The spectral lines of P1(t)
  /// sit exactly at {2n omega, 2n omega +- comb_gap}.
  double comb_gap = 0.0;

  /// max over interior eigenvalues of |q - q_class - m omega| for the nearest integer m.
  double replica_residual() const;
};

/// Diagonalises F, selects the interior eigenpairs (weight <= 1e-12 in the two outermost
/// Fourier blocks on either side), and clusters their folded values into two classes.
///
/// Throws DiagnosticsError when no interior eigenpair survives or more than two
/// classes appear; both mean the truncation is too small.
QuasienergySpectrum quasienergies(const FloquetMatrix& f, double omega);

/// P1(t) for the initial state |0>, summed over Fourier blocks with the phase
/// e^{i n omega t} that carries each block back to the time domain.
TimeSeries p1_floquet(const DriveParams& p, int truncation, std::span<const double> t_grid);

/// Direct RK4 integration of the Schroedinger equation (step <= T/400 before halving).
/// Throws ConvergenceError if the norm drifts by more than 1e-9.
TimeSeries p1_direct(const DriveParams& p, std::span<const double> t_grid,
                     const PureState& psi0 = PureState::ground(), double rel_tol = 1e-10);

struct CombLine {
  double frequency;  // angular, >= 0
  std::string label;
};

struct FrequencyComb {
  double base = 0.0;
  double omega = 0.0;
  std::vector<CombLine> lines;
};

/// Lines 2n omega and |2n omega +- base| for n = 0..n_max; coincident lines are kept once.
FrequencyComb make_comb(double base, double omega, int n_max);

/// Comb built on the numerical comb_gap of the lab-frame Floquet matrix.
FrequencyComb numeric_comb(const DriveParams& p, int truncation, int n_max);

/// Distance from f to the nearest line of the comb.
double distance_to_comb(const FrequencyComb& comb, double f);

}  // namespace rabi
