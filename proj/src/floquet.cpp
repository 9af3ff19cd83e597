#include "rabi/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rabi/errors.hpp"
#include "rabi/numerics/ode.hpp"

namespace rabi {

namespace {

constexpr double kEdgeWeight = 1e-12;
constexpr double kClusterTol = 1e-8;
constexpr int kEdgeBlocks = 2;

double circular_distance(double a, double b, double period) {
  const double d = std::fmod(std::abs(a - b), period);
  return std::min(d, period - d);
}

double fold_periodic(double q, double period) {
  double r = q - period * std::floor(q / period + 0.5);
  if (r >= 0.5 * period) r -= period;
  if (r < -0.5 * period) r += period;
  return r;
}

// Eigenpairs whose weight on the outermost Fourier blocks is negligible, ordered
// by |q| so the most central member of each class comes first.
std::vector<Eigen::Index> interior_columns(const EigenDecomposition& eig,
                                           const std::vector<int>& block_of_row, int truncation) {
  const int edge = std::min(kEdgeBlocks, truncation);
  std::vector<Eigen::Index> out;
  for (Eigen::Index j = 0; j < eig.dimension(); ++j) {
    double w = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvectors.rows(); ++i) {
      if (std::abs(block_of_row[i]) > truncation - edge) w += std::norm(eig.eigenvectors(i, j));
    }
    if (w <= kEdgeWeight) out.push_back(j);
  }
  std::stable_sort(out.begin(), out.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(eig.eigenvalues[a]) < std::abs(eig.eigenvalues[b]);
  });
  return out;
}

std::vector<double> cluster(const std::vector<double>& folded, double period, double tol,
                            const char* what) {
  std::vector<double> reps;
  for (double f : folded) {
    const bool known = std::any_of(reps.begin(), reps.end(),
                                   [&](double r) { return circular_distance(f, r, period) <= tol; });
    if (known) continue;
    reps.push_back(f);
    if (reps.size() > 2) {
      throw DiagnosticsError(std::string(what) +
                             ": more than two quasienergy classes; increase the truncation N");
    }
  }
  return reps;
}

// The Floquet matrix conserves the parity of (level + n); diagonalising the
// sector that holds |0, 0> gives quasienergies defined modulo 2 omega.
double sector_comb_gap(const FloquetMatrix& f, double omega) {
  const int N = f.truncation;
  std::vector<Eigen::Index> rows;
  std::vector<int> blocks;
  for (int n = -N; n <= N; ++n) {
    for (int level = 0; level < 2; ++level) {
      if (((level + n) % 2 + 2) % 2 == 1) {
        rows.push_back(FloquetMatrix::index(n, level, N));
        blocks.push_back(n);
      }
    }
  }
  const auto m = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd sub(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) sub(i, j) = f.matrix(rows[i], rows[j]);

  const EigenDecomposition eig = eig_hermitian(sub);
  const auto interior = interior_columns(eig, blocks, N);
  if (interior.empty()) {
    throw DiagnosticsError("quasienergies: no interior eigenvector in the parity sector; "
                           "increase the truncation N");
  }
  std::vector<double> folded;
  for (auto j : interior) folded.push_back(fold_periodic(eig.eigenvalues[j], 2.0 * omega));
  const auto reps = cluster(folded, 2.0 * omega, kClusterTol * omega, "quasienergies (sector)");
  if (reps.size() < 2) return 0.0;
  return fold_to_comb(reps[0] - reps[1], omega);
}

}  // namespace

FloquetMatrix build_floquet_matrix_lab(const DriveParams& p, int truncation) {
  p.validate();
  if (truncation < 1) throw ContractViolation("build_floquet_matrix_lab: requires N >= 1");
  const int N = truncation;
  const Eigen::Index dim = 2 * (2 * N + 1);
  FloquetMatrix f{N, Frame::lab, Eigen::MatrixXcd::Zero(dim, dim)};
  const double c = 0.25 * p.amplitude;
  for (int n = -N; n <= N; ++n) {
    const auto up = FloquetMatrix::index(n, 0, N);
    const auto down = FloquetMatrix::index(n, 1, N);
    f.matrix(up, up) = 0.5 * p.omega0 + n * p.omega;
    f.matrix(down, down) = -0.5 * p.omega0 + n * p.omega;
    if (n < N) {
      const auto up_next = FloquetMatrix::index(n + 1, 0, N);
      const auto down_next = FloquetMatrix::index(n + 1, 1, N);
      f.matrix(up, down_next) = f.matrix(down_next, up) = c;
      f.matrix(down, up_next) = f.matrix(up_next, down) = c;
    }
  }
  return f;
}

double fold_first_zone(double q, double omega) {
  if (!(omega > 0.0)) throw ContractViolation("fold_first_zone: omega must be positive");
  return fold_periodic(q, omega);
}

double fold_to_comb(double f, double omega) {
  if (!(omega > 0.0)) throw ContractViolation("fold_to_comb: omega must be positive");
  const double g = std::fmod(std::abs(f), 2.0 * omega);
  return g > omega ? 2.0 * omega - g : g;
}

double QuasienergySpectrum::replica_residual() const {
  const double a = folded_a, b = folded_b;
  double worst = 0.0;
  for (auto j : interior) {
    const double q = decomposition.eigenvalues[j];
    const double ref = circular_distance(q, a, omega) <= circular_distance(q, b, omega) ? a : b;
    const double m = std::round((q - ref) / omega);
    worst = std::max(worst, std::abs(q - ref - m * omega));
  }
  return worst;
}

QuasienergySpectrum quasienergies(const FloquetMatrix& f, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ContractViolation("quasienergies: omega must be positive");
  }
  const int N = f.truncation;
  if (N < 1 || f.dimension() != 2 * (2 * N + 1) || f.matrix.cols() != f.dimension()) {
    throw ContractViolation("quasienergies: matrix size does not match its truncation");
  }

  QuasienergySpectrum s;
  s.omega = omega;
  s.truncation = N;
  s.decomposition = eig_hermitian(f.matrix);

  std::vector<int> blocks(f.dimension());
  for (Eigen::Index i = 0; i < f.dimension(); ++i) blocks[i] = static_cast<int>(i / 2) - N;
  s.interior = interior_columns(s.decomposition, blocks, N);
  if (s.interior.empty()) {
    throw DiagnosticsError("quasienergies: every eigenvector touches the truncation edge; "
                           "increase the truncation N");
  }

  std::vector<double> folded;
  for (auto j : s.interior) folded.push_back(fold_periodic(s.decomposition.eigenvalues[j], omega));
  auto reps = cluster(folded, omega, kClusterTol * omega, "quasienergies");
  if (reps.size() == 1) reps.push_back(reps.front());
  std::sort(reps.begin(), reps.end());
  s.folded_a = reps[0];
  s.folded_b = reps[1];
  const double d = std::abs(reps[1] - reps[0]);
  s.gap = std::min(d, omega - d);
  s.comb_gap = sector_comb_gap(f, omega);
  std::sort(s.interior.begin(), s.interior.end());
  return s;
}

TimeSeries p1_floquet(const DriveParams& p, int truncation, std::span<const double> t_grid) {
  const FloquetMatrix f = build_floquet_matrix_lab(p, truncation);
  const EigenDecomposition eig = eig_hermitian(f.matrix);
  const int N = truncation;
  const Eigen::Index dim = f.dimension();

  // Overlaps <eps_gamma | 0, 0> and the rows <1, n | eps_gamma>.
  const Eigen::VectorXcd start = eig.eigenvectors.row(FloquetMatrix::index(0, 1, N)).adjoint();
  Eigen::MatrixXcd upper(2 * N + 1, dim);
  for (int n = -N; n <= N; ++n) upper.row(n + N) = eig.eigenvectors.row(FloquetMatrix::index(n, 0, N));

  TimeSeries out;
  out.t.assign(t_grid.begin(), t_grid.end());
  out.p1.reserve(t_grid.size());
  Eigen::VectorXcd w(dim);
  Eigen::VectorXcd fourier(2 * N + 1);
  for (double t : t_grid) {
    for (Eigen::Index g = 0; g < dim; ++g) {
      w[g] = std::polar(1.0, -eig.eigenvalues[g] * t) * start[g];
    }
    // Reduce omega t modulo 2 pi so late times keep the phase accurate.
    const double phase = std::fmod(p.omega * t, 2.0 * std::numbers::pi);
    for (int n = -N; n <= N; ++n) fourier[n + N] = std::polar(1.0, n * phase);
    const Complex amp = fourier.transpose() * (upper * w);
    out.p1.push_back(std::norm(amp));
  }
  return out;
}

TimeSeries p1_direct(const DriveParams& p, std::span<const double> t_grid, const PureState& psi0,
                     double rel_tol) {
  p.validate();
  psi0.validate();
  auto rhs = [&p](double t, const Eigen::Vector2cd& y) -> Eigen::Vector2cd {
    return Complex(0.0, -1.0) * (hamiltonian_lab(p, t) * y);
  };
  OdeOptions opts;
  opts.rel_tol = rel_tol;
  opts.max_step = p.period() / 400.0;
  const auto states = evolve_ode(rhs, psi0.amplitudes, t_grid, opts);

  TimeSeries out;
  out.t.assign(t_grid.begin(), t_grid.end());
  out.p1.reserve(states.size());
  for (const auto& y : states) {
    if (std::abs(y.squaredNorm() - 1.0) > 1e-9) {
      throw ConvergenceError("p1_direct: norm drifted by " +
                             std::to_string(std::abs(y.squaredNorm() - 1.0)));
    }
    out.p1.push_back(std::norm(y[0]));
  }
  return out;
}

FrequencyComb make_comb(double base, double omega, int n_max) {
  if (!(base >= 0.0) || !std::isfinite(base)) throw ContractViolation("make_comb: base must be >= 0");
  if (!(omega > 0.0)) throw ContractViolation("make_comb: omega must be positive");
  if (n_max < 0) throw ContractViolation("make_comb: n_max must be >= 0");

  FrequencyComb comb{base, omega, {}};
  const double tol = 1e-12 * std::max(1.0, omega);
  auto add = [&](double f, std::string label) {
    for (const auto& l : comb.lines)
      if (std::abs(l.frequency - f) <= tol) return;
    comb.lines.push_back({f, std::move(label)});
  };
  for (int n = 0; n <= n_max; ++n) {
    const std::string tag = "2*" + std::to_string(n) + "*omega";
    add(2.0 * n * omega, tag);
    add(2.0 * n * omega + base, tag + "+base");
    add(std::abs(2.0 * n * omega - base), tag + "-base");
  }
  return comb;
}

FrequencyComb numeric_comb(const DriveParams& p, int truncation, int n_max) {
  const auto s = quasienergies(build_floquet_matrix_lab(p, truncation), p.omega);
  return make_comb(s.comb_gap, p.omega, n_max);
}

double distance_to_comb(const FrequencyComb& comb, double f) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& l : comb.lines) best = std::min(best, std::abs(l.frequency - f));
  return best;
}

}  // namespace rabi
