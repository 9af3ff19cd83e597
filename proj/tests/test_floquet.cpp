#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "rabi/errors.hpp"
#include "rabi/floquet.hpp"
#include "rabi/numerics/ode.hpp"
#include "rabi/numerics/spectrum.hpp"

using namespace rabi;

namespace {

constexpr double kPi = std::numbers::pi;

// Time-domain oracle for the comb gap. H(t + T/2) = sigma_z H(t) sigma_z, so the
// one-period propagator is (sigma_z U(T/2))^2; the eigenphases of sigma_z U(T/2)
// are quasienergies modulo 2 omega, the period of the lines in P1(t).
double propagator_comb_gap(const DriveParams& p) {
  const double half = 0.5 * p.period();
  const std::vector<double> grid{0.0, half};
  auto rhs = [&p](double t, const Eigen::Matrix2cd& u) -> Eigen::Matrix2cd {
    return Complex(0.0, -1.0) * hamiltonian_lab(p, t) * u;
  };
  OdeOptions opts;
  opts.rel_tol = 1e-13;
  opts.max_step = p.period() / 2000.0;
  const Eigen::Matrix2cd u = evolve_ode(rhs, Eigen::Matrix2cd(Eigen::Matrix2cd::Identity()), grid, opts).back();
  const Eigen::Matrix2cd f = pauli::z() * u;
  const Eigen::Vector2cd lambda = Eigen::ComplexEigenSolver<Eigen::Matrix2cd>(f).eigenvalues();
  const double mu0 = -std::arg(lambda[0]) / half;
  const double mu1 = -std::arg(lambda[1]) / half;
  return fold_to_comb(mu0 - mu1, p.omega);
}

std::vector<double> periods_grid(const DriveParams& p, int periods, int per_period) {
  return uniform_grid(p.period() / per_period, static_cast<std::size_t>(periods * per_period));
}

}  // namespace

TEST_CASE("A = 0, N = 1 gives the bare diagonal") {
  const DriveParams p{1.0, 0.0, 0.6};
  const FloquetMatrix f = build_floquet_matrix_lab(p, 1);
  REQUIRE(f.dimension() == 6);
  CHECK(f.frame == Frame::lab);
  Eigen::VectorXd expected(6);
  expected << 0.5 - 0.6, -0.5 - 0.6, 0.5, -0.5, 0.5 + 0.6, -0.5 + 0.6;
  CHECK((f.matrix.diagonal().real() - expected).norm() < 1e-15);
  CHECK((f.matrix - Eigen::MatrixXcd(f.matrix.diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("lab matrix: exact Hermiticity and the nearest-neighbour coupling pattern") {
  const DriveParams p{1.0, 2.6, 0.8};
  const FloquetMatrix f = build_floquet_matrix_lab(p, 5);
  CHECK((f.matrix - f.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  const int N = 5;
  for (int n = -N; n <= N; ++n) {
    for (int m = -N; m <= N; ++m) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const Complex v = f.matrix(FloquetMatrix::index(n, a, N), FloquetMatrix::index(m, b, N));
          if (n == m && a == b) {
            CHECK(v.real() == doctest::Approx((a == 0 ? 0.5 : -0.5) + n * p.omega));
          } else if (std::abs(n - m) == 1 && a != b) {
            CHECK(v.real() == doctest::Approx(p.amplitude / 4));
          } else {
            CHECK(v == Complex(0.0));
          }
        }
      }
    }
  }
  CHECK_THROWS_AS(build_floquet_matrix_lab(p, 0), ContractViolation);
}

TEST_CASE("A = 0 folds the bare levels") {
  const DriveParams p{1.0, 0.0, 0.6};
  const auto s = quasienergies(build_floquet_matrix_lab(p), p.omega);
  const double a = fold_first_zone(0.5, 0.6), b = fold_first_zone(-0.5, 0.6);
  CHECK(s.folded_a == doctest::Approx(std::min(a, b)));
  CHECK(s.folded_b == doctest::Approx(std::max(a, b)));
  CHECK(s.gap == doctest::Approx(0.2));
}

TEST_CASE("folding conventions") {
  CHECK(fold_first_zone(0.3, 1.0) == doctest::Approx(0.3));
  CHECK(fold_first_zone(0.5, 1.0) == doctest::Approx(-0.5));  // half-open zone
  CHECK(fold_first_zone(-0.5, 1.0) == doctest::Approx(-0.5));
  CHECK(fold_first_zone(7.25, 1.0) == doctest::Approx(0.25));
  CHECK(fold_to_comb(0.3, 1.0) == doctest::Approx(0.3));
  CHECK(fold_to_comb(1.7, 1.0) == doctest::Approx(0.3));
  CHECK(fold_to_comb(-2.3, 1.0) == doctest::Approx(0.3));
  CHECK(fold_to_comb(1.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("interior replicas are spaced by omega and the gap lies in [0, omega/2]") {
  for (double w : {0.5, 0.6, 1.0, 2.2, 3.0}) {
    for (double a : {0.0, 0.7, 3.0, 6.5, 10.0}) {
      const DriveParams p{1.0, a, w};
      const auto s = quasienergies(build_floquet_matrix_lab(p), w);
      CAPTURE(w);
      CAPTURE(a);
      CHECK(s.replica_residual() <= 1e-9 * w);
      CHECK(s.gap >= 0.0);
      CHECK(s.gap <= 0.5 * w);
      CHECK(s.comb_gap >= 0.0);
      CHECK(s.comb_gap <= w);
      // The comb gap reduces to the zone gap once folded modulo omega.
      CHECK(std::min(s.comb_gap, w - s.comb_gap) == doctest::Approx(s.gap).epsilon(1e-8));
      CHECK(s.interior.size() > 10);
    }
  }
}

TEST_CASE("truncation convergence: N = 30 against N = 40") {
  for (double w = 0.5; w <= 3.0 + 1e-9; w += 0.5) {
    for (double a = 0.0; a <= 10.0 + 1e-9; a += 2.5) {
      const DriveParams p{1.0, a, w};
      const auto s30 = quasienergies(build_floquet_matrix_lab(p, 30), w);
      const auto s40 = quasienergies(build_floquet_matrix_lab(p, 40), w);
      CAPTURE(w);
      CAPTURE(a);
      CHECK(std::abs(s30.gap - s40.gap) <= 1e-8);
      CHECK(std::abs(s30.comb_gap - s40.comb_gap) <= 1e-8);
    }
  }
}

TEST_CASE("too small a truncation is diagnosed") {
  const DriveParams p{1.0, 10.0, 0.5};
  CHECK_THROWS_AS(quasienergies(build_floquet_matrix_lab(p, 2), p.omega), DiagnosticsError);
  CHECK_THROWS_AS(quasienergies(build_floquet_matrix_lab(p, 2), -1.0), ContractViolation);
}

TEST_CASE("comb gap agrees with the half-period propagator oracle") {
  for (auto [w, a] : {std::pair{0.6, 3.0}, {1.0, 1.0}, {0.6, 4.18}, {2.0, 7.0}, {1.3, 0.2}}) {
    const DriveParams p{1.0, a, w};
    const auto s = quasienergies(build_floquet_matrix_lab(p), w);
    CAPTURE(w);
    CAPTURE(a);
    CHECK(std::abs(s.comb_gap - propagator_comb_gap(p)) <= 1e-6);
  }
}

TEST_CASE("p1_floquet: trivial cases") {
  const DriveParams p0{1.0, 0.0, 0.8};
  const auto t = periods_grid(p0, 3, 40);
  for (double v : p1_floquet(p0, 30, t).p1) CHECK(std::abs(v) < 1e-14);
  const DriveParams p{1.0, 2.0, 0.6};
  CHECK(std::abs(p1_floquet(p, 30, t).p1.front()) < 1e-8);
}

TEST_CASE("p1_floquet matches direct integration") {
  for (auto [w, a] : {std::pair{1.0, 0.5}, {0.6, 2.0}, {2.5, 9.0}}) {
    const DriveParams p{1.0, a, w};
    const auto t = periods_grid(p, 20, 50);
    const auto fl = p1_floquet(p, 30, t);
    const auto di = p1_direct(p, t);
    CAPTURE(w);
    CAPTURE(a);
    CHECK(rms_difference(fl, di) <= 1e-6);
    for (double v : fl.p1) {
      CHECK(v >= -1e-9);
      CHECK(v <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("p1_direct: static and weak resonant limits") {
  const DriveParams p0{1.0, 0.0, 1.0};
  const auto t = periods_grid(p0, 5, 20);
  for (double v : p1_direct(p0, t).p1) CHECK(v == doctest::Approx(0.0).epsilon(1e-15).scale(1));
  for (double v : p1_direct(p0, t, PureState::excited()).p1) CHECK(std::abs(v - 1.0) < 1e-12);

  // RWA: P1 = sin^2(A t / 4), amplitude 1, angular frequency A / 2.
  const DriveParams p{1.0, 0.02, 1.0};
  const auto tt = uniform_grid(p.period() / 20, 20 * 260);
  const auto s = p1_direct(p, tt);
  const auto top = std::max_element(s.p1.begin(), s.p1.end());
  CHECK(*top == doctest::Approx(1.0).epsilon(0.01));
  const double t_peak = tt[static_cast<std::size_t>(top - s.p1.begin())];
  const double freq = 2.0 * kPi / (2.0 * t_peak);  // first maximum at half a Rabi period
  CHECK(freq == doctest::Approx(0.5 * p.amplitude).epsilon(0.01));

  const double rabi_period = 2.0 * kPi / (0.5 * p.amplitude);
  const auto one = uniform_grid(rabi_period / 2000, 2000);
  const auto r = p1_direct(p, one);
  // The counter-rotating term adds a 2 omega ripple of height ~A / (4 omega) that the
  // RWA curve cannot follow, so the agreement is measured in RMS.
  TimeSeries rwa{one, {}};
  for (double t : one) rwa.p1.push_back(std::pow(std::sin(p.amplitude * t / 4), 2));
  CHECK(rms_difference(r, rwa) <= 2e-3);
}

TEST_CASE("make_comb arithmetic") {
  const auto c = make_comb(0.3, 1.0, 1);
  std::set<double> f;
  for (const auto& l : c.lines) f.insert(std::round(l.frequency * 1e9) / 1e9);
  CHECK(f == std::set<double>{0.0, 0.3, 1.7, 2.0, 2.3});
  std::set<std::string> labels;
  for (const auto& l : c.lines) labels.insert(l.label);
  CHECK(labels.size() == c.lines.size());

  const auto flat = make_comb(0.0, 0.6, 3);
  REQUIRE(flat.lines.size() == 4);
  for (int n = 0; n < 4; ++n) CHECK(flat.lines[n].frequency == doctest::Approx(1.2 * n));

  const auto single = make_comb(0.25, 0.6, 0);
  REQUIRE(single.lines.size() == 2);
  CHECK(single.lines[0].frequency == 0.0);
  CHECK(single.lines[1].frequency == 0.25);
  CHECK(distance_to_comb(c, 1.65) == doctest::Approx(0.05));
  CHECK_THROWS_AS(make_comb(-0.1, 1.0, 1), ContractViolation);
}

TEST_CASE("spectral peaks of P1(t) sit on the numeric comb") {
  for (auto [w, a] : {std::pair{0.6, 2.0}, {1.0, 10.0}}) {
    const DriveParams p{1.0, a, w};
    const auto t = uniform_grid(p.period() / 64, (1 << 14) - 1);
    const auto series = p1_floquet(p, 30, t);
    const auto peaks = dominant_peaks(series);
    const double bin = 2.0 * kPi * spectral_bin_width(series);
    const auto comb = numeric_comb(p, 30, 17);
    REQUIRE(!peaks.empty());
    for (const auto& pk : peaks) CHECK(distance_to_comb(comb, 2.0 * kPi * pk.frequency) <= bin);
    if (a == 10.0) {
      // Deep-strong drive: the strongest line is an even harmonic of the drive.
      const double f = 2.0 * kPi * peaks.front().frequency;
      const double n = std::round(f / (2.0 * w));
      CHECK(n >= 1.0);
      CHECK(std::abs(f - 2.0 * n * w) <= bin);
    }
  }
}
