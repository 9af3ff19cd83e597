#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rabi/errors.hpp"
#include "rabi/floquet.hpp"
#include "rabi/open_system.hpp"

using namespace rabi;

TEST_CASE("rate validation") {
  CHECK_NOTHROW(DecayRates{1.0, 0.2, 0.0, 0.0}.validate());
  CHECK_THROWS_AS((DecayRates{-1.0, 0.0, 0.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((DecayRates{0.0, NAN, 0.0, 0.0}.validate()), DomainError);
}

TEST_CASE("rotated rates at t = 0 are the lab rates") {
  const DecayRates d{1.0, 0.2, 0.3, 0.05};
  const auto r = rotated_rates({1.0, 10.0, 1.0}, d, 0.0);
  CHECK(r.gamma_s1s1 == doctest::Approx(0.2));
  CHECK(r.gamma_s0s0 == doctest::Approx(0.05));
  CHECK(r.Gamma_s1s0 == doctest::Approx(1.0));
  CHECK(r.Gamma_s0s1 == doctest::Approx(0.3));
}

TEST_CASE("rotated rates through the rotation weights") {
  // With a = 2 theta: sin^2 a = 4 zeta^2, cos^4(a/2) = eta^2, sin^4(a/2) = beta^2.
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> W(0.5, 3.0), A(0.0, 10.0), T(0.0, 20.0), R(0.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const DriveParams p{1.0, A(rng), W(rng)};
    const DecayRates d{R(rng), R(rng), R(rng), R(rng)};
    const double t = T(rng);
    const auto r = rotated_rates(p, d, t);
    const auto w = rotation_weights(p, t);
    CHECK(w.beta + w.eta == doctest::Approx(1.0));
    CHECK(w.zeta * w.zeta == doctest::Approx(w.beta * w.eta));
    const double z2 = 4.0 * w.zeta * w.zeta;
    CHECK(r.gamma_s1s1 == doctest::Approx(z2 * (d.Gamma_10 + d.Gamma_01) / 8 + w.eta * w.eta * d.gamma_11 +
                                          w.beta * w.beta * d.gamma_00));
    CHECK(r.Gamma_s0s1 == doctest::Approx(z2 * (d.gamma_11 + d.gamma_00) / 2 + w.beta * w.beta * d.Gamma_10 +
                                          w.eta * w.eta * d.Gamma_01));
    for (double v : {r.gamma_s1s1, r.gamma_s0s0, r.Gamma_s1s0, r.Gamma_s0s1}) CHECK(v >= 0.0);
    // Period pi / omega: sin(omega t) only flips sign, and every rate is even in it.
    const auto r2 = rotated_rates(p, d, t + std::numbers::pi / p.omega);
    CHECK(r2.Gamma_s1s0 == doctest::Approx(r.Gamma_s1s0));
    CHECK(r2.gamma_s0s0 == doctest::Approx(r.gamma_s0s0));
  }
}

TEST_CASE("weak drive leaves the rates nearly untouched; strong drive mixes them") {
  const DecayRates d{1.0, 0.2, 0.0, 0.0};
  const DriveParams weak{1.0, 0.01, 1.0};
  for (double t : {0.3, 1.1, 2.0}) {
    const auto r = rotated_rates(weak, d, t);
    CHECK(std::abs(r.Gamma_s1s0 - 1.0) < 1e-4);
    CHECK(r.Gamma_s0s1 < 1e-4);
  }
  // Around a = pi / 2 the lab decay feeds excitation in the rotating frame.
  const DriveParams strong{1.0, 10.0, 1.0};
  const double t = std::asin(std::numbers::pi / 20.0);
  const auto r = rotated_rates(strong, d, t);
  CHECK(r.Gamma_s0s1 > 0.2);
  CHECK(r.gamma_s1s1 > 0.1);
}

TEST_CASE("frame rotation round trip") {
  const DriveParams p{1.0, 3.0, 0.7};
  const auto rho = DensityMatrix::pure(Eigen::Vector2cd(std::sqrt(0.3), Complex(0.2, std::sqrt(0.66))));
  for (double t : {0.0, 0.9, 4.4}) {
    const auto back = rotate_to_frame(rotate_to_lab(rho, p, t), p, t);
    CHECK((back.rho - rho.rho).norm() < 1e-15);
  }
  CHECK((rotate_to_lab(rho, p, 0.0).rho - rho.rho).norm() == 0.0);
  for (double t : {0.3, 1.7}) {
    const auto s0 = rotate_to_lab(DensityMatrix::ground(), p, t);
    CHECK(s0.trace_deviation() < 1e-15);
    CHECK((s0.rho * s0.rho - s0.rho).norm() < 1e-15);
  }
}

TEST_CASE("undriven decay is exponential") {
  const DriveParams p{1.0, 0.0, 1.0};
  const DecayRates d{0.7, 0.2, 0.0, 0.0};
  const auto t = uniform_grid(0.05, 200);
  const auto traj = evolve_lab_lindblad(p, d, DensityMatrix::excited(), t);
  for (std::size_t k = 0; k < t.size(); ++k) {
    CHECK(std::abs(traj.series.p1[k] - std::exp(-0.7 * t[k])) < 1e-6);
  }
}

TEST_CASE("no dissipation reproduces the Schroedinger equation") {
  const DriveParams p{1.0, 2.0, 0.6};
  const auto t = uniform_grid(p.period() / 50, 50 * 5);
  const auto open = evolve_lab_lindblad(p, {}, DensityMatrix::ground(), t);
  CHECK(rms_difference(open.series, p1_direct(p, t)) < 1e-6);
  const auto r = physicality(open);
  CHECK(r.trace_deviation < 1e-10);
  CHECK(r.min_eigenvalue > -1e-9);
}

TEST_CASE("strongly driven damped qubit stays physical") {
  const DriveParams p{1.0, 10.0, 1.0};
  const DecayRates d{1.0, 0.2, 0.0, 0.0};
  const auto t = uniform_grid(p.period() / 100, 600);
  const auto lab = evolve_lab_lindblad(p, d, DensityMatrix::ground(), t);
  const auto gvv = evolve_gvv_lindblad(p, d, t);
  for (const auto* traj : {&lab, &gvv}) {
    const auto r = physicality(*traj);
    CHECK(r.trace_deviation < 1e-8);
    CHECK(r.min_eigenvalue > -1e-8);
    for (double v : traj->series.p1) {
      CHECK(v >= -1e-8);
      CHECK(v <= 1.0 + 1e-8);
    }
  }
}

TEST_CASE("GVV master equation limits") {
  const DriveParams idle{1.0, 0.0, 0.6};
  const auto t = uniform_grid(0.1, 100);
  const auto g0 = evolve_gvv_lindblad(idle, {1.0, 0.2, 0.0, 0.0}, t);
  for (double v : g0.series.p1) CHECK(std::abs(v) < 1e-12);

  // The two-state GVV block drops the first-order admixture of the other Fourier
  // blocks, which shows up as micromotion of relative size ~A / 8 in P1(t).
  const DecayRates d{0.01, 0.0, 0.0, 0.0};
  double previous = 0.0;
  for (double a : {0.02, 0.05}) {
    const DriveParams weak{1.0, a, 1.0};
    const auto tw = uniform_grid(weak.period() / 40, 40 * 30);
    const auto gvv = evolve_gvv_lindblad(weak, d, tw);
    const auto lab = evolve_lab_lindblad(weak, d, DensityMatrix::ground(), tw);
    const double rms = rms_difference(gvv.series, lab.series);
    CAPTURE(a);
    CHECK(rms < 0.1 * a);
    CHECK(rms > previous);
    previous = rms;
  }
}
