#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rabi/errors.hpp"
#include "rabi/numerics/bessel.hpp"

using rabi::bessel_j;

namespace {

// Ascending power series in long double; fine for x up to ~15.
double series_oracle(int n, double x) {
  const long double h = 0.5L * x;
  long double term = 1.0L;
  for (int k = 1; k <= n; ++k) term *= h / k;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -h * h / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("small orders and arguments agree with the power series") {
  for (int n = 0; n <= 12; ++n) {
    for (double x : {1e-8, 0.01, 0.3, 1.0, 2.5, 5.0, 8.0, 12.0}) {
      CHECK(std::abs(bessel_j(n, x) - series_oracle(n, x)) < 1e-12);
    }
  }
}

TEST_CASE("agrees with std::cyl_bessel_j over the working range") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> xs(0.0, 100.0);
  std::uniform_int_distribution<int> ns(0, 120);
  for (int i = 0; i < 2000; ++i) {
    const double x = xs(rng);
    const int n = ns(rng);
    CAPTURE(n);
    CAPTURE(x);
    CHECK(std::abs(bessel_j(n, x) - std::cyl_bessel_j(static_cast<double>(n), x)) < 1e-12);
  }
}

TEST_CASE("special values and reflection") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(3, 0.0) == 0.0);
  CHECK(bessel_j(-3, 0.0) == 0.0);
  // First zero of J_0.
  CHECK(std::abs(bessel_j(0, 2.404825557695773)) < 1e-14);
  for (double x : {0.7, 4.2, 33.0}) {
    for (int n = 1; n < 9; ++n) {
      const double sign = n % 2 ? -1.0 : 1.0;
      CHECK(bessel_j(-n, x) == doctest::Approx(sign * bessel_j(n, x)));
      CHECK(bessel_j(n, -x) == doctest::Approx(sign * bessel_j(n, x)));
    }
  }
}

TEST_CASE("three-term recurrence holds") {
  for (double x : {0.5, 3.0, 17.0, 26.0, 60.0}) {
    for (int n = 1; n < 40; ++n) {
      const double lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
      CHECK(std::abs(lhs - 2.0 * n / x * bessel_j(n, x)) < 1e-12);
    }
  }
}

TEST_CASE("bessel_j01 matches the general routine") {
  for (double x : {-40.0, -3.0, 0.0, 1e-6, 0.9, 24.9, 25.1, 80.0, 199.0}) {
    const Eigen::Vector2d j = rabi::bessel_j01(x);
    CHECK(j[0] == doctest::Approx(bessel_j(0, x)).epsilon(1e-12));
    CHECK(std::abs(j[1] - bessel_j(1, x)) < 1e-13);
  }
}

TEST_CASE("BesselTable sums to one and matches point values") {
  for (double x : {0.0, 0.4, 6.0, 40.0, -9.5}) {
    const int m = static_cast<int>(std::abs(x)) + 30;
    const rabi::BesselTable t(x, m);
    CHECK(t.norm_squared() == doctest::Approx(1.0).epsilon(1e-13));
    for (int n = -m; n <= m; n += 3) CHECK(std::abs(t(n) - bessel_j(n, x)) < 1e-13);
    CHECK_THROWS_AS(t(m + 1), rabi::DomainError);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_j(0, 1e6), rabi::DomainError);
  CHECK_THROWS_AS(bessel_j(0, std::nan("")), rabi::DomainError);
  CHECK_THROWS_AS(bessel_j(10000, 1.0), rabi::DomainError);
  CHECK_THROWS_AS(rabi::BesselTable(1.0, -1), rabi::DomainError);
}
