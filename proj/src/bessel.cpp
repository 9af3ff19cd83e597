#include "rabi/numerics/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rabi/errors.hpp"

namespace rabi {
namespace {

constexpr double kMaxArgument = 1e6;
constexpr int kMaxOrder = 10000;
constexpr double kAsymptoticThreshold = 25.0;
constexpr double kRescale = 1e250;

void check_domain(int n, double x) {
  if (!std::isfinite(x) || std::abs(x) >= kMaxArgument) {
    throw DomainError("bessel_j: argument out of range: " + std::to_string(x));
  }
  if (n <= -kMaxOrder || n >= kMaxOrder) {
    throw DomainError("bessel_j: order out of range: " + std::to_string(n));
  }
}

// Even start order for the backward recurrence, far enough above both the
// highest wanted order and the argument for the minimal solution to dominate.
int miller_start(int highest_order, double x) {
  const double top = std::max(static_cast<double>(highest_order), x);
  int start = static_cast<int>(top + 20.0 + std::sqrt(40.0 * top));
  return start + (start % 2);
}

// J_0..J_M(x) for x > 0 by Miller's algorithm.
Eigen::VectorXd miller_sweep(double x, int max_order) {
  const int start = miller_start(max_order, x);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(max_order + 1);
  double next = 0.0;   // J_{k+1}, unnormalised
  double current = 1.0;  // J_k
  double norm = 0.0;
  for (int k = start; k >= 1; --k) {
    if (k <= max_order) out[k] = current;
    if (k % 2 == 0) norm += 2.0 * current;
    const double prev = 2.0 * k / x * current - next;
    next = current;
    current = prev;
    if (std::abs(current) > kRescale) {
      current /= kRescale;
      next /= kRescale;
      norm /= kRescale;
      out /= kRescale;
    }
  }
  out[0] = current;
  norm += current;
  return out / norm;
}

// Hankel expansion of J_nu for large x (nu = 0 or 1).
double hankel_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0;
  double q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    if (k > 0) term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    if (std::abs(term) > last) break;  // series starts to diverge
    last = std::abs(term);
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
    }
    if (std::abs(term) < 1e-17) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// J_0..J_M(x) for large x and M < x/2, where upward recurrence is stable.
Eigen::VectorXd upward_sweep(double x, int max_order) {
  Eigen::VectorXd out(max_order + 1);
  out[0] = hankel_asymptotic(0, x);
  if (max_order >= 1) out[1] = hankel_asymptotic(1, x);
  for (int k = 1; k < max_order; ++k) out[k + 1] = 2.0 * k / x * out[k] - out[k - 1];
  return out;
}

bool use_upward(int max_order, double x) {
  return x > kAsymptoticThreshold && max_order < 0.5 * x;
}

// J_n(x) for n >= 0, x > 0.
double bessel_positive(int n, double x) {
  return use_upward(n, x) ? upward_sweep(x, n)[n] : miller_sweep(x, n)[n];
}

}  // namespace

double bessel_j(int n, double x) {
  check_domain(n, x);
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2 != 0) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (n % 2 != 0) sign = -sign;
  }
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  return sign * bessel_positive(n, x);
}

Eigen::Vector2d bessel_j01(double x) {
  check_domain(1, x);
  const double ax = std::abs(x);
  const double s = x < 0.0 ? -1.0 : 1.0;
  if (ax == 0.0) return {1.0, 0.0};
  if (ax > kAsymptoticThreshold) {
    return {hankel_asymptotic(0, ax), s * hankel_asymptotic(1, ax)};
  }
  // Same recurrence as miller_sweep, kept allocation-free for the root scans.
  const int start = miller_start(1, ax);
  double next = 0.0, current = 1.0, norm = 0.0, j1 = 0.0;
  for (int k = start; k >= 1; --k) {
    if (k == 1) j1 = current;
    if (k % 2 == 0) norm += 2.0 * current;
    const double prev = 2.0 * k / ax * current - next;
    next = current;
    current = prev;
    if (std::abs(current) > kRescale) {
      current /= kRescale;
      next /= kRescale;
      norm /= kRescale;
      j1 /= kRescale;
    }
  }
  norm += current;
  return {current / norm, s * j1 / norm};
}

BesselTable::BesselTable(double x, int max_order) : x_(x), max_order_(max_order) {
  if (max_order < 0) throw DomainError("BesselTable: negative max_order");
  check_domain(max_order, x);
  const double ax = std::abs(x);
  if (ax == 0.0) {
    nonnegative_ = Eigen::VectorXd::Zero(max_order + 1);
    nonnegative_[0] = 1.0;
    return;
  }
  nonnegative_ = use_upward(max_order, ax) ? upward_sweep(ax, max_order)
                                            : miller_sweep(ax, max_order);
  if (x < 0.0) {
    for (int n = 1; n <= max_order; n += 2) nonnegative_[n] = -nonnegative_[n];
  }
}

double BesselTable::operator()(int n) const {
  if (n < -max_order_ || n > max_order_) {
    throw DomainError("BesselTable: order " + std::to_string(n) + " not stored");
  }
  if (n >= 0) return nonnegative_[n];
  const double v = nonnegative_[-n];
  return (-n) % 2 == 0 ? v : -v;
}

double BesselTable::norm_squared() const {
  return 2.0 * nonnegative_.squaredNorm() - nonnegative_[0] * nonnegative_[0];
}

}  // namespace rabi
