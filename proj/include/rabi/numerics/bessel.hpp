#pragma once

#include <Eigen/Core>

namespace rabi {

/// Integer-order Bessel function of the first kind J_n(x).
///
/// Orders above the argument use Miller's backward recurrence normalised by
/// J_0 + 2 sum J_2k = 1. For x > 25 and n below the argument, J_0 and J_1 come
/// from the Hankel asymptotic expansion and are carried upward. Absolute
/// accuracy is better than 1e-12 for |x| <= 100.
///
/// Throws DomainError for |x| >= 1e6, |n| >= 1e4 or non-finite x.
double bessel_j(int n, double x);

/// J_0(x) and J_1(x) together; the hot path of the CHRW root scan.
Eigen::Vector2d bessel_j01(double x);

/// J_n(x) for every n in [-M, M], filled from a single recurrence sweep.
class BesselTable {
 public:
  BesselTable(double x, int max_order);

  double argument() const { return x_; }
  int max_order() const { return max_order_; }

  /// J_n(x); n must lie in [-max_order, max_order].
  double operator()(int n) const;

  /// Sum of J_n(x)^2 over the stored orders (1 minus the truncated tail).
  double norm_squared() const;

 private:
  double x_;
  int max_order_;
  Eigen::VectorXd nonnegative_;  // J_0 .. J_M
};

}  // namespace rabi
