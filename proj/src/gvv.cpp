#include "rabi/gvv.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "rabi/errors.hpp"
#include "rabi/numerics/bessel.hpp"

namespace rabi {

int default_gvv_terms(const DriveParams& p) {
  return std::max(50, static_cast<int>(std::ceil(2.0 * p.amplitude / p.omega)) + 20);
}

GvvShifts gvv_shifts(const DriveParams& p, int K) {
  p.validate();
  if (K <= 0) K = default_gvv_terms(p);
  const double w0 = p.omega0, w = p.omega;
  const BesselTable J(p.amplitude / w, 2 * K + 1);
  const double j0w0 = J(0) * w0;
  const double guard = 1e-9 * w0;

  auto denominator = [&](double d, int k) {
    if (std::abs(d) < guard) {
      throw MultiphotonResonanceError(
          "gvv_shifts: multiphoton resonance J0 omega0 = (2k +- 1) omega at k = " +
              std::to_string(k),
          k);
    }
    return d;
  };

  GvvShifts s;
  s.K = K;
  for (int k = -K; k <= K; ++k) {
    if (k == 0) continue;
    const double minus = denominator(j0w0 - (2 * k + 1) * w, k);  // J0 omega0 - (2k+1) omega
    const double plus = denominator(j0w0 + (2 * k - 1) * w, k);   // J0 omega0 + (2k-1) omega
    const double even = -2.0 * k * w;
    const double a = J(2 * k + 1) * w0 / 2, b = J(2 * k - 1) * w0 / 2, c = J(2 * k) * w0 / 2;
    s.delta_1p += a * a / minus + c * c / even;
    s.delta_0p += -b * b / plus + c * c / even;
    s.delta_10 += -b * c / plus + a * c / even;
    s.delta_01 += a * c / minus + b * c / even;
  }
  return s;
}

GvvEffective gvv_effective(const DriveParams& p, int K) {
  GvvEffective g;
  g.shifts = gvv_shifts(p, K);
  const auto& s = g.shifts;
  const double w0 = p.omega0, w = p.omega;
  const Eigen::Vector2d j01 = bessel_j01(p.amplitude / w);
  const double J0 = j01[0], J1 = j01[1];

  g.h << J0 * w0 / 2 + s.delta_1p, -J1 * w0 / 2 + s.delta_10,
         -J1 * w0 / 2 + s.delta_01, w - J0 * w0 / 2 + s.delta_0p;

  const double dd = s.delta_1p - s.delta_0p - w;
  g.B = 2.0 * dd * J0 * w0 - 2.0 * (s.delta_10 + s.delta_01) * J1 * w0 + (J0 * J0 + J1 * J1) * w0 * w0;
  const double radicand = 4.0 * s.delta_10 * s.delta_01 + dd * dd + g.B;
  if (radicand < -1e-10 * w0 * w0) {
    throw ConsistencyError("gvv_effective: effective matrix has complex eigenvalues");
  }
  g.Omega = std::sqrt(std::max(0.0, radicand));

  Eigen::EigenSolver<Eigen::Matrix2d> solver(g.h, false);
  const Eigen::Vector2cd ev = solver.eigenvalues();
  g.Omega_eigengap = std::abs(ev[0] - ev[1]);
  if (std::abs(g.Omega - g.Omega_eigengap) > 1e-10 * w0) {
    throw ConsistencyError("gvv_effective: closed form " + std::to_string(g.Omega) +
                           " disagrees with eigengap " + std::to_string(g.Omega_eigengap));
  }
  g.Omega_grwa = std::hypot(w - J0 * w0, J1 * w0);
  return g;
}

FrequencyComb analytic_comb(double base, double omega, int n_max) {
  return make_comb(base, omega, n_max);
}

FloquetMatrix build_floquet_matrix_dut(const DriveParams& p, int truncation) {
  p.validate();
  if (truncation < 1) throw ContractViolation("build_floquet_matrix_dut: requires N >= 1");
  const int N = truncation;
  const Eigen::Index dim = 2 * (2 * N + 1);
  const BesselTable J(p.amplitude / p.omega, 2 * N);
  FloquetMatrix f{N, Frame::dut, Eigen::MatrixXcd::Zero(dim, dim)};
  for (int n = -N; n <= N; ++n) {
    for (int m = -N; m <= N; ++m) {
      const int d = n - m;
      const double c = 0.5 * p.omega0 * J(d);
      const auto r = FloquetMatrix::index(n, 0, N);
      const auto col = FloquetMatrix::index(m, 0, N);
      if (d % 2 == 0) {
        f.matrix(r, col) = c;
        f.matrix(r + 1, col + 1) = -c;
      } else {
        f.matrix(r, col + 1) = c;
        f.matrix(r + 1, col) = -c;
      }
    }
    f.matrix(FloquetMatrix::index(n, 0, N), FloquetMatrix::index(n, 0, N)) += n * p.omega;
    f.matrix(FloquetMatrix::index(n, 1, N), FloquetMatrix::index(n, 1, N)) += n * p.omega;
  }
  return f;
}

double dut_angle(const DriveParams& p, double t) {
  return p.amplitude * std::sin(p.omega * t) / (2.0 * p.omega);
}

Eigen::Matrix2cd dut_frame_unitary(const DriveParams& p, double t) {
  const double th = dut_angle(p, t);
  return std::cos(th) * pauli::identity() + Complex(0.0, std::sin(th)) * pauli::x();
}

}  // namespace rabi
