#include "rabi/open_system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rabi/errors.hpp"
#include "rabi/gvv.hpp"
#include "rabi/numerics/ode.hpp"

namespace rabi {

namespace {

using Bloch = Eigen::Vector4d;  // (rho_11, rho_00, Re rho_10, Im rho_10) in the (|1>, |0>) basis

Eigen::Matrix2cd to_matrix(const Bloch& y) {
  Eigen::Matrix2cd rho;
  rho(0, 0) = y[0];
  rho(1, 1) = y[1];
  rho(0, 1) = Complex(y[2], y[3]);
  rho(1, 0) = Complex(y[2], -y[3]);
  return rho;
}

Bloch to_bloch(const Eigen::Matrix2cd& rho) {
  return {rho(0, 0).real(), rho(1, 1).real(), rho(0, 1).real(), rho(0, 1).imag()};
}

Eigen::Matrix2cd dissipator(const Eigen::Matrix2cd& o, const Eigen::Matrix2cd& rho) {
  const Eigen::Matrix2cd od = o.adjoint();
  const Eigen::Matrix2cd n = od * o;
  return 2.0 * o * rho * od - n * rho - rho * n;
}

struct Channels {
  double lower = 0.0;  // rate in front of D[|lower><upper|], already halved
  double raise = 0.0;
  double dephase_upper = 0.0;
  double dephase_lower = 0.0;
};

Eigen::Matrix2cd lindblad_rhs(const Eigen::Matrix2cd& h, const Channels& c,
                              const Eigen::Matrix2cd& rho) {
  static const Eigen::Matrix2cd lo = pauli::lowering();
  static const Eigen::Matrix2cd hi = pauli::raising();
  static const Eigen::Matrix2cd pu = pauli::excited_projector();
  static const Eigen::Matrix2cd pl = pauli::ground_projector();
  Eigen::Matrix2cd out = Complex(0.0, -1.0) * (h * rho - rho * h);
  if (c.lower != 0.0) out += c.lower * dissipator(lo, rho);
  if (c.raise != 0.0) out += c.raise * dissipator(hi, rho);
  if (c.dephase_upper != 0.0) out += c.dephase_upper * dissipator(pu, rho);
  if (c.dephase_lower != 0.0) out += c.dephase_lower * dissipator(pl, rho);
  return out;
}

template <typename Rhs>
std::vector<Bloch> integrate(Rhs&& rhs, const Eigen::Matrix2cd& rho0, std::span<const double> t_grid,
                             double period, double rel_tol) {
  OdeOptions opts;
  opts.rel_tol = rel_tol;
  opts.max_step = period / 400.0;
  return evolve_ode(
      [&rhs](double t, const Bloch& y) -> Bloch { return to_bloch(rhs(t, to_matrix(y))); },
      to_bloch(rho0), t_grid, opts);
}

void check_physical(const LindbladTrajectory& traj, const char* who) {
  const auto r = physicality(traj);
  if (r.trace_deviation > 1e-8 || r.hermiticity > 1e-9 || r.min_eigenvalue < -1e-8) {
    throw ConsistencyError(std::string(who) + ": state left the physical set (trace dev " +
                           std::to_string(r.trace_deviation) + ", min eigenvalue " +
                           std::to_string(r.min_eigenvalue) + ")");
  }
}

}  // namespace

void DecayRates::validate() const {
  for (double r : {Gamma_10, gamma_11, Gamma_01, gamma_00}) {
    if (!std::isfinite(r) || r < 0.0) throw DomainError("DecayRates: rates must be finite and >= 0");
  }
}

RotatedRates rotated_rates(const DriveParams& p, const DecayRates& d, double t) {
  p.validate();
  d.validate();
  const double a = p.amplitude * std::sin(p.omega * t) / p.omega;
  const double s2 = std::pow(std::sin(a), 2);
  const double c4 = std::pow(std::cos(0.5 * a), 4);
  const double s4 = std::pow(std::sin(0.5 * a), 4);
  const double pop = d.Gamma_10 + d.Gamma_01;
  const double deph = d.gamma_11 + d.gamma_00;
  return {t,
          s2 * pop / 8.0 + c4 * d.gamma_11 + s4 * d.gamma_00,
          s2 * pop / 8.0 + s4 * d.gamma_11 + c4 * d.gamma_00,
          s2 * deph / 2.0 + c4 * d.Gamma_10 + s4 * d.Gamma_01,
          s2 * deph / 2.0 + s4 * d.Gamma_10 + c4 * d.Gamma_01};
}

RotationWeights rotation_weights(const DriveParams& p, double t) {
  const double th = dut_angle(p, t);
  return {0.5 * std::sin(2.0 * th), std::pow(std::sin(th), 2), std::pow(std::cos(th), 2)};
}

DensityMatrix rotate_to_lab(const DensityMatrix& rho_rot, const DriveParams& p, double t) {
  const Eigen::Matrix2cd u = dut_frame_unitary(p, t);
  return {u * rho_rot.rho * u.adjoint()};
}

DensityMatrix rotate_to_frame(const DensityMatrix& rho_lab, const DriveParams& p, double t) {
  const Eigen::Matrix2cd u = dut_frame_unitary(p, t);
  return {u.adjoint() * rho_lab.rho * u};
}

PhysicalityReport physicality(const LindbladTrajectory& traj) {
  PhysicalityReport r;
  for (const auto& s : traj.states) {
    r.trace_deviation = std::max(r.trace_deviation, s.trace_deviation());
    r.hermiticity = std::max(r.hermiticity, s.hermiticity_residual());
    r.min_eigenvalue = std::min(r.min_eigenvalue, s.min_eigenvalue());
  }
  return r;
}

LindbladTrajectory evolve_lab_lindblad(const DriveParams& p, const DecayRates& d,
                                       const DensityMatrix& rho0, std::span<const double> t_grid,
                                       double rel_tol) {
  p.validate();
  d.validate();
  rho0.validate();
  const Channels c{0.5 * d.Gamma_10, 0.5 * d.Gamma_01, d.gamma_11, d.gamma_00};
  auto rhs = [&](double t, const Eigen::Matrix2cd& rho) {
    return lindblad_rhs(hamiltonian_lab(p, t), c, rho);
  };
  const auto ys = integrate(rhs, rho0.rho, t_grid, p.period(), rel_tol);

  LindbladTrajectory out;
  out.series.t.assign(t_grid.begin(), t_grid.end());
  for (const auto& y : ys) {
    out.states.push_back({to_matrix(y)});
    out.series.p1.push_back(y[0]);
  }
  check_physical(out, "evolve_lab_lindblad");
  return out;
}

LindbladTrajectory evolve_gvv_lindblad(const DriveParams& p, const DecayRates& d,
                                       std::span<const double> t_grid, int K, double rel_tol) {
  p.validate();
  d.validate();
  const GvvEffective g = gvv_effective(p, K);
  const Eigen::Matrix2cd h = g.h.cast<Complex>();
  auto rhs = [&](double t, const Eigen::Matrix2cd& rho) {
    const RotatedRates r = rotated_rates(p, d, t);
    const Channels c{0.5 * r.Gamma_s1s0, 0.5 * r.Gamma_s0s1, r.gamma_s1s1, r.gamma_s0s0};
    return lindblad_rhs(h, c, rho);
  };
  const auto ys = integrate(rhs, DensityMatrix::ground().rho, t_grid, p.period(), rel_tol);

  LindbladTrajectory out;
  out.series.t.assign(t_grid.begin(), t_grid.end());
  for (std::size_t k = 0; k < ys.size(); ++k) {
    const double t = t_grid[k];
    Eigen::Matrix2cd rho = to_matrix(ys[k]);
    // |s'_0> sits in the n = 1 Fourier block, so its amplitude carries e^{i omega t}.
    const Complex phase = std::polar(1.0, -std::fmod(p.omega * t, 2.0 * std::numbers::pi));
    rho(0, 1) *= phase;
    rho(1, 0) *= std::conj(phase);
    out.states.push_back(rotate_to_lab({rho}, p, t));
    out.series.p1.push_back(out.states.back().p1());
  }
  check_physical(out, "evolve_gvv_lindblad");
  return out;
}

}  // namespace rabi
