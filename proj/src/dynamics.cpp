#include "qbrach/dynamics.hpp"

#include "qbrach/ode.hpp"

namespace qbrach {

namespace {
Complex const kI(0.0, 1.0);
}

bool Trajectory::valid(double tol) const {
  if (t.size() != n.size() || t.empty()) return false;
  for (std::size_t k = 0; k + 1 < t.size(); ++k)
    if (!(t[k] < t[k + 1])) return false;
  for (auto const& p : n)
    if (!is_finite(p) || !on_complex_sphere(p, tol)) return false;
  return true;
}

BlochVector precession_axis(HamiltonianParams const& p) {
  Complex const st = std::sin(p.theta), ct = std::cos(p.theta);
  return BlochVector(p.omega * st * std::cos(p.phi),
                     p.omega * st * std::sin(p.phi), p.omega * ct);
}

BlochVector propagate_closed(HamiltonianParams const& p, double t) {
  if (!std::isfinite(t))
    throw std::invalid_argument("propagate_closed: non-finite time");
  Complex const st = std::sin(p.theta), ct = std::cos(p.theta);
  Complex const cp = std::cos(p.phi), sp = std::sin(p.phi);
  Complex const wt = p.omega * t;
  Complex const cwt = std::cos(wt), swt = std::sin(wt);
  Complex const ring = st * ct * (1.0 - cwt);
  return BlochVector(ring * cp + st * swt * sp, ring * sp - st * swt * cp,
                     ct * ct + st * st * cwt);
}

Trajectory closed_trajectory(HamiltonianParams const& p, double t_end,
                             int n_samples) {
  if (t_end < 0.0 || n_samples < 1)
    throw std::invalid_argument("closed_trajectory: bad sampling request");
  Trajectory traj;
  traj.params = p;
  if (t_end == 0.0 || n_samples == 1) {
    traj.t = {0.0};
    traj.n = {BlochVector(0.0, 0.0, 1.0)};
    return traj;
  }
  traj.t.reserve(n_samples);
  traj.n.reserve(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    double const tk = t_end * double(k) / double(n_samples - 1);
    traj.t.push_back(tk);
    traj.n.push_back(propagate_closed(p, tk));
  }
  return traj;
}

BiorthPair propagate_spinor(HamiltonianParams const& p, BiorthPair const& s,
                            double t) {
  Mat2 const fwd = propagator(p, t);
  Mat2 const bwd = propagator(p, -t);  // exp(+iHt), exact inverse
  return BiorthPair{fwd * s.u, s.ut * bwd};
}

Trajectory integrate_bloch(HamiltonianParams const& p, double t_end,
                           double tol, int n_samples) {
  if (t_end < 0.0) throw std::invalid_argument("integrate_bloch: t_end < 0");
  if (!(tol >= 1e-14 && tol <= 1e-4))
    throw std::invalid_argument("integrate_bloch: tol outside [1e-14, 1e-4]");
  if (n_samples < 1)
    throw std::invalid_argument("integrate_bloch: n_samples < 1");

  BlochVector const axis = precession_axis(p);
  auto rhs = [&axis](double, BlochVector const& n) {
    return complex_cross(axis, n);
  };

  Trajectory traj;
  traj.params = p;
  traj.t.push_back(0.0);
  traj.n.push_back(BlochVector(0.0, 0.0, 1.0));
  if (t_end == 0.0 || n_samples == 1) return traj;

  BlochVector y = traj.n.back();
  for (int k = 1; k < n_samples; ++k) {
    double const t0 = traj.t.back();
    double const t1 = t_end * double(k) / double(n_samples - 1);
    try {
      y = ode::integrate_adaptive(rhs, t0, y, t1, tol, t_end);
    } catch (ode::StepUnderflow const& e) {
      throw IntegrationError("integrate_bloch: step-size underflow",
                             e.t_last, y);
    }
    traj.t.push_back(t1);
    traj.n.push_back(y);
  }
  return traj;
}

BlochVector integrate_bloch_from(HamiltonianParams const& p,
                                 BlochVector const& n0, double t0, double t1,
                                 double tol) {
  BlochVector const axis = precession_axis(p);
  auto rhs = [&axis](double, BlochVector const& n) {
    return complex_cross(axis, n);
  };
  try {
    return ode::integrate_adaptive(rhs, t0, BlochVector(n0), t1, tol,
                                   t1 - t0);
  } catch (ode::StepUnderflow const& e) {
    throw IntegrationError("integrate_bloch_from: step-size underflow",
                           e.t_last, n0);
  }
}

BlochVector pt_closed(Complex omega, double eta, Complex phi, double t) {
  double const sh = std::sinh(eta), ch = std::cosh(eta);
  Complex const cp = std::cos(phi), sp = std::sin(phi);
  Complex const wt = omega * t;
  Complex const cwt = std::cos(wt), swt = std::sin(wt);
  Complex const ring = -kI * sh * ch * (1.0 - cwt);
  return BlochVector(ring * cp + ch * swt * sp, ring * sp - ch * swt * cp,
                     ch * ch * cwt - sh * sh);
}

}  // namespace qbrach
