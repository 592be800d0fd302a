#include "qbrach/hamiltonian.hpp"

namespace qbrach {

namespace {

Complex const kI(0.0, 1.0);

// sin(z)/z with a series fallback so the propagator passes smoothly
// through z = 0 (exceptional point / t = 0).
Complex csinc(Complex z) {
  if (std::abs(z) < 1e-4) {
    Complex const z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

void require_normalized(BiorthPair const& pair, char const* who) {
  if (std::abs(pair.pairing() - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(who) +
                                ": pair not bi-orthonormalized");
}

}  // namespace

Mat2 build_effective(HamiltonianParams const& p) {
  if (!is_finite(p.lambda0) || !is_finite(p.omega) || !is_finite(p.theta) ||
      !is_finite(p.phi))
    throw std::invalid_argument("build_effective: non-finite parameter");
  Complex const ct = std::cos(p.theta);
  Complex const st = std::sin(p.theta);
  Complex const em = std::exp(-kI * p.phi);
  Complex const ep = std::exp(kI * p.phi);
  Mat2 h;
  h << p.lambda0 + 0.5 * p.omega * ct, 0.5 * p.omega * em * st,
      0.5 * p.omega * ep * st, p.lambda0 - 0.5 * p.omega * ct;
  return h;
}

Mat2 from_cartesian(Complex lambda0, CartesianAxis const& axis) {
  Mat2 h;
  h << lambda0 + 0.5 * axis.z, 0.5 * (axis.x - kI * axis.y),
      0.5 * (axis.x + kI * axis.y), lambda0 - 0.5 * axis.z;
  return h;
}

Complex splitting(Mat2 const& h) {
  Complex const d = h(0, 0) - h(1, 1);
  Complex om = principal_sqrt(d * d + 4.0 * h(0, 1) * h(1, 0));
  // principal_sqrt already lands in Re >= 0 with Im >= 0 on the boundary;
  // keep the convention explicit against roundoff at the cut.
  if (om.real() < 0.0 || (om.real() == 0.0 && om.imag() < 0.0)) om = -om;
  return om;
}

HamiltonianParams decompose(Mat2 const& h) {
  if (!is_finite(h)) throw std::invalid_argument("decompose: non-finite matrix");
  HamiltonianParams p;
  p.lambda0 = 0.5 * (h(0, 0) + h(1, 1));
  p.omega = splitting(h);
  if (std::abs(p.omega) < kExceptionalTol)
    throw ExceptionalPointError("decompose: exceptional point (splitting ~ 0)");
  p.theta = std::acos((h(0, 0) - h(1, 1)) / p.omega);
  Complex const st = std::sin(p.theta);

  double const scale = h.cwiseAbs().maxCoeff();
  double const zero_thr = 1e-15 * (scale > 0.0 ? scale : 1.0);
  double const a01 = std::abs(h(0, 1)), a10 = std::abs(h(1, 0));
  if (a01 <= zero_thr && a10 <= zero_thr) {
    p.phi = 0.0;  // axis along z; azimuth is a free gauge, fixed to 0
  } else if (std::abs(st) < 1e-14) {
    // One off-diagonal vanishes: the polar angle sits at a branch point
    // and only the phase of the surviving entry is recoverable.
    p.phi = (a10 > a01) ? Complex(std::arg(h(1, 0)), 0.0)
                        : Complex(-std::arg(h(0, 1)), 0.0);
  } else {
    Complex const w = 2.0 * h(0, 1) / (p.omega * st);  // e^{-i phi}
    p.phi = Complex(-std::arg(w), std::log(std::abs(w)));
  }
  return p;
}

Complex energy_variance(Mat2 const& h, BiorthPair const& pair) {
  require_normalized(pair, "energy_variance");
  Complex const first = (pair.ut * h * pair.u).value();
  Complex const second = (pair.ut * (h * h).eval() * pair.u).value();
  return principal_sqrt(second - first * first);
}

Mat2 propagator(HamiltonianParams const& p, double t) {
  Mat2 const h = build_effective(p);
  Mat2 const m = h - p.lambda0 * Mat2::Identity();
  Complex const z = 0.5 * p.omega * t;
  return std::exp(-kI * p.lambda0 * t) *
         (std::cos(z) * Mat2::Identity() - kI * t * csinc(z) * m);
}

Mat2 propagator(Mat2 const& h, double t) {
  Complex const lambda0 = 0.5 * (h(0, 0) + h(1, 1));
  Mat2 const m = h - lambda0 * Mat2::Identity();
  Complex const z = 0.5 * splitting(h) * t;
  return std::exp(-kI * lambda0 * t) *
         (std::cos(z) * Mat2::Identity() - kI * t * csinc(z) * m);
}

TransitionCoefficients transition_coefficients(HamiltonianParams const& p,
                                               double tau) {
  if (!std::isfinite(tau))
    throw std::invalid_argument("transition_coefficients: non-finite time");
  Complex const z = 0.5 * p.omega * tau;
  Complex const c = std::cos(z), s = std::sin(z);
  Complex const ct = std::cos(p.theta), st = std::sin(p.theta);
  Complex const gauge = std::exp(-kI * p.lambda0 * tau);
  TransitionCoefficients tc;
  tc.a = (c - kI * ct * s) * gauge;
  tc.b = -kI * gauge * std::exp(kI * p.phi) * st * s;
  tc.a_tilde = (c + kI * ct * s) / gauge;
  tc.b_tilde = kI / gauge * std::exp(-kI * p.phi) * st * s;
  return tc;
}

Complex chi_theta_root(Complex chi, Complex theta) {
  Complex const c2 = std::cos(0.5 * chi);
  Complex const ct = std::cos(theta);
  return principal_sqrt(c2 * c2 - ct * ct);
}

Complex azimuth_from_target(Complex theta, TargetSpec const& target) {
  Complex const st = std::sin(theta);
  if (std::abs(st) < 1e-14)
    throw std::invalid_argument(
        "azimuth_from_target: polar angle with sin th = 0");
  Complex const ct = std::cos(theta);
  Complex const s2 = std::sin(0.5 * target.chi);
  Complex const c2 = std::cos(0.5 * target.chi);
  Complex const w = chi_theta_root(target.chi, theta);

  // e^{i(phi - gamma)} = (ct*s2 + i*w)/(c2*st) = c2*st/(ct*s2 - i*w);
  // the two forms are algebraically identical -- evaluate through
  // whichever combination avoids cancellation.
  Complex const plus = ct * s2 + kI * w;
  Complex const minus = ct * s2 - kI * w;
  Complex q;
  if (std::abs(plus) >= std::abs(minus))
    q = plus / (c2 * st);
  else
    q = c2 * st / minus;
  if (!is_finite(q) || std::abs(q) == 0.0)
    throw std::domain_error(
        "azimuth_from_target: azimuth diverges for this (th, chi)");
  // phi = gamma - i Log q   (principal log)
  return target.gamma + Complex(std::arg(q), -std::log(std::abs(q)));
}

Mat2 steering_hamiltonian(TargetSpec const& target, Complex theta,
                          Complex omega, Complex lambda0) {
  HamiltonianParams p;
  p.lambda0 = lambda0;
  p.omega = omega;
  p.theta = theta;
  p.phi = azimuth_from_target(theta, target);
  return build_effective(p);
}

Complex overlap_product(BoundaryData const& b) {
  return (b.final.ut * b.initial.u).value() * (b.initial.ut * b.final.u).value();
}

Mat2 optimal_hamiltonian(BoundaryData const& b, Complex omega,
                         Complex lambda0) {
  require_normalized(b.initial, "optimal_hamiltonian");
  require_normalized(b.final, "optimal_hamiltonian");
  Complex const p = overlap_product(b);
  if (std::abs(1.0 - p) < 1e-12)
    throw std::domain_error(
        "optimal_hamiltonian: coincident boundary states (overlap product ~ 1)");
  Mat2 const cross =
      b.final.u * b.initial.ut - b.initial.u * b.final.ut;
  return lambda0 * Mat2::Identity() +
         (kI * omega / (2.0 * principal_sqrt(1.0 - p))) * cross;
}

Mat2 general_boundary_hamiltonian(BoundaryData const& b, Complex theta,
                                  Complex omega, Complex lambda0) {
  require_normalized(b.initial, "general_boundary_hamiltonian");
  require_normalized(b.final, "general_boundary_hamiltonian");
  Complex const st = std::sin(theta);
  if (std::abs(st) < 1e-14)
    throw std::invalid_argument(
        "general_boundary_hamiltonian: polar angle with sin th = 0");
  Complex const ct = std::cos(theta);
  Complex const c2sq = overlap_product(b);   // cos^2(chi/2)
  Complex const s2sq = 1.0 - c2sq;           // sin^2(chi/2)
  if (std::abs(s2sq) < 1e-12)
    throw std::domain_error(
        "general_boundary_hamiltonian: coincident boundary states");
  Complex const s2 = principal_sqrt(s2sq);
  Complex const w = principal_sqrt(c2sq - ct * ct);

  Mat2 const fi = b.final.u * b.initial.ut;    // |u_f><ut_i|
  Mat2 const if_ = b.initial.u * b.final.ut;   // |u_i><ut_f|
  Mat2 const ii = b.initial.u * b.initial.ut;
  Mat2 const ff = b.final.u * b.final.ut;

  return lambda0 * Mat2::Identity() +
         (omega / (2.0 * st * s2sq)) *
             ((ct * w + kI * s2) * fi + (ct * w - kI * s2) * if_) -
         (omega * ct / (2.0 * s2sq)) * (ii + ff);
}

}  // namespace qbrach
