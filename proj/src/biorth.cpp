#include "qbrach/biorth.hpp"

namespace qbrach {

BiorthPair normalize_biorthogonal(Vec2 const& u, RowVec2 const& ut) {
  if (!is_finite(u) || !is_finite(ut))
    throw std::invalid_argument("normalize_biorthogonal: non-finite input");
  Complex const s = (ut * u).value();
  if (std::abs(s) < 1e-14)
    throw ExceptionalPointError(
        "normalize_biorthogonal: self-orthogonal state (pairing ~ 0)");
  Complex const r = principal_sqrt(s);
  return BiorthPair{u / r, ut / r};
}

BlochVector bloch_from_spinors(BiorthPair const& pair) {
  Complex const s = pair.pairing();
  if (std::abs(s - 1.0) > 1e-9)
    throw std::invalid_argument(
        "bloch_from_spinors: pair not bi-orthonormalized (|<ut|u> - 1| > 1e-9)");
  Complex const u1 = pair.u(0), u2 = pair.u(1);
  Complex const t1 = pair.ut(0), t2 = pair.ut(1);
  Complex const i(0.0, 1.0);
  return BlochVector(u1 * t2 + u2 * t1, i * (u1 * t2 - u2 * t1),
                     u1 * t1 - u2 * t2);
}

bool on_complex_sphere(BlochVector const& n, double tol) {
  return std::abs(complex_dot(n, n) - 1.0) <= tol;
}

BiorthFrame standard_frame() {
  BiorthFrame f;
  f.psi_i = BiorthPair{Vec2(1.0, 0.0), RowVec2(1.0, 0.0)};
  f.psi_0 = BiorthPair{Vec2(0.0, 1.0), RowVec2(0.0, 1.0)};
  return f;
}

BiorthPair target_pair(TargetSpec const& target) {
  Complex const c = std::cos(target.chi / 2.0);
  Complex const s = std::sin(target.chi / 2.0);
  Complex const i(0.0, 1.0);
  Complex const ep = std::exp(i * target.gamma);
  Complex const em = std::exp(-i * target.gamma);
  return BiorthPair{Vec2(c, ep * s), RowVec2(c, em * s)};
}

BoundaryData boundary_from_target(TargetSpec const& target) {
  BoundaryData b;
  b.initial = BiorthPair{Vec2(1.0, 0.0), RowVec2(1.0, 0.0)};
  b.final = target_pair(target);
  return b;
}

bool frame_orthonormal(BiorthFrame const& frame, double tol) {
  auto ok1 = [&](Complex v) { return std::abs(v - 1.0) <= tol; };
  auto ok0 = [&](Complex v) { return std::abs(v) <= tol; };
  return ok1(frame.psi_i.pairing()) && ok1(frame.psi_0.pairing()) &&
         ok0((frame.psi_i.ut * frame.psi_0.u).value()) &&
         ok0((frame.psi_0.ut * frame.psi_i.u).value());
}

}  // namespace qbrach
