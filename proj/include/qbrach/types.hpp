#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

// Shared numeric foundations for the complex-Bloch-sphere solver.
//
// Everything downstream works with conjugation-free bilinear forms: the
// "norm" of a complex Bloch vector is n1^2 + n2^2 + n3^2 (no conjugation),
// so vectors live on the complex sphere rather than the real one.  All
// multivalued functions (sqrt, log, acos, atan) are taken on the principal
// branch with the cut along the negative real axis; every module funnels
// its square roots through principal_sqrt so the convention is applied in
// exactly one place.

namespace qbrach {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;      // ket (column)
using RowVec2 = Eigen::RowVector2cd; // associated covector (row)
using BlochVector = Eigen::Vector3cd;
using Vec3 = Eigen::Vector3d;

// Tolerance used when validating inputs at construction boundaries.
inline constexpr double kConstructTol = 1e-12;
// Tolerance used for runtime identity checks along trajectories.
inline constexpr double kRuntimeTol = 1e-10;
// Below this magnitude a level splitting is treated as an exceptional point.
inline constexpr double kExceptionalTol = 1e-12;

// Principal branch square root (cut on the negative real axis, result in
// the closed right half plane).  std::sqrt already implements this; the
// named wrapper exists so call sites document the branch choice.
inline Complex principal_sqrt(Complex z) { return std::sqrt(z); }

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <typename Derived>
bool is_finite(Eigen::MatrixBase<Derived> const& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_finite(Complex(m(i, j)))) return false;
  return true;
}

// Bilinear (conjugation-free) dot product of complex 3-vectors.
inline Complex complex_dot(BlochVector const& a, BlochVector const& b) {
  return a(0) * b(0) + a(1) * b(1) + a(2) * b(2);
}

// Bilinear cross product; together with complex_dot this is what makes the
// complex sphere work like the real one under the formal rotation algebra.
inline BlochVector complex_cross(BlochVector const& a, BlochVector const& b) {
  return BlochVector(a(1) * b(2) - a(2) * b(1),
                     a(2) * b(0) - a(0) * b(2),
                     a(0) * b(1) - a(1) * b(0));
}

// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * M_PI);
  if (w <= -M_PI) w += 2.0 * M_PI;
  return w;
}

// Raised when a construction would sit on (or numerically at) an
// exceptional point: coalescing eigenvalues, self-orthogonal states.
struct ExceptionalPointError : std::domain_error {
  using std::domain_error::domain_error;
};

// Raised when the adaptive integrator cannot continue; carries the last
// state that was still accepted.
struct IntegrationError : std::runtime_error {
  IntegrationError(std::string const& what, double t, BlochVector n)
      : std::runtime_error(what), t_last(t), n_last(std::move(n)) {}
  double t_last;
  BlochVector n_last;
};

}  // namespace qbrach
