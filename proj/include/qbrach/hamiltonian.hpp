#pragma once

#include "qbrach/biorth.hpp"
#include "qbrach/types.hpp"

// Two-level effective Hamiltonians in the complex-angle parametrization
//
//   H = lambda0*I + (Omega/2) [[cos th, e^{-i phi} sin th],
//                              [e^{i phi} sin th, -cos th]]
//
// with every parameter allowed to be complex.  Omega is the eigenvalue
// splitting (eigenvalues lambda0 +- Omega/2); th and phi are the complex
// polar angles of the rotation axis.  Omega -> 0 is an exceptional point:
// the matrix becomes non-diagonalizable and the propagator degenerates to
// the linear-in-t Jordan form.

namespace qbrach {

struct HamiltonianParams {
  Complex lambda0;
  Complex omega;
  Complex theta;
  Complex phi;
};

// Axis components X = Omega sin th cos phi, Y = Omega sin th sin phi,
// Z = Omega cos th; Omega = principal_sqrt(X^2 + Y^2 + Z^2).
struct CartesianAxis {
  Complex x;
  Complex y;
  Complex z;
};

// Expansion coefficients of the evolved pair over the initial basis frame:
// u(tau) = a*psi_i + b*psi_0 and covector ut(tau) = at*psi_i^t + bt*psi_0^t.
// Always satisfies a*at + b*bt = 1.
struct TransitionCoefficients {
  Complex a;
  Complex b;
  Complex a_tilde;
  Complex b_tilde;
};

// Matrix form of the parametrized Hamiltonian.
Mat2 build_effective(HamiltonianParams const& p);

// Same Hamiltonian from axis components:
// H = lambda0*I + (1/2) [[Z, X - iY], [X + iY, -Z]].
Mat2 from_cartesian(Complex lambda0, CartesianAxis const& axis);

// Recover (lambda0, Omega, th, phi) from a 2x2 matrix.  Conventions:
//   - Omega has Re >= 0, ties broken by Im >= 0;
//   - th = principal acos of (h11 - h22)/Omega (real part in [0, pi]);
//   - phi from the off-diagonal entries against sin th;
//   - both off-diagonals zero: phi = 0 (axis along z);
//   - exactly one off-diagonal zero: th sits at a branch point; the
//     limiting th is returned with phi read off the phase of the
//     non-vanishing entry.
// Throws ExceptionalPointError when |Omega| < 1e-12.
HamiltonianParams decompose(Mat2 const& h);

// Splitting recovered from a matrix without full decomposition:
// Omega^2 = (h11 - h22)^2 + 4 h12 h21, sign-normalized as in decompose.
Complex splitting(Mat2 const& h);

// Bilinear energy variance sqrt(<ut|H^2|u> - <ut|H|u>^2) on a normalized
// pair (principal branch).  Equals +-(Omega sin th)/2 on eigen-axis states.
Complex energy_variance(Mat2 const& h, BiorthPair const& pair);

// Closed-form propagator exp(-i H t) for the parametrized Hamiltonian:
//   e^{-i lambda0 t} [cos(Omega t/2) I - i t sinc(Omega t/2) (H - lambda0 I)]
// which passes smoothly through the exceptional point (Jordan limit
// I - i t (H - lambda0 I) times the phase).
Mat2 propagator(HamiltonianParams const& p, double t);

// Same closed form for an arbitrary matrix (splitting computed internally).
Mat2 propagator(Mat2 const& h, double t);

// Expansion coefficients after evolving the canonical frame for time tau:
//   a  = (cos(Omega tau/2) - i cos th sin(Omega tau/2)) e^{-i lambda0 tau}
//   b  = -i e^{-i lambda0 tau} e^{+i phi} sin th sin(Omega tau/2)
// and the covector pair with conjugated-sign phases.
TransitionCoefficients transition_coefficients(HamiltonianParams const& p,
                                               double tau);

// Shared principal root W = sqrt(cos^2(chi/2) - cos^2 th).  Every branch
// decision downstream (azimuth phase, evolution phase, steering matrices)
// funnels through this one value so the sine and cosine forms of the
// arrival condition stay consistent in sign.
Complex chi_theta_root(Complex chi, Complex theta);

// Azimuth phi steering the initial state to the target at polar angle th:
//   e^{i(phi-gamma)} = (cos th sin(chi/2) + i W) / (cos(chi/2) sin th),
// evaluated through whichever algebraically equivalent form avoids
// cancellation.  At cos th = 0 this reduces to phi = gamma + pi/2 without
// special-casing.  Throws for sin th = 0.
Complex azimuth_from_target(Complex theta, TargetSpec const& target);

// Hamiltonian steering (1,0) to the (chi, gamma) target with polar angle
// th and splitting Omega:
//   H = lambda0 I + (Omega cos th/2) *
//       [[1, e^{-i gamma} (tan(chi/2) - i R)], [e^{i gamma} (tan(chi/2) + i R), -1]]
// with R = sqrt(tan^2 th - tan^2(chi/2)) on the branch induced by the
// shared principal root W = sqrt(cos^2(chi/2) - cos^2 th).  At cos th = 0
// the th -> pi/2 limit is returned:
//   H = lambda0 I + (Omega/2) [[0, -i e^{-i gamma}], [i e^{i gamma}, 0]].
Mat2 steering_hamiltonian(TargetSpec const& target, Complex theta,
                          Complex omega, Complex lambda0);

// Time-optimal Hamiltonian from boundary data (the th = pi/2 member):
//   H = lambda0 I + (i Omega / (2 sqrt(1 - <ut_f|u_i><ut_i|u_f>)))
//       (|u_f><ut_i| - |u_i><ut_f|).
// Throws when the boundary overlap product is numerically 1 (coincident
// states).
Mat2 optimal_hamiltonian(BoundaryData const& b, Complex omega,
                         Complex lambda0);

// General boundary-data Hamiltonian with free polar angle th; reduces to
// optimal_hamiltonian at th = pi/2 and to steering_hamiltonian when the
// boundary data comes from the canonical frame.
Mat2 general_boundary_hamiltonian(BoundaryData const& b, Complex theta,
                                  Complex omega, Complex lambda0);

// Overlap product <ut_f|u_i><ut_i|u_f> (equals cos^2(chi/2) for a target
// at polar distance chi).
Complex overlap_product(BoundaryData const& b);

}  // namespace qbrach
