#pragma once

#include <vector>

#include "qbrach/dynamics.hpp"
#include "qbrach/types.hpp"

// Real-spectrum branch: with th = pi/2 + i eta and real splitting, the
// complex Bloch trajectory projects onto the unit one-sheeted hyperboloid
//   m1^2 + m2^2 - m3^2 = 1
// carrying the indefinite metric diag(1,1,-1).  This module holds the
// projection, geodesics of that metric, path lengths, the time/length
// bounds under a bounded constraint, and the speed comparison against
// Hermitian driving.

namespace qbrach {

// Real-spectrum scenario: splitting omega > 0, polar angle pi/2 + i eta,
// real target angles (chi, gamma).
struct PTScenario {
  double omega;
  double eta;
  double chi;
  double gamma;
};

enum class PathParam { Time, Arclength };

// Uniformly sampled path on the hyperboloid.  velocities holds dm/dparam
// at the same samples when the construction provides it analytically;
// path_length requires it.
struct HyperPath {
  PathParam kind = PathParam::Time;
  std::vector<double> param;
  std::vector<Vec3> points;
  std::vector<Vec3> velocities;
};

// Indefinite inner product a1 b1 + a2 b2 - a3 b3.
double metric_dot(Vec3 const& a, Vec3 const& b);

// Projection (n1, n2, n3) -> (n3, n1 sin phi - n2 cos phi,
// i (n1 cos phi + n2 sin phi)).  The image is real exactly on the
// real-spectrum branch; any imaginary residue above imag_tol means the
// input did not come from it and is rejected.
Vec3 to_hyperboloid(BlochVector const& n, Complex phi,
                    double imag_tol = 1e-9);

// Image of the target (sin chi cos gamma, sin chi sin gamma, cos chi):
// (cos chi, sqrt(sin^2 chi + tanh^2 eta (1-cos chi)^2),
//  tanh eta (1-cos chi)).
Vec3 final_point(double chi, double eta);

// Arrival time tau = (2/omega) arctan(sin(chi/2) /
// sqrt(cos^2(chi/2) + sinh^2 eta)); equals chi/omega at eta = 0 and
// decreases to zero as |eta| grows.
double pt_evolution_time(PTScenario const& sc);

// Geodesic of the indefinite metric through `initial` with unit tangent
// `direction`: m(s) = cos s * initial + sin s * direction.  Requires
// g(m,m) = 1, g(d,d) = 1, g(m,d) = 0, each within 1e-10.
Vec3 geodesic(double s, Vec3 const& initial, Vec3 const& direction);

// Unit tangent at (1,0,0) of the geodesic that reaches
// final_point(chi, eta) at arclength s = chi:
// (0, sqrt(1 + tanh^2 eta tan^2(chi/2)), tanh eta tan(chi/2)).
// Degenerates at chi = pi for eta != 0 (null-direction limit).
Vec3 geodesic_direction(double eta, double chi);

// Samples the closed-form trajectory of the scenario on [0, t_end] and
// projects points and velocities; n_samples uniform samples including
// both endpoints.
HyperPath map_pt_path(PTScenario const& sc, double t_end, int n_samples);

// Projects an already-computed Bloch trajectory (points and the exact
// precession velocities at its stored samples).
HyperPath map_path(Trajectory const& traj, Complex phi,
                   double imag_tol = 1e-9);

// Composite-Simpson quadrature of integral sqrt(g(dm,dm)) dparam over the
// stored velocities (3/8 rule on the tail when the interval count is
// odd).  A speed-squared below -1e-10 means the path left the branch and
// is an error; smaller negatives are clamped to zero.
double path_length(HyperPath const& path);

// L = tau omega cosh eta, the exact length of the Schroedinger-induced
// path; bounded by 2 sin(chi/2) < L <= chi.
double closed_form_length(PTScenario const& sc);

struct BoundedTimes {
  double tau;
  double length;  // L = omega_bar * tau
};

// With the magnitude omega_bar = Omega cosh eta held fixed, the arrival
// time for splitting Omega in (0, omega_bar]:
// tau = (2/Omega) arctan(Omega sin(chi/2) /
//        sqrt(omega_bar^2 - Omega^2 sin^2(chi/2))),
// monotone in Omega between (2/omega_bar) sin(chi/2) and chi/omega_bar.
BoundedTimes omega_constrained_bounds(double omega_bar, double chi,
                                      double omega);

struct SpeedPair {
  double v;    // actual speed along the induced path
  double v_g;  // geodesic reference speed
};

// Real-spectrum branch: constant speed v = omega cosh eta >= v_g = omega.
SpeedPair pt_speed(double omega, double eta);

// Hermitian branch: v = omega sin theta <= v_g = omega.
SpeedPair hermitian_speed(double omega, double theta);

}  // namespace qbrach
