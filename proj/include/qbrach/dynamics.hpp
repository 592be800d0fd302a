#pragma once

#include <vector>

#include "qbrach/biorth.hpp"
#include "qbrach/hamiltonian.hpp"
#include "qbrach/types.hpp"

// Evolution on the complex Bloch sphere.  Three routes to the same motion:
//   - the closed-form trajectory in the complex angles,
//   - the spinor pair evolved by the closed-form matrix exponential,
//   - adaptive integration of the formal precession equation
//       dn/dt = axis x n        (bilinear cross product)
// and every closed form in the library is cross-checked against the
// integrated route in the test suites.

namespace qbrach {

struct Trajectory {
  HamiltonianParams params;
  std::vector<double> t;
  std::vector<BlochVector> n;

  // true when times are strictly increasing and every sample sits on the
  // complex sphere within tol.
  bool valid(double tol = 1e-8) const;
};

// Axis vector Omega * (sin th cos phi, sin th sin phi, cos th).
BlochVector precession_axis(HamiltonianParams const& p);

// Closed-form trajectory point starting from n(0) = (0, 0, 1):
//  n1 = sin th cos th (1 - cos Omega t) cos phi + sin th sin(Omega t) sin phi
//  n2 = sin th cos th (1 - cos Omega t) sin phi - sin th sin(Omega t) cos phi
//  n3 = cos^2 th + sin^2 th cos Omega t
BlochVector propagate_closed(HamiltonianParams const& p, double t);

// Uniformly sampled closed-form trajectory (n_samples points including
// both endpoints; a single sample when t_end = 0).
Trajectory closed_trajectory(HamiltonianParams const& p, double t_end,
                             int n_samples = 512);

// Evolve a state pair: u(t) = exp(-iHt) u(0), ut(t) = ut(0) exp(+iHt)
// (the transpose action of the same closed-form exponential), preserving
// the pairing exactly.
BiorthPair propagate_spinor(HamiltonianParams const& p, BiorthPair const& s,
                            double t);

// Adaptive integration of dn/dt = axis x n from n(0) = (0,0,1), sampled
// at n_samples uniform times.  tol in [1e-14, 1e-4]; the terminal point
// matches propagate_closed within 10*tol.  Throws IntegrationError (with
// the last good state) on step-size underflow.
Trajectory integrate_bloch(HamiltonianParams const& p, double t_end,
                           double tol = 1e-10, int n_samples = 512);

// Same integration from an arbitrary start point (used by oracles).
BlochVector integrate_bloch_from(HamiltonianParams const& p,
                                 BlochVector const& n0, double t0, double t1,
                                 double tol);

// Hyperbolic-branch closed form (polar angle pi/2 + i eta):
//  n1 = -i sh ch (1 - cos Omega t) cos phi + ch sin(Omega t) sin phi
//  n2 = -i sh ch (1 - cos Omega t) sin phi - ch sin(Omega t) cos phi
//  n3 = ch^2 cos(Omega t) - sh^2        (sh = sinh eta, ch = cosh eta)
BlochVector pt_closed(Complex omega, double eta, Complex phi, double t);

}  // namespace qbrach
