#pragma once

#include "qbrach/types.hpp"

// Bi-orthogonal state algebra.  A non-Hermitian Hamiltonian has distinct
// right and left eigenvectors; states are carried around as pairs (u, ut)
// normalized by the bilinear pairing <ut|u> = 1 instead of the Hermitian
// norm.  The Bloch map built from such a pair produces a complex 3-vector
// of unit conjugation-free norm.

namespace qbrach {

// A ket together with its associated covector, normalized so that the
// pairing ut*u equals 1 (checked where operations require it).
struct BiorthPair {
  Vec2 u;
  RowVec2 ut;

  Complex pairing() const { return (ut * u).value(); }
};

// Bi-orthonormal basis frame {psi_i, psi_0} with covectors: all four
// mutual pairings are delta_ij.
struct BiorthFrame {
  BiorthPair psi_i;
  BiorthPair psi_0;
};

// Boundary data for Hamiltonian synthesis: initial and final states with
// their covectors.  No orthogonality is implied between the two pairs.
struct BoundaryData {
  BiorthPair initial;
  BiorthPair final;
};

// Final state on the complex Bloch sphere, parametrized by complex polar
// angle chi and azimuth gamma.
struct TargetSpec {
  Complex chi;
  Complex gamma;

  BlochVector n_f() const {
    Complex const sc = std::sin(chi);
    return BlochVector(sc * std::cos(gamma), sc * std::sin(gamma),
                       std::cos(chi));
  }
};

// Rescale a pair so the pairing becomes exactly 1, splitting the factor
// symmetrically through the principal square root.  Throws
// ExceptionalPointError when the pairing is numerically zero
// (self-orthogonal state).
BiorthPair normalize_biorthogonal(Vec2 const& u, RowVec2 const& ut);

// Complex Bloch vector of a normalized pair:
//   n = (u1*ut2 + u2*ut1, i*(u1*ut2 - u2*ut1), u1*ut1 - u2*ut2).
// Requires |<ut|u> - 1| <= 1e-9; the result has complex_dot(n, n) = 1.
BlochVector bloch_from_spinors(BiorthPair const& pair);

// Checks that complex_dot(n, n) is within tol of 1.
bool on_complex_sphere(BlochVector const& n, double tol = 1e-9);

// Canonical bi-orthonormal basis frame: psi_i = (1,0), psi_0 = (0,1) with
// matching row covectors.
BiorthFrame standard_frame();

// The (chi, gamma) target realized as a normalized pair whose Bloch vector
// is TargetSpec::n_f: u = (cos(chi/2), e^{i gamma} sin(chi/2)) with the
// covector carrying the opposite azimuth phase.
BiorthPair target_pair(TargetSpec const& target);

// Boundary data from the canonical initial state (1,0) to target_pair.
BoundaryData boundary_from_target(TargetSpec const& target);

// Validates mutual bi-orthonormality of a frame within tol.
bool frame_orthonormal(BiorthFrame const& frame, double tol = kConstructTol);

}  // namespace qbrach
