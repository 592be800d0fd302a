#pragma once

#include <vector>

#include "qbrach/biorth.hpp"
#include "qbrach/hamiltonian.hpp"
#include "qbrach/types.hpp"

// Evolution-time functional over the complex polar angle.
//
// For a target at polar distance chi, the arrival condition fixes
//   tan(Omega tau / 2) = sin(chi/2) / W,     W = chi_theta_root(chi, th),
// so the complex time phase is
//   Psi = (2/Omega) * arctan(sin(chi/2)/W)        (splitting constrained)
//   Psi~ = (sin th / dE) * arctan(...)            (variance constrained)
// with the arctan branch chosen to make the real part of Psi smallest
// strictly positive (adding pi to the arctan flips both the sine and the
// cosine of Omega tau/2 and leaves the trajectory point invariant, so
// every branch is a genuine revisit time).  A configuration is physically
// admissible when Psi is real: tau = |Psi| and arg Psi is the reality
// residual driven to zero on the admissible manifold.

namespace qbrach {

enum class Constraint { OmegaFixed, AbsOmegaFixed, VarianceFixed };

// Which quantity is held fixed while the polar angle varies.  The
// abs-omega mode stores the user's full complex value but constrains only
// its magnitude: the reality condition is then solvable for arg Omega at
// every point.
struct ConstraintMode {
  Constraint kind;
  Complex omega;   // OmegaFixed / AbsOmegaFixed
  double delta_e;  // VarianceFixed

  static ConstraintMode omega_fixed(Complex om);
  static ConstraintMode abs_omega_fixed(Complex om);
  static ConstraintMode variance_fixed(double de);
};

struct PhaseResult {
  Complex psi;
  bool branch_point;  // W ~ 0: limit value pi * prefactor / 2 returned
};

struct TimeResult {
  double tau;               // |psi|
  Complex psi;              // branch-selected complex time phase
  double reality_residual;  // arg psi in (-pi, pi]; ~0 means admissible
  double arg_omega;         // axis argument: given, implied, or solved
  bool branch_point;
};

struct RealityRoot {
  double im_theta;
  double arg_omega;  // splitting argument consistent with reality here
};

enum class CriticalKind { Saddle, AsymptoticInfimum };

struct CriticalPoint {
  Complex theta;  // Im = +-infinity marks the asymptotic entries
  CriticalKind kind;
  double tau;           // limit value; 0 for the asymptotic infimum
  bool admissible;      // reachable with real evolution time
  double arg_mismatch;  // wrap(arg chi - arg omega) at the saddle
};

// Finite-difference curvature of tau over the (Re th, Im th) plane.
struct SaddleClassification {
  double fxx, fyy, fxy, det;
  bool saddle;             // det < 0: minimax on the complex plane
  bool real_line_minimum;  // fxx > 0: minimum restricted to Im th = 0
};

struct AxisSpec {
  double lo, hi;
  int cells;
};

struct LandscapeCell {
  double abs_psi, arg_psi;  // NaN when branch_point is set
  bool branch_point;
};

// Cell-centered rectangular grid over the complex polar angle; cells are
// stored row-major with the Re-axis index outermost.
struct LandscapeGrid {
  AxisSpec re, im;
  std::vector<double> re_centers, im_centers;
  std::vector<LandscapeCell> cells;

  LandscapeCell const& at(int i_re, int i_im) const {
    return cells[std::size_t(i_re) * std::size_t(im.cells) + std::size_t(i_im)];
  }
};

// Azimuth steering (1,0) to the target at polar angle th (see
// azimuth_from_target for the branch convention).  Requires sin th != 0;
// cos th = 0 reduces to phi = gamma + pi/2 for any chi.
Complex phi_from_target(Complex theta, TargetSpec const& target);

// Branch-selected complex time phase at fixed splitting Omega.
PhaseResult evolution_phase(Complex omega, Complex theta, Complex chi);

// Branch-selected complex time phase at fixed energy variance dE; equals
// evolution_phase under Omega = 2 dE / sin th.
PhaseResult variance_phase(double delta_e, Complex theta, Complex chi);

// Complete evolution-time evaluation under a constraint mode.
TimeResult evolution_time(ConstraintMode const& mode, Complex theta,
                          TargetSpec const& target);

// Roots of Im th -> reality residual on a fixed-Re-th line, located by a
// 400-sample bracketing scan refined with bisection to 1e-10.  Samples
// with |residual| <= 1e-12 are grouped into runs reporting midpoints (a
// residual that vanishes identically along the line thus reports the
// window midpoint); sign changes that jump across the +-pi cut are not
// roots and are filtered out.  In the abs-omega mode the scan uses the
// given complex value and each root reports the solved arg Omega.
std::vector<RealityRoot> solve_reality(ConstraintMode const& mode,
                                       TargetSpec const& target,
                                       double re_theta, double im_lo,
                                       double im_hi);

// The stationary structure of tau at fixed Omega: the saddle at
// th = pi/2 (tau = |chi/Omega|, admissible iff arg chi = arg Omega) and
// the two asymptotic infima Im th -> +-infinity at
// Re th = pi/2 +- wrap(arg Omega - arg sin(chi/2)), where tau -> 0.
std::vector<CriticalPoint> critical_points(Complex omega, Complex chi);

// Central finite-difference Hessian (step h) of tau around theta0.
SaddleClassification classify_saddle(ConstraintMode const& mode,
                                     TargetSpec const& target, Complex theta0,
                                     double h = 1e-5);

// Evaluates tau and the residual over a cell-centered grid.  Branch-point
// cells carry NaN values and the flag instead.
LandscapeGrid landscape(ConstraintMode const& mode, TargetSpec const& target,
                        AxisSpec re, AxisSpec im);

}  // namespace qbrach
