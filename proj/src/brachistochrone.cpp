#include "qbrach/brachistochrone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qbrach {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBranchTol = 1e-13;     // |cos^2(chi/2) - cos^2 th| cutoff
constexpr double kResidualZero = 1e-12;  // residual treated as exactly real
constexpr double kRootTol = 1e-10;       // bisection window on Im th

struct ArctanCore {
  Complex a;  // principal arctan(sin(chi/2) / W)
  bool branch_point;
};

// arctan(sin(chi/2)/W) on the principal branch, with the W ~ 0 limit
// (arctan -> pi/2) detected on the radicand before the square root.
ArctanCore arctan_core(Complex chi, Complex theta) {
  Complex const c2 = std::cos(chi / 2.0);
  Complex const s2 = std::sin(chi / 2.0);
  Complex const ct = std::cos(theta);
  Complex const d = c2 * c2 - ct * ct;
  double const scale =
      std::max({1.0, std::norm(c2), std::norm(ct)});
  if (std::abs(d) <= kBranchTol * scale) {
    return {Complex(kPi / 2.0, 0.0), true};
  }
  return {std::atan(s2 / principal_sqrt(d)), false};
}

// psi = p * (a + k pi) with the smallest integer k making Re psi
// strictly positive.  Every k is a true arrival time: shifting the
// arctan by pi flips both sin(Omega tau/2) and cos(Omega tau/2), which
// leaves the trajectory point unchanged.
Complex select_branch(Complex p, Complex a) {
  double const c = (p * a).real();
  double const m = kPi * p.real();
  if (std::abs(m) <= 1e-15 * kPi * std::abs(p)) {
    return p * a;  // Re psi is branch-independent; keep the principal value
  }
  double const t0 = -c / m;
  if (!std::isfinite(t0)) return p * a;
  double const k = (m > 0.0) ? std::floor(t0) + 1.0 : std::ceil(t0) - 1.0;
  return p * (a + k * kPi);
}

PhaseResult phase_with_prefactor(Complex p, Complex chi, Complex theta) {
  ArctanCore const core = arctan_core(chi, theta);
  return {select_branch(p, core.a), core.branch_point};
}

void check_target(TargetSpec const& target) {
  if (!is_finite(target.chi) || !is_finite(target.gamma)) {
    throw std::invalid_argument("target angles must be finite");
  }
  if (target.chi == Complex(0.0, 0.0)) {
    throw std::invalid_argument("target polar distance must be nonzero");
  }
}

void check_theta(Complex theta) {
  if (!is_finite(theta)) {
    throw std::invalid_argument("polar angle must be finite");
  }
}

}  // namespace

ConstraintMode ConstraintMode::omega_fixed(Complex om) {
  return {Constraint::OmegaFixed, om, 0.0};
}

ConstraintMode ConstraintMode::abs_omega_fixed(Complex om) {
  return {Constraint::AbsOmegaFixed, om, 0.0};
}

ConstraintMode ConstraintMode::variance_fixed(double de) {
  return {Constraint::VarianceFixed, Complex(0.0, 0.0), de};
}

Complex phi_from_target(Complex theta, TargetSpec const& target) {
  check_theta(theta);
  check_target(target);
  return azimuth_from_target(theta, target);
}

PhaseResult evolution_phase(Complex omega, Complex theta, Complex chi) {
  if (!is_finite(omega) || std::abs(omega) < 1e-12) {
    throw ExceptionalPointError("level splitting too close to zero");
  }
  check_theta(theta);
  return phase_with_prefactor(2.0 / omega, chi, theta);
}

PhaseResult variance_phase(double delta_e, Complex theta, Complex chi) {
  if (!(delta_e > 0.0) || !std::isfinite(delta_e)) {
    throw std::invalid_argument("energy variance must be positive");
  }
  check_theta(theta);
  Complex const st = std::sin(theta);
  if (std::abs(st) < 1e-14) {
    throw std::invalid_argument(
        "variance constraint undefined where sin th = 0");
  }
  return phase_with_prefactor(st / delta_e, chi, theta);
}

TimeResult evolution_time(ConstraintMode const& mode, Complex theta,
                          TargetSpec const& target) {
  check_target(target);
  switch (mode.kind) {
    case Constraint::OmegaFixed: {
      PhaseResult const pr = evolution_phase(mode.omega, theta, target.chi);
      return {std::abs(pr.psi), pr.psi, std::arg(pr.psi),
              std::arg(mode.omega), pr.branch_point};
    }
    case Constraint::AbsOmegaFixed: {
      // Only |Omega| is pinned: choose arg Omega = arg(arctan term), which
      // makes psi real for any polar angle.  The principal branch already
      // minimizes |arctan + k pi|, so tau = 2 |arctan| / |Omega|.
      if (!is_finite(mode.omega) || std::abs(mode.omega) < 1e-12) {
        throw ExceptionalPointError("level splitting too close to zero");
      }
      check_theta(theta);
      ArctanCore const core = arctan_core(target.chi, theta);
      double const tau = 2.0 * std::abs(core.a) / std::abs(mode.omega);
      return {tau, Complex(tau, 0.0), 0.0, std::arg(core.a),
              core.branch_point};
    }
    case Constraint::VarianceFixed: {
      PhaseResult const pr =
          variance_phase(mode.delta_e, theta, target.chi);
      double const arg_om =
          std::arg(2.0 * mode.delta_e / std::sin(theta));
      return {std::abs(pr.psi), pr.psi, std::arg(pr.psi), arg_om,
              pr.branch_point};
    }
  }
  throw std::logic_error("unknown constraint kind");
}

std::vector<RealityRoot> solve_reality(ConstraintMode const& mode,
                                       TargetSpec const& target,
                                       double re_theta, double im_lo,
                                       double im_hi) {
  check_target(target);
  if (!std::isfinite(re_theta) || !std::isfinite(im_lo) ||
      !std::isfinite(im_hi) || !(im_hi > im_lo)) {
    throw std::invalid_argument("reality scan window must be finite with "
                                "im_lo < im_hi");
  }

  // In the abs-omega mode the scan asks where the *given* argument is
  // already the solved one, i.e. the fixed-Omega residual vanishes.
  ConstraintMode probe = mode;
  if (probe.kind == Constraint::AbsOmegaFixed) {
    probe.kind = Constraint::OmegaFixed;
  }
  auto residual = [&](double y) {
    return evolution_time(probe, Complex(re_theta, y), target)
        .reality_residual;
  };

  int const n = 400;
  double const dy = (im_hi - im_lo) / double(n - 1);
  std::vector<double> ys(n), rs(n);
  for (int i = 0; i < n; ++i) {
    ys[i] = im_lo + dy * double(i);
    rs[i] = residual(ys[i]);
  }

  std::vector<double> roots;

  // Runs of numerically-real samples report their midpoint once.
  int i = 0;
  while (i < n) {
    if (std::abs(rs[i]) <= kResidualZero) {
      int j = i;
      while (j + 1 < n && std::abs(rs[j + 1]) <= kResidualZero) ++j;
      roots.push_back(0.5 * (ys[i] + ys[j]));
      i = j + 1;
    } else {
      ++i;
    }
  }

  // Sign changes between adjacent nonzero samples; changes that jump
  // across the +-pi cut of the argument are discontinuities, not roots.
  for (int k = 0; k + 1 < n; ++k) {
    double const ra = rs[k], rb = rs[k + 1];
    if (std::abs(ra) <= kResidualZero || std::abs(rb) <= kResidualZero) {
      continue;
    }
    if (ra * rb >= 0.0 || std::abs(ra - rb) >= kPi) continue;
    double lo = ys[k], hi = ys[k + 1];
    double rlo = ra;
    while (hi - lo > kRootTol) {
      double const mid = 0.5 * (lo + hi);
      double const rm = residual(mid);
      if (std::abs(rm) <= kResidualZero) {
        lo = hi = mid;
        break;
      }
      if ((rlo < 0.0) == (rm < 0.0)) {
        lo = mid;
        rlo = rm;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }

  std::sort(roots.begin(), roots.end());
  std::vector<RealityRoot> out;
  for (double y : roots) {
    if (!out.empty() && std::abs(y - out.back().im_theta) < 1e-9) continue;
    double const arg_om =
        evolution_time(mode, Complex(re_theta, y), target).arg_omega;
    out.push_back({y, arg_om});
  }
  return out;
}

std::vector<CriticalPoint> critical_points(Complex omega, Complex chi) {
  if (!is_finite(omega) || std::abs(omega) < 1e-12) {
    throw ExceptionalPointError("level splitting too close to zero");
  }
  if (!is_finite(chi) || chi == Complex(0.0, 0.0)) {
    throw std::invalid_argument("target polar distance must be nonzero");
  }
  std::vector<CriticalPoint> out;

  // Stationary point at th = pi/2: tau = |chi/Omega|, attained with a
  // real evolution time only when chi and Omega share their argument.
  double const mismatch = wrap_angle(std::arg(chi) - std::arg(omega));
  out.push_back({Complex(kPi / 2.0, 0.0), CriticalKind::Saddle,
                 std::abs(chi / omega), std::abs(mismatch) <= 1e-10,
                 mismatch});

  // Asymptotic infima: as Im th -> +-infinity the arctan term decays
  // like e^{-|Im th|} and tau -> 0 along the lines where it stays real.
  double const delta =
      wrap_angle(std::arg(omega) - std::arg(std::sin(chi / 2.0)));
  double const inf = std::numeric_limits<double>::infinity();
  out.push_back({Complex(kPi / 2.0 + delta, inf),
                 CriticalKind::AsymptoticInfimum, 0.0, true, 0.0});
  out.push_back({Complex(kPi / 2.0 - delta, -inf),
                 CriticalKind::AsymptoticInfimum, 0.0, true, 0.0});
  return out;
}

SaddleClassification classify_saddle(ConstraintMode const& mode,
                                     TargetSpec const& target,
                                     Complex theta0, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
  auto f = [&](double x, double y) {
    return evolution_time(mode, Complex(x, y), target).tau;
  };
  double const x0 = theta0.real(), y0 = theta0.imag();
  double const f0 = f(x0, y0);
  SaddleClassification cls{};
  cls.fxx = (f(x0 + h, y0) - 2.0 * f0 + f(x0 - h, y0)) / (h * h);
  cls.fyy = (f(x0, y0 + h) - 2.0 * f0 + f(x0, y0 - h)) / (h * h);
  cls.fxy = (f(x0 + h, y0 + h) - f(x0 + h, y0 - h) - f(x0 - h, y0 + h) +
             f(x0 - h, y0 - h)) /
            (4.0 * h * h);
  cls.det = cls.fxx * cls.fyy - cls.fxy * cls.fxy;
  cls.saddle = cls.det < 0.0;
  cls.real_line_minimum = cls.fxx > 0.0;
  return cls;
}

LandscapeGrid landscape(ConstraintMode const& mode, TargetSpec const& target,
                        AxisSpec re, AxisSpec im) {
  check_target(target);
  for (AxisSpec const& ax : {re, im}) {
    if (!std::isfinite(ax.lo) || !std::isfinite(ax.hi) ||
        !(ax.hi > ax.lo) || ax.cells < 1) {
      throw std::invalid_argument("landscape axes need lo < hi and at "
                                  "least one cell");
    }
  }

  // The abs-omega surface is the fixed-Omega surface evaluated at the
  // given value: |psi| is identical, and the argument column shows where
  // the given argument is already the solved one.
  ConstraintMode eval = mode;
  if (eval.kind == Constraint::AbsOmegaFixed) {
    eval.kind = Constraint::OmegaFixed;
  }

  LandscapeGrid grid;
  grid.re = re;
  grid.im = im;
  grid.re_centers.resize(std::size_t(re.cells));
  grid.im_centers.resize(std::size_t(im.cells));
  for (int i = 0; i < re.cells; ++i) {
    grid.re_centers[std::size_t(i)] =
        re.lo + (double(i) + 0.5) * (re.hi - re.lo) / double(re.cells);
  }
  for (int j = 0; j < im.cells; ++j) {
    grid.im_centers[std::size_t(j)] =
        im.lo + (double(j) + 0.5) * (im.hi - im.lo) / double(im.cells);
  }

  double const nan = std::numeric_limits<double>::quiet_NaN();
  grid.cells.resize(std::size_t(re.cells) * std::size_t(im.cells));
  for (int i = 0; i < re.cells; ++i) {
    for (int j = 0; j < im.cells; ++j) {
      Complex const th(grid.re_centers[std::size_t(i)],
                       grid.im_centers[std::size_t(j)]);
      TimeResult const tr = evolution_time(eval, th, target);
      LandscapeCell cell{};
      if (tr.branch_point) {
        cell = {nan, nan, true};
      } else {
        cell = {tr.tau, tr.reality_residual, false};
      }
      grid.cells[std::size_t(i) * std::size_t(im.cells) + std::size_t(j)] =
          cell;
    }
  }
  return grid;
}

}  // namespace qbrach
