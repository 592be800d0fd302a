#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

// Adaptive Dormand-Prince 5(4) integration over fixed-size complex Eigen
// states.  Error is controlled per unit of integration span (accepted
// local error <= tol * h / span, floored near machine precision), so the
// accumulated error over the whole span stays close to tol instead of
// tol-times-the-step-count.

namespace qbrach::ode {

struct StepUnderflow : std::runtime_error {
  explicit StepUnderflow(double t)
      : std::runtime_error("adaptive step size underflow"), t_last(t) {}
  double t_last;
};

namespace detail {

// Dormand-Prince coefficients.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                        c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights (error estimator).
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                        e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace detail

// Integrate y' = rhs(t, y) from t0 to t1 (t1 >= t0).  `span` is the full
// horizon used for the per-unit-span error budget; callers splitting a
// trajectory into output intervals pass the total horizon so the budget
// is shared.  If `accepted` is non-null every accepted step (t, y) is
// appended (the initial state is not).
template <class State, class RhsF>
State integrate_adaptive(RhsF&& rhs, double t0, State y, double t1,
                         double tol, double span,
                         std::vector<std::pair<double, State>>* accepted =
                             nullptr) {
  using namespace detail;
  if (!(t1 >= t0)) throw std::invalid_argument("integrate_adaptive: t1 < t0");
  if (t1 == t0) return y;
  if (span <= 0.0) span = t1 - t0;

  auto err_ratio = [](State const& err, State const& y0, State const& y1,
                      double thresh) {
    double r = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
      double const scale =
          thresh * (1.0 + std::max(std::abs(y0(i)), std::abs(y1(i))));
      double const q = std::abs(err(i)) / scale;
      if (q > r) r = q;
    }
    return r;
  };

  double t = t0;
  State k1 = rhs(t, y);

  // Initial step: conservative fraction of the span scaled by the state
  // velocity.
  double h;
  {
    double ynorm = 0.0, fnorm = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      ynorm = std::max(ynorm, std::abs(y(i)));
      fnorm = std::max(fnorm, std::abs(k1(i)));
    }
    h = (fnorm > 1e-12) ? 0.01 * (ynorm + 1.0) / fnorm : 0.1 * span;
    h = std::min(h, t1 - t0);
  }

  double const h_min_floor = 1e-14;
  while (t < t1) {
    h = std::min(h, t1 - t);
    if (h < h_min_floor * std::max(1.0, std::abs(t))) throw StepUnderflow(t);

    State const k2 = rhs(t + c2 * h, (y + h * (a21 * k1)).eval());
    State const k3 = rhs(t + c3 * h, (y + h * (a31 * k1 + a32 * k2)).eval());
    State const k4 =
        rhs(t + c4 * h, (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
    State const k5 = rhs(
        t + c5 * h,
        (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
    State const k6 =
        rhs(t + h, (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 +
                             a65 * k5))
                       .eval());
    State const ynew =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    State const k7 = rhs(t + h, ynew);  // FSAL
    State const errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 +
                            e7 * k7);

    // Per-unit-span budget with a floor a few ulps above machine noise.
    double const thresh = std::max(tol * h / span, 4e-16);
    double const r = err_ratio(errv, y, ynew, thresh);

    if (r <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;
      if (accepted) accepted->emplace_back(t, y);
    }
    double fac = 0.9 * std::pow(r > 1e-30 ? 1.0 / r : 1e30, 0.2);
    fac = std::min(5.0, std::max(0.2, fac));
    h *= fac;
  }
  return y;
}

}  // namespace qbrach::ode
