#include "qbrach/hyperboloid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbrach {

namespace {

constexpr double kOnSurfaceTol = 1e-10;

void check_scenario(PTScenario const& sc) {
  if (!(sc.omega > 0.0) || !std::isfinite(sc.omega)) {
    throw std::invalid_argument("real-spectrum scenario needs omega > 0");
  }
  if (!std::isfinite(sc.eta) || !std::isfinite(sc.chi) ||
      !std::isfinite(sc.gamma)) {
    throw std::invalid_argument("scenario angles must be finite");
  }
}

double real_component(Complex z, double imag_tol, char const* what) {
  if (std::abs(z.imag()) > imag_tol) {
    throw std::domain_error(std::string("projection of ") + what +
                            " is not real: input is not a real-spectrum "
                            "trajectory");
  }
  return z.real();
}

Vec3 project(BlochVector const& n, Complex phi, double imag_tol) {
  Complex const sp = std::sin(phi);
  Complex const cp = std::cos(phi);
  Complex const m1 = n(2);
  Complex const m2 = n(0) * sp - n(1) * cp;
  Complex const m3 = Complex(0.0, 1.0) * (n(0) * cp + n(1) * sp);
  return Vec3(real_component(m1, imag_tol, "m1"),
              real_component(m2, imag_tol, "m2"),
              real_component(m3, imag_tol, "m3"));
}

}  // namespace

double metric_dot(Vec3 const& a, Vec3 const& b) {
  return a(0) * b(0) + a(1) * b(1) - a(2) * b(2);
}

Vec3 to_hyperboloid(BlochVector const& n, Complex phi, double imag_tol) {
  if (!is_finite(n) || !is_finite(phi)) {
    throw std::invalid_argument("projection inputs must be finite");
  }
  return project(n, phi, imag_tol);
}

Vec3 final_point(double chi, double eta) {
  if (!std::isfinite(chi) || !std::isfinite(eta)) {
    throw std::invalid_argument("final point needs finite angles");
  }
  double const th = std::tanh(eta);
  double const one_minus = 1.0 - std::cos(chi);
  double const s = std::sin(chi);
  return Vec3(std::cos(chi),
              std::sqrt(s * s + th * th * one_minus * one_minus),
              th * one_minus);
}

double pt_evolution_time(PTScenario const& sc) {
  check_scenario(sc);
  double const c2 = std::cos(sc.chi / 2.0);
  double const s2 = std::sin(sc.chi / 2.0);
  double const sh = std::sinh(sc.eta);
  return (2.0 / sc.omega) * std::atan2(s2, std::sqrt(c2 * c2 + sh * sh));
}

Vec3 geodesic(double s, Vec3 const& initial, Vec3 const& direction) {
  if (!std::isfinite(s)) {
    throw std::invalid_argument("arclength must be finite");
  }
  if (std::abs(metric_dot(initial, initial) - 1.0) > kOnSurfaceTol) {
    throw std::invalid_argument("geodesic start is off the hyperboloid");
  }
  if (std::abs(metric_dot(direction, direction) - 1.0) > kOnSurfaceTol) {
    throw std::invalid_argument("geodesic direction is not metric-unit");
  }
  if (std::abs(metric_dot(initial, direction)) > kOnSurfaceTol) {
    throw std::invalid_argument(
        "geodesic direction is not metric-orthogonal to the start");
  }
  return std::cos(s) * initial + std::sin(s) * direction;
}

Vec3 geodesic_direction(double eta, double chi) {
  if (!std::isfinite(eta) || !std::isfinite(chi)) {
    throw std::invalid_argument("direction needs finite angles");
  }
  if (eta == 0.0) return Vec3(0.0, 1.0, 0.0);
  double const c2 = std::cos(chi / 2.0);
  if (std::abs(c2) < 1e-12) {
    throw std::domain_error(
        "geodesic direction degenerates at chi = pi for eta != 0");
  }
  double const t = std::tanh(eta) * std::sin(chi / 2.0) / c2;
  return Vec3(0.0, std::sqrt(1.0 + t * t), t);
}

HyperPath map_pt_path(PTScenario const& sc, double t_end, int n_samples) {
  check_scenario(sc);
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw std::invalid_argument("path horizon must be nonnegative");
  }
  if (n_samples < 2) {
    throw std::invalid_argument("path needs at least two samples");
  }
  // Any real azimuth projects the real-spectrum trajectory to the same
  // real image; use the one that steers toward (chi, gamma).
  Complex const phi(sc.gamma + 3.14159265358979323846 / 2.0, 0.0);
  HamiltonianParams const params{
      Complex(0.0, 0.0), Complex(sc.omega, 0.0),
      Complex(3.14159265358979323846 / 2.0, sc.eta), phi};
  BlochVector const axis = precession_axis(params);

  HyperPath path;
  path.kind = PathParam::Time;
  path.param.resize(std::size_t(n_samples));
  path.points.resize(std::size_t(n_samples));
  path.velocities.resize(std::size_t(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    double const t =
        (n_samples == 1) ? 0.0
                         : t_end * double(i) / double(n_samples - 1);
    BlochVector const n = pt_closed(sc.omega, sc.eta, phi, t);
    path.param[std::size_t(i)] = t;
    path.points[std::size_t(i)] = project(n, phi, 1e-9);
    path.velocities[std::size_t(i)] =
        project(complex_cross(axis, n), phi, 1e-9);
  }
  return path;
}

HyperPath map_path(Trajectory const& traj, Complex phi, double imag_tol) {
  if (traj.t.size() != traj.n.size() || traj.t.empty()) {
    throw std::invalid_argument("trajectory samples are inconsistent");
  }
  BlochVector const axis = precession_axis(traj.params);
  HyperPath path;
  path.kind = PathParam::Time;
  path.param = traj.t;
  path.points.resize(traj.n.size());
  path.velocities.resize(traj.n.size());
  for (std::size_t i = 0; i < traj.n.size(); ++i) {
    path.points[i] = project(traj.n[i], phi, imag_tol);
    path.velocities[i] =
        project(complex_cross(axis, traj.n[i]), phi, imag_tol);
  }
  return path;
}

double path_length(HyperPath const& path) {
  std::size_t const n = path.param.size();
  if (n < 2 || path.points.size() != n) {
    throw std::invalid_argument("path needs at least two samples");
  }
  if (path.velocities.size() != n) {
    throw std::invalid_argument("path length needs stored velocities");
  }
  double const h = path.param[1] - path.param[0];
  if (!(h > 0.0)) {
    throw std::invalid_argument("path parameter must be increasing");
  }
  double const span = path.param.back() - path.param.front();
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(path.param[i] - path.param[i - 1] - h) >
        1e-9 * std::max(1.0, span)) {
      throw std::invalid_argument("quadrature requires uniform samples");
    }
  }

  std::vector<double> speed(n);
  for (std::size_t i = 0; i < n; ++i) {
    double const s2 = metric_dot(path.velocities[i], path.velocities[i]);
    if (s2 < -1e-10) {
      throw std::domain_error(
          "speed squared is negative: path is not realizable on this "
          "branch");
    }
    speed[i] = std::sqrt(std::max(s2, 0.0));
  }

  std::size_t const intervals = n - 1;
  double total = 0.0;
  std::size_t simpson_end = intervals;  // index of last sample used below
  if (intervals % 2 != 0) {
    if (intervals < 3) {  // single interval: trapezoid is all we have
      return 0.5 * h * (speed[0] + speed[1]);
    }
    simpson_end = intervals - 3;
    total += 3.0 * h / 8.0 *
             (speed[simpson_end] + 3.0 * speed[simpson_end + 1] +
              3.0 * speed[simpson_end + 2] + speed[simpson_end + 3]);
  }
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    total += h / 3.0 * (speed[i] + 4.0 * speed[i + 1] + speed[i + 2]);
  }
  return total;
}

double closed_form_length(PTScenario const& sc) {
  return pt_evolution_time(sc) * sc.omega * std::cosh(sc.eta);
}

BoundedTimes omega_constrained_bounds(double omega_bar, double chi,
                                      double omega) {
  if (!(omega_bar > 0.0) || !std::isfinite(omega_bar) ||
      !std::isfinite(chi)) {
    throw std::invalid_argument("bound needs omega_bar > 0 and finite chi");
  }
  if (!(omega > 0.0) || omega > omega_bar) {
    throw std::invalid_argument(
        "splitting must lie in (0, omega_bar] for a real eta");
  }
  double const s2 = std::sin(chi / 2.0);
  double const rad =
      omega_bar * omega_bar - omega * omega * s2 * s2;
  double const tau =
      (2.0 / omega) * std::atan2(omega * s2, std::sqrt(std::max(rad, 0.0)));
  return {tau, omega_bar * tau};
}

SpeedPair pt_speed(double omega, double eta) {
  if (!(omega > 0.0) || !std::isfinite(omega) || !std::isfinite(eta)) {
    throw std::invalid_argument("speed needs omega > 0 and finite eta");
  }
  return {omega * std::cosh(eta), omega};
}

SpeedPair hermitian_speed(double omega, double theta) {
  if (!(omega > 0.0) || !std::isfinite(omega) || !std::isfinite(theta)) {
    throw std::invalid_argument("speed needs omega > 0 and finite theta");
  }
  return {omega * std::sin(theta), omega};
}

}  // namespace qbrach
