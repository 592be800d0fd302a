// Command-line front end: evolution-time evaluation, landscape sweeps,
// critical points, optimal Hamiltonians, trajectory evolution, the
// real-spectrum branch, constrained bounds, and the verification suite.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage error.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbrach/acceptance.hpp"
#include "qbrach/biorth.hpp"
#include "qbrach/brachistochrone.hpp"
#include "qbrach/dynamics.hpp"
#include "qbrach/hamiltonian.hpp"
#include "qbrach/hyperboloid.hpp"
#include "qbrach/io.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

using nlohmann::ordered_json;
using namespace qbrach;

// Thrown for malformed values discovered after flag parsing; mapped to
// exit code 2 like any other usage problem.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_plain(std::string const& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (std::exception const&) {
    throw UsageError("cannot parse number: '" + s + "'");
  }
  if (pos != s.size()) {
    throw UsageError("trailing characters in number: '" + s + "'");
  }
  return v;
}

// A real token: a decimal literal, optionally ending in "pi" as a
// multiplier ("pi", "-pi", "0.5pi").
double parse_real(std::string s) {
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw UsageError("empty number");
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    std::string const head = s.substr(0, s.size() - 2);
    if (head.empty() || head == "+") return kPi;
    if (head == "-") return -kPi;
    return parse_plain(head) * kPi;
  }
  return parse_plain(s);
}

// "re,im" (each a real token) or a single real token meaning re,0.
Complex parse_complex(std::string const& s) {
  std::size_t const comma = s.find(',');
  if (comma == std::string::npos) return Complex(parse_real(s), 0.0);
  if (s.find(',', comma + 1) != std::string::npos) {
    throw UsageError("expected 're,im': '" + s + "'");
  }
  return Complex(parse_real(s.substr(0, comma)),
                 parse_real(s.substr(comma + 1)));
}

ordered_json complex_json(Complex z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

ordered_json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "+inf" : "-inf";
}

struct OutputOpts {
  std::string path = "-";
  std::string format = "csv";
};

void add_output(CLI::App* cmd, OutputOpts& o) {
  cmd->add_option("-o,--output", o.path,
                  "Output file ('-' for stdout; relative paths honor "
                  "QBRACH_OUTPUT_DIR)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

void emit(OutputOpts const& o, std::string const& csv,
          ordered_json const& json) {
  std::string const body =
      (o.format == "csv") ? csv : json.dump(2) + "\n";
  if (o.path == "-") {
    std::fputs(body.c_str(), stdout);
  } else {
    io::write_file(io::resolve_output(o.path), body);
  }
}

struct ModeOpts {
  std::string kind = "omega";
  std::string omega;
  std::string delta_e;
};

void add_mode(CLI::App* cmd, ModeOpts& m) {
  cmd->add_option("--constraint", m.kind,
                  "Held-fixed quantity: omega (full complex splitting), "
                  "absomega (its magnitude), variance (energy variance)")
      ->check(CLI::IsMember({"omega", "absomega", "variance"}));
  cmd->add_option("--omega", m.omega, "Complex splitting 're,im'");
  cmd->add_option("--delta-e", m.delta_e,
                  "Energy variance (variance constraint)");
}

ConstraintMode make_mode(ModeOpts const& m) {
  if (m.kind == "variance") {
    if (m.delta_e.empty()) {
      throw UsageError("--constraint variance requires --delta-e");
    }
    return ConstraintMode::variance_fixed(parse_real(m.delta_e));
  }
  if (m.omega.empty()) {
    throw UsageError("--constraint " + m.kind + " requires --omega");
  }
  Complex const om = parse_complex(m.omega);
  return (m.kind == "omega") ? ConstraintMode::omega_fixed(om)
                             : ConstraintMode::abs_omega_fixed(om);
}

std::pair<double, double> parse_range(std::string const& s,
                                      char const* what) {
  std::size_t const colon = s.find(':');
  if (colon == std::string::npos ||
      s.find(':', colon + 1) != std::string::npos) {
    throw UsageError(std::string(what) + " must be 'lo:hi'");
  }
  return {parse_real(s.substr(0, colon)), parse_real(s.substr(colon + 1))};
}

std::pair<int, int> parse_grid(std::string const& s) {
  std::size_t const x = s.find('x');
  if (x == std::string::npos) throw UsageError("--grid must be 'NxM'");
  int const a = int(parse_plain(s.substr(0, x)));
  int const b = int(parse_plain(s.substr(x + 1)));
  if (a < 1 || b < 1) throw UsageError("--grid cells must be positive");
  return {a, b};
}

// --- subcommand payloads ----------------------------------------------

struct TauArgs {
  ModeOpts mode;
  std::string theta, chi, gamma = "0";
  OutputOpts out;
};

void run_tau(TauArgs const& a) {
  TargetSpec const target{parse_complex(a.chi), parse_complex(a.gamma)};
  TimeResult const r =
      evolution_time(make_mode(a.mode), parse_complex(a.theta), target);

  std::string csv =
      "tau,re_psi,im_psi,reality_residual,arg_omega,branch_point\n";
  csv += io::format_double(r.tau) + "," +
         io::format_double(r.psi.real()) + "," +
         io::format_double(r.psi.imag()) + "," +
         io::format_double(r.reality_residual) + "," +
         io::format_double(r.arg_omega) + "," +
         (r.branch_point ? "1" : "0") + "\n";
  ordered_json const j{{"tau", r.tau},
                       {"psi", complex_json(r.psi)},
                       {"reality_residual", r.reality_residual},
                       {"arg_omega", r.arg_omega},
                       {"branch_point", r.branch_point}};
  emit(a.out, csv, j);
}

struct LandscapeArgs {
  ModeOpts mode;
  std::string chi, gamma = "0";
  std::string grid = "120x120";
  std::string re_range = "0:pi", im_range = "-2:2";
  OutputOpts out;
};

void run_landscape(LandscapeArgs const& a) {
  TargetSpec const target{parse_complex(a.chi), parse_complex(a.gamma)};
  auto const [nx, ny] = parse_grid(a.grid);
  auto const [rlo, rhi] = parse_range(a.re_range, "--re-range");
  auto const [ilo, ihi] = parse_range(a.im_range, "--im-range");
  LandscapeGrid const g = landscape(make_mode(a.mode), target,
                                    {rlo, rhi, nx}, {ilo, ihi, ny});

  ordered_json cells = ordered_json::array();
  for (int i = 0; i < g.re.cells; ++i) {
    for (int j = 0; j < g.im.cells; ++j) {
      LandscapeCell const& c = g.at(i, j);
      ordered_json row{{"re_theta", g.re_centers[std::size_t(i)]},
                       {"im_theta", g.im_centers[std::size_t(j)]}};
      if (c.branch_point) {
        row["flag"] = "B";
      } else {
        row["abs_psi"] = c.abs_psi;
        row["arg_psi"] = c.arg_psi;
      }
      cells.push_back(std::move(row));
    }
  }
  emit(a.out, io::landscape_csv(g), ordered_json{{"cells", cells}});
}

struct CriticalArgs {
  std::string omega, chi;
  bool classify = false;
  OutputOpts out;
};

void run_critical(CriticalArgs const& a) {
  Complex const omega = parse_complex(a.omega);
  Complex const chi = parse_complex(a.chi);
  auto const pts = critical_points(omega, chi);

  std::string csv = io::critical_points_csv(pts);
  ordered_json rows = ordered_json::array();
  for (CriticalPoint const& p : pts) {
    rows.push_back(
        {{"re_theta", p.theta.real()},
         {"im_theta", finite_or_string(p.theta.imag())},
         {"kind", p.kind == CriticalKind::Saddle ? "saddle" : "asymptotic"},
         {"tau", p.tau},
         {"admissible", p.admissible},
         {"arg_mismatch", p.arg_mismatch}});
  }
  ordered_json j{{"critical_points", rows}};
  if (a.classify) {
    SaddleClassification const cls =
        classify_saddle(ConstraintMode::omega_fixed(omega),
                        TargetSpec{chi, Complex(0.0, 0.0)},
                        Complex(kPi / 2.0, 0.0));
    j["classification"] = {{"fxx", cls.fxx},
                           {"fyy", cls.fyy},
                           {"fxy", cls.fxy},
                           {"det", cls.det},
                           {"saddle", cls.saddle},
                           {"real_line_minimum", cls.real_line_minimum}};
    csv += "fxx,fyy,fxy,det,saddle,real_line_minimum\n";
    csv += io::format_double(cls.fxx) + "," + io::format_double(cls.fyy) +
           "," + io::format_double(cls.fxy) + "," +
           io::format_double(cls.det) + "," + (cls.saddle ? "1" : "0") +
           "," + (cls.real_line_minimum ? "1" : "0") + "\n";
  }
  emit(a.out, csv, j);
}

struct OptimalArgs {
  std::string chi, gamma = "0", omega, lambda0 = "0";
  OutputOpts out;
};

void run_optimal(OptimalArgs const& a) {
  TargetSpec const target{parse_complex(a.chi), parse_complex(a.gamma)};
  Complex const omega = parse_complex(a.omega);
  Mat2 const h = optimal_hamiltonian(boundary_from_target(target), omega,
                                     parse_complex(a.lambda0));
  double const tau = std::abs(target.chi / omega);

  std::string csv =
      "h11_re,h11_im,h12_re,h12_im,h21_re,h21_im,h22_re,h22_im,tau\n";
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      csv += io::format_double(h(r, c).real()) + "," +
             io::format_double(h(r, c).imag()) + ",";
    }
  }
  csv += io::format_double(tau) + "\n";
  ordered_json const j{{"h11", complex_json(h(0, 0))},
                       {"h12", complex_json(h(0, 1))},
                       {"h21", complex_json(h(1, 0))},
                       {"h22", complex_json(h(1, 1))},
                       {"tau", tau}};
  emit(a.out, csv, j);
}

struct EvolveArgs {
  std::string lambda0 = "0", omega, theta, phi, chi, gamma = "0";
  std::string method = "closed";
  double t_end = 0.0;
  int samples = 512;
  double tol = 1e-10;
  OutputOpts out;
};

void run_evolve(EvolveArgs const& a) {
  if (a.phi.empty() == a.chi.empty()) {
    throw UsageError("evolve needs exactly one of --phi or --chi");
  }
  Complex const theta = parse_complex(a.theta);
  Complex phi;
  if (!a.phi.empty()) {
    phi = parse_complex(a.phi);
  } else {
    phi = phi_from_target(
        theta, TargetSpec{parse_complex(a.chi), parse_complex(a.gamma)});
  }
  HamiltonianParams const p{parse_complex(a.lambda0),
                            parse_complex(a.omega), theta, phi};
  Trajectory const traj =
      (a.method == "closed")
          ? closed_trajectory(p, a.t_end, a.samples)
          : integrate_bloch(p, a.t_end, a.tol, a.samples);

  ordered_json samples = ordered_json::array();
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    samples.push_back({{"t", traj.t[i]},
                       {"n1", complex_json(traj.n[i](0))},
                       {"n2", complex_json(traj.n[i](1))},
                       {"n3", complex_json(traj.n[i](2))}});
  }
  emit(a.out, io::trajectory_csv(traj),
       ordered_json{{"phi", complex_json(phi)}, {"samples", samples}});
}

struct PtTimeArgs {
  std::string omega = "1", chi = "pi", eta = "0", gamma = "0";
  OutputOpts out;
};

PTScenario make_scenario(PtTimeArgs const& a) {
  return PTScenario{parse_real(a.omega), parse_real(a.eta),
                    parse_real(a.chi), parse_real(a.gamma)};
}

void run_pt_time(PtTimeArgs const& a) {
  PTScenario const sc = make_scenario(a);
  double const tau = pt_evolution_time(sc);
  emit(a.out, "tau\n" + io::format_double(tau) + "\n",
       ordered_json{{"tau", tau}});
}

struct PtLengthArgs {
  PtTimeArgs base;
  int samples = 4097;
};

void run_pt_length(PtLengthArgs const& a) {
  PTScenario const sc = make_scenario(a.base);
  double const tau = pt_evolution_time(sc);
  double const closed = closed_form_length(sc);
  double const quad = path_length(map_pt_path(sc, tau, a.samples));
  std::string const csv = "tau,length_closed,length_quadrature\n" +
                          io::format_double(tau) + "," +
                          io::format_double(closed) + "," +
                          io::format_double(quad) + "\n";
  emit(a.base.out, csv,
       ordered_json{{"tau", tau},
                    {"length_closed", closed},
                    {"length_quadrature", quad}});
}

struct BoundsArgs {
  std::string omega_bar = "1", chi = "pi";
  std::string omega_grid;
  OutputOpts out;
};

void run_bounds(BoundsArgs const& a) {
  double const bar = parse_real(a.omega_bar);
  double const chi = parse_real(a.chi);

  std::vector<double> omegas;
  if (a.omega_grid.empty()) throw UsageError("bounds requires --omega-grid");
  std::size_t const c1 = a.omega_grid.find(':');
  std::size_t const c2 =
      (c1 == std::string::npos) ? c1 : a.omega_grid.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    throw UsageError("--omega-grid must be 'lo:hi:count'");
  }
  double const lo = parse_real(a.omega_grid.substr(0, c1));
  double const hi = parse_real(a.omega_grid.substr(c1 + 1, c2 - c1 - 1));
  int const count = int(parse_plain(a.omega_grid.substr(c2 + 1)));
  if (count < 2) throw UsageError("--omega-grid needs at least 2 points");
  for (int i = 0; i < count; ++i) {
    omegas.push_back(lo + (hi - lo) * double(i) / double(count - 1));
  }

  std::vector<BoundedTimes> values;
  ordered_json rows = ordered_json::array();
  for (double om : omegas) {
    values.push_back(omega_constrained_bounds(bar, chi, om));
    rows.push_back({{"omega", om},
                    {"tau", values.back().tau},
                    {"length", values.back().length}});
  }
  emit(a.out, io::bounds_csv(omegas, values),
       ordered_json{{"rows", rows}});
}

struct VerifyArgs {
  std::string artifacts;
};

int run_verify(VerifyArgs const& a) {
  std::string dir = a.artifacts;
  if (!dir.empty()) dir = io::resolve_output(dir).string();
  auto const results = run_acceptance(dir);
  for (auto const& r : results) {
    std::printf("[%s] criterion %d: %s - %s\n", r.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.detail.c_str());
  }
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Time-optimal two-level evolution: complex Bloch trajectories, "
      "evolution-time landscapes, and the real-spectrum branch"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value config file mirroring "
                                 "the long flag names");

  TauArgs tau_args;
  auto* tau_cmd = app.add_subcommand(
      "tau", "Evolution time for one polar angle under a constraint");
  add_mode(tau_cmd, tau_args.mode);
  tau_cmd->add_option("--theta", tau_args.theta, "Complex polar angle")
      ->required();
  tau_cmd->add_option("--chi", tau_args.chi, "Target polar distance")
      ->required();
  tau_cmd->add_option("--gamma", tau_args.gamma, "Target azimuth");
  add_output(tau_cmd, tau_args.out);
  tau_cmd->callback([&] { run_tau(tau_args); });

  LandscapeArgs ls_args;
  auto* ls_cmd = app.add_subcommand(
      "landscape", "Evolution-time surface over the complex polar angle");
  add_mode(ls_cmd, ls_args.mode);
  ls_cmd->add_option("--chi", ls_args.chi, "Target polar distance")
      ->required();
  ls_cmd->add_option("--gamma", ls_args.gamma, "Target azimuth");
  ls_cmd->add_option("--grid", ls_args.grid, "Cells as 'NxM'");
  ls_cmd->add_option("--re-range", ls_args.re_range, "Re th axis 'lo:hi'");
  ls_cmd->add_option("--im-range", ls_args.im_range, "Im th axis 'lo:hi'");
  add_output(ls_cmd, ls_args.out);
  ls_cmd->callback([&] { run_landscape(ls_args); });

  CriticalArgs cr_args;
  auto* cr_cmd = app.add_subcommand(
      "critical", "Stationary structure of the evolution time");
  cr_cmd->add_option("--omega", cr_args.omega, "Complex splitting")
      ->required();
  cr_cmd->add_option("--chi", cr_args.chi, "Target polar distance")
      ->required();
  cr_cmd->add_flag("--classify", cr_args.classify,
                   "Add finite-difference curvature at th = pi/2");
  add_output(cr_cmd, cr_args.out);
  cr_cmd->callback([&] { run_critical(cr_args); });

  OptimalArgs op_args;
  auto* op_cmd = app.add_subcommand(
      "optimal-ham", "Time-optimal Hamiltonian for a target state");
  op_cmd->add_option("--chi", op_args.chi, "Target polar distance")
      ->required();
  op_cmd->add_option("--gamma", op_args.gamma, "Target azimuth");
  op_cmd->add_option("--omega", op_args.omega, "Complex splitting")
      ->required();
  op_cmd->add_option("--lambda0", op_args.lambda0, "Trace offset");
  add_output(op_cmd, op_args.out);
  op_cmd->callback([&] { run_optimal(op_args); });

  EvolveArgs ev_args;
  auto* ev_cmd = app.add_subcommand(
      "evolve", "Bloch trajectory (closed form or adaptive integration)");
  ev_cmd->add_option("--lambda0", ev_args.lambda0, "Trace offset");
  ev_cmd->add_option("--omega", ev_args.omega, "Complex splitting")
      ->required();
  ev_cmd->add_option("--theta", ev_args.theta, "Complex polar angle")
      ->required();
  ev_cmd->add_option("--phi", ev_args.phi, "Complex azimuth");
  ev_cmd->add_option("--chi", ev_args.chi,
                     "Target polar distance (azimuth computed)");
  ev_cmd->add_option("--gamma", ev_args.gamma, "Target azimuth");
  ev_cmd->add_option("--method", ev_args.method, "closed or ode")
      ->check(CLI::IsMember({"closed", "ode"}));
  ev_cmd->add_option("--t-end", ev_args.t_end, "Evolution horizon")
      ->required();
  ev_cmd->add_option("--samples", ev_args.samples, "Sample count");
  ev_cmd->add_option("--tol", ev_args.tol, "Integration tolerance");
  add_output(ev_cmd, ev_args.out);
  ev_cmd->callback([&] { run_evolve(ev_args); });

  PtTimeArgs pt_args;
  auto* pt_cmd = app.add_subcommand(
      "pt-time", "Arrival time on the real-spectrum branch");
  pt_cmd->add_option("--omega", pt_args.omega, "Splitting > 0");
  pt_cmd->add_option("--chi", pt_args.chi, "Target polar distance");
  pt_cmd->add_option("--eta", pt_args.eta, "Im th");
  pt_cmd->add_option("--gamma", pt_args.gamma, "Target azimuth");
  add_output(pt_cmd, pt_args.out);
  pt_cmd->callback([&] { run_pt_time(pt_args); });

  PtLengthArgs pl_args;
  auto* pl_cmd = app.add_subcommand(
      "pt-length", "Path length on the hyperboloid (closed + quadrature)");
  pl_cmd->add_option("--omega", pl_args.base.omega, "Splitting > 0");
  pl_cmd->add_option("--chi", pl_args.base.chi, "Target polar distance");
  pl_cmd->add_option("--eta", pl_args.base.eta, "Im th");
  pl_cmd->add_option("--gamma", pl_args.base.gamma, "Target azimuth");
  pl_cmd->add_option("--samples", pl_args.samples, "Quadrature samples");
  add_output(pl_cmd, pl_args.base.out);
  pl_cmd->callback([&] { run_pt_length(pl_args); });

  BoundsArgs bd_args;
  auto* bd_cmd = app.add_subcommand(
      "bounds", "Constrained time/length sweep over the splitting");
  bd_cmd->add_option("--omega-bar", bd_args.omega_bar,
                     "Fixed magnitude bound");
  bd_cmd->add_option("--chi", bd_args.chi, "Target polar distance");
  bd_cmd->add_option("--omega-grid", bd_args.omega_grid,
                     "Sweep as 'lo:hi:count'")
      ->required();
  add_output(bd_cmd, bd_args.out);
  bd_cmd->callback([&] { run_bounds(bd_args); });

  VerifyArgs vf_args;
  auto* vf_cmd =
      app.add_subcommand("verify", "Run the full verification suite");
  vf_cmd->add_option("--artifacts", vf_args.artifacts,
                     "Directory for landscape CSV artifacts");
  int verify_rc = 0;
  vf_cmd->callback([&] { verify_rc = run_verify(vf_args); });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (UsageError const& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (std::exception const& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return verify_rc;
}
