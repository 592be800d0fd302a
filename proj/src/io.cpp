#include "qbrach/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace qbrach::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Defend determinism against a caller-modified numeric locale.
  for (char& c : buf) {
    if (c == ',') c = '.';
    if (c == '\0') break;
  }
  return buf;
}

std::string landscape_csv(LandscapeGrid const& grid) {
  std::string out = "re_theta,im_theta,abs_psi,arg_psi,flag\n";
  for (int i = 0; i < grid.re.cells; ++i) {
    for (int j = 0; j < grid.im.cells; ++j) {
      LandscapeCell const& cell = grid.at(i, j);
      out += format_double(grid.re_centers[std::size_t(i)]);
      out += ',';
      out += format_double(grid.im_centers[std::size_t(j)]);
      out += ',';
      if (cell.branch_point) {
        out += ",,B\n";
      } else {
        out += format_double(cell.abs_psi);
        out += ',';
        out += format_double(cell.arg_psi);
        out += ",\n";
      }
    }
  }
  return out;
}

std::string trajectory_csv(Trajectory const& traj) {
  std::string out = "t,re_n1,im_n1,re_n2,im_n2,re_n3,im_n3\n";
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    out += format_double(traj.t[i]);
    for (int k = 0; k < 3; ++k) {
      out += ',';
      out += format_double(traj.n[i](k).real());
      out += ',';
      out += format_double(traj.n[i](k).imag());
    }
    out += '\n';
  }
  return out;
}

std::string hyper_path_csv(HyperPath const& path) {
  std::string out = (path.kind == PathParam::Time) ? "t" : "s";
  out += ",m1,m2,m3\n";
  for (std::size_t i = 0; i < path.param.size(); ++i) {
    out += format_double(path.param[i]);
    for (int k = 0; k < 3; ++k) {
      out += ',';
      out += format_double(path.points[i](k));
    }
    out += '\n';
  }
  return out;
}

std::string reality_roots_csv(std::vector<RealityRoot> const& roots) {
  std::string out = "im_theta,arg_omega\n";
  for (RealityRoot const& r : roots) {
    out += format_double(r.im_theta);
    out += ',';
    out += format_double(r.arg_omega);
    out += '\n';
  }
  return out;
}

std::string critical_points_csv(std::vector<CriticalPoint> const& pts) {
  std::string out = "re_theta,im_theta,kind,tau,admissible,arg_mismatch\n";
  for (CriticalPoint const& p : pts) {
    out += format_double(p.theta.real());
    out += ',';
    out += format_double(p.theta.imag());
    out += ',';
    out += (p.kind == CriticalKind::Saddle) ? "saddle" : "asymptotic";
    out += ',';
    out += format_double(p.tau);
    out += ',';
    out += p.admissible ? '1' : '0';
    out += ',';
    out += format_double(p.arg_mismatch);
    out += '\n';
  }
  return out;
}

std::string bounds_csv(std::vector<double> const& omegas,
                       std::vector<BoundedTimes> const& values) {
  if (omegas.size() != values.size()) {
    throw std::invalid_argument("bounds rows are inconsistent");
  }
  std::string out = "omega,tau,length\n";
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    out += format_double(omegas[i]);
    out += ',';
    out += format_double(values[i].tau);
    out += ',';
    out += format_double(values[i].length);
    out += '\n';
  }
  return out;
}

std::filesystem::path resolve_output(std::string const& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  if (char const* dir = std::getenv("QBRACH_OUTPUT_DIR")) {
    if (*dir != '\0') return std::filesystem::path(dir) / p;
  }
  return p;
}

void write_file(std::filesystem::path const& path,
                std::string const& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot open output file: " + path.string());
  }
  f.write(content.data(), std::streamsize(content.size()));
  if (!f) {
    throw std::runtime_error("failed writing output file: " +
                             path.string());
  }
}

}  // namespace qbrach::io
