#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qbrach/brachistochrone.hpp"
#include "qbrach/dynamics.hpp"
#include "qbrach/hyperboloid.hpp"

// Deterministic text output: every float is printed with %.17g (exact
// round trip), lines end with '\n', and the decimal separator is '.'
// regardless of environment.  No field ever contains a comma or a quote,
// so no quoting is applied.  Identical inputs produce byte-identical
// documents.

namespace qbrach::io {

// %.17g with a locale-independent decimal point.
std::string format_double(double v);

// Columns: re_theta, im_theta, abs_psi, arg_psi, flag.  Rows sweep the
// Re axis outermost, both axes ascending.  Branch-point cells leave the
// value fields empty and set flag=B; regular cells leave flag empty.
std::string landscape_csv(LandscapeGrid const& grid);

// Columns: t, re_n1, im_n1, re_n2, im_n2, re_n3, im_n3.
std::string trajectory_csv(Trajectory const& traj);

// Columns: t (or s for arclength parameterization), m1, m2, m3.
std::string hyper_path_csv(HyperPath const& path);

// Columns: im_theta, arg_omega.
std::string reality_roots_csv(std::vector<RealityRoot> const& roots);

// Columns: re_theta, im_theta, kind, tau, admissible, arg_mismatch; kind
// is "saddle" or "asymptotic", admissible is 1/0.
std::string critical_points_csv(std::vector<CriticalPoint> const& pts);

// Columns: omega, tau, length (one row per swept splitting).
std::string bounds_csv(std::vector<double> const& omegas,
                       std::vector<BoundedTimes> const& values);

// Relative paths are placed under $QBRACH_OUTPUT_DIR when that variable
// is set; absolute paths and unset environments pass through unchanged.
std::filesystem::path resolve_output(std::string const& path);

// Writes bytes exactly as given; throws std::runtime_error on failure.
void write_file(std::filesystem::path const& path,
                std::string const& content);

}  // namespace qbrach::io
