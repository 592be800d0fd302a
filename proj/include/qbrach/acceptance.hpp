#pragma once

#include <string>
#include <vector>

// End-to-end verification suite: each criterion exercises a closed form
// against an independent numerical check (adaptive integration, finite
// differences, quadrature, or dense scans) with pinned tolerances.  The
// suite is deterministic: random draws use fixed seeds, so two runs
// produce identical results.

namespace qbrach {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

// Runs every criterion (a thrown exception fails that criterion and is
// reported in its detail).  When artifact_dir is nonempty the landscape
// grids of the last criterion are also written there as CSV files.
std::vector<CriterionResult> run_acceptance(
    std::string const& artifact_dir = "");

// True when every result passed.
bool all_passed(std::vector<CriterionResult> const& results);

}  // namespace qbrach
