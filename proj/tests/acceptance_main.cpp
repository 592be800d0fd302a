#include <cstdio>

#include "qbrach/acceptance.hpp"

int main() {
  auto const results = qbrach::run_acceptance("acceptance_landscapes");
  for (auto const& r : results) {
    std::printf("[%s] criterion %d: %s - %s\n", r.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.detail.c_str());
  }
  return qbrach::all_passed(results) ? 0 : 1;
}
