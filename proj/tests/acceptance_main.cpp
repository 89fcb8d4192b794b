// Acceptance battery: one pass/fail line per criterion, exit 0 only if all
// pass. BINPACK_ACCEPT_QUICK=1 trims trial counts for a fast local pass; the
// default run uses the full configuration.
#include "binpack/suite.hpp"

#include <cstdlib>
#include <iostream>

int main() {
  binpack::SuiteOptions opt;
  const char* quick = std::getenv("BINPACK_ACCEPT_QUICK");
  if (quick && quick[0] == '1') {
    opt.pi_depth = 12;
    opt.cap_random_bins = 10000;
    opt.lemma_trials = 1000;
    opt.ffd_trials = 1000;
    opt.delay_trials = 1000;
  }
  auto results = binpack::run_acceptance(opt, &std::cout);
  bool ok = binpack::all_passed(results);
  std::cout << (ok ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << "\n";
  return ok ? 0 : 1;
}
