#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace binpack {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double ms = 0;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::size_t pi_depth = 30;
  std::size_t cap_random_bins = 100000;
  std::size_t lemma_trials = 10000;
  std::size_t ffd_trials = 10000;
  std::size_t delay_trials = 10000;
};

// The full verification battery; one result per criterion. When `progress`
// is given, prints one pass/fail line per criterion as it completes.
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt = {},
                                            std::ostream* progress = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace binpack
