#pragma once

#include "binpack/exact_solver.hpp"
#include "binpack/instance.hpp"
#include "binpack/packing.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace binpack {

// Bonus applies on the half-open interval (lower, upper].
struct BonusInterval {
  Rational lower;
  Rational upper;
  Rational bonus;
};

struct WeightFunction {
  enum class Kind { PiecewiseBonus, VFormula } kind = Kind::PiecewiseBonus;
  std::string name;
  Rational coefficient;                // linear part, piecewise-bonus only
  std::vector<BonusInterval> bonuses;  // ascending, disjoint

  // Exact weight for x in [0,1]. The v formula maps 0 to 0, x > 1/2 to 1,
  // and x in (1/(j+1), 1/j] to x + 1/(j(j+1)).
  Rational eval(const Rational& x) const;
};

// Builtins: "w195" (9/5 x + 3/20 above 1/2), "wk3" (21/13 x + four interval
// bonuses), "wk4" (28/19 x + four interval bonuses over 77805), "v".
WeightFunction make_builtin(std::string_view name);

Rational total_weight(const WeightFunction& f, const std::vector<ItemClass>& classes);

struct CapViolation {
  std::vector<Rational> bin;
  Rational weight;
};

// Every supplied bin must already be feasible (load <= 1); throws otherwise.
// Returns the bins whose total weight exceeds cap, exact comparison.
std::vector<CapViolation> bin_weight_cap_check(
    const WeightFunction& f, const Rational& cap,
    const std::vector<std::vector<Rational>>& bins);

struct GridSpec {
  unsigned q = 420;
  unsigned max_items = 3;
  Rational min_size_exclusive = Rational(1, 4);
};

// Exhaustive enumeration of all multisets of <= max_items grid sizes i/q with
// i/q > min_size_exclusive and total <= 1.
std::vector<CapViolation> bin_weight_cap_check_grid(const WeightFunction& f,
                                                    const Rational& cap,
                                                    const GridSpec& spec);

// Seeded uniform random feasible bins; the same (trials, seed) always yields
// the same bins, so several weight functions can be checked on one family.
std::vector<std::vector<Rational>> random_feasible_bins(std::size_t trials,
                                                        std::uint64_t seed);

std::vector<CapViolation> bin_weight_cap_check_random(const WeightFunction& f,
                                                      const Rational& cap,
                                                      std::size_t trials,
                                                      std::uint64_t seed);

enum class LemmaOutcome { Holds, Violated, PreconditionFailed };

struct LemmaCheck {
  LemmaOutcome outcome = LemmaOutcome::PreconditionFailed;
  BigInt opt{0};
  std::size_t ffd_bins = 0;
  Rational weight{0};
};

// The per-cluster weight lemma: when the cluster's exact optimum is at least
// k, its total weight must dominate its FFD bin count.
LemmaCheck cluster_weight_dominates_ffd(const WeightFunction& f,
                                        const std::vector<ItemClass>& cluster, int k,
                                        const SolverLimits& lim = {});

// FFD(J) <= V(J) + 1, exact.
bool ffd_v_bound_check(const std::vector<ItemClass>& classes);

// ---- seeded suites --------------------------------------------------------

struct SuiteResult {
  std::size_t tested = 0;
  std::size_t violations = 0;
  std::vector<std::string> details;  // first few failures, human readable
};

// Random clusters of <= 12 items whose exact optimum is >= k; counts only
// qualifying clusters toward `trials`.
SuiteResult lemma_suite(const WeightFunction& f, int k, std::size_t trials,
                        std::uint64_t seed);

// Random multisets of <= 40 grid items: checks FFD <= V+1 and the FFD
// structural invariants (pairwise loads, large-item prefix, opening rule).
SuiteResult ffd_property_suite(std::size_t trials, std::uint64_t seed);

}  // namespace binpack
