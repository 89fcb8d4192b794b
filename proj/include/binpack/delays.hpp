#pragma once

#include "binpack/instance.hpp"
#include "binpack/packing.hpp"

#include <optional>
#include <string>
#include <vector>

namespace binpack {

// Continuous, monotone non-decreasing waiting-cost function with d(0) = 0.
// Linear and power delays are unbounded; a piecewise-linear table extends its
// final segment's slope, so it is bounded exactly when that slope is zero.
struct DelayFunction {
  enum class Kind { Linear, Power, Table } kind = Kind::Linear;
  Rational rate{1};      // linear: rate*t ; power: rate * t^exponent
  Rational exponent{1};  // power only, > 0
  std::vector<std::pair<Rational, Rational>> table;  // after an implied (0,0)

  double eval(double t) const;
  Rational eval_exact(const Rational& t) const;  // linear and table kinds
  bool bounded() const;
  Rational bound() const;  // ultimate value of a bounded table
  void validate() const;   // throws std::invalid_argument
};

DelayFunction linear_delay(const Rational& rate);
DelayFunction power_delay(const Rational& rate, const Rational& exponent);
DelayFunction table_delay(std::vector<std::pair<Rational, Rational>> points);

struct TimedItem {
  Item item;
  Rational arrival{0};
  DelayFunction delay;
};

struct Phase {
  std::vector<std::size_t> items;  // item indices, in order
  double trigger = 0;              // packing time
  double delay = 0;                // accumulated pending delay at the trigger
  std::size_t bins = 0;
  bool flushed = false;  // final phase packed at the horizon below rho
};

struct SimulationTrace {
  double rho = 0;
  bool exact = false;  // all-linear instance: rational crossing times
  std::vector<Phase> phases;
  std::size_t total_bins = 0;
  double total_cost = 0;
  Rational total_cost_exact{0};  // meaningful when exact
};

// Phase-based online algorithm: the total pending delay of unpacked arrived
// items is monitored continuously; when it reaches rho, everything that
// arrived strictly before that instant is packed by FFD and a new phase
// starts. Bounded delays that can no longer reach rho require a horizon (at
// or after the last arrival), at which the remainder is flushed.
SimulationTrace simulate(const std::vector<TimedItem>& items, double rho,
                         std::optional<Rational> horizon = std::nullopt);

struct RhoResult {
  double rho = 0;
  double ratio_bound = 0;
  double pi_hat = 0;
};

// rho solves 1 + 1/rho = 1 + rho + pi_hat for the depth-pi_terms partial sum,
// i.e. rho = (-pi_hat + sqrt(pi_hat^2 + 4)) / 2.
RhoResult compute_rho(std::size_t pi_terms = 30);

struct OfflineSolution {
  std::vector<std::vector<std::size_t>> partition;  // item indices per bin
  std::size_t bins = 0;
  bool exact = false;
  double delay = 0;
  Rational delay_exact{0};

  double cost() const { return static_cast<double>(bins) + delay; }
  Rational cost_exact() const { return Rational(BigInt(bins)) + delay_exact; }
};

// True offline optimum by set-partition enumeration. Every bin closes at its
// last arrival (closing later cannot help: delays are non-decreasing). Ties
// break toward fewer bins, then the lexicographically first partition.
// Throws std::invalid_argument beyond `limit` items.
OfflineSolution offline_optimal(const std::vector<TimedItem>& items,
                                std::size_t limit = 12);

struct BoundCheck {
  bool pass = true;
  bool exact = false;
  double alg = 0;
  double opt_bins = 0;
  double opt_delay = 0;
  double affine_rhs = 0;  // (1 + 1/rho) D + (1 + rho + pi_hat) B
  double ratio_rhs = 0;   // max(1 + 1/rho, 1 + rho + pi_hat) (B + D)
  std::string detail;
};

// Verifies ALG <= (1+1/rho) D + (1+rho+pi) B and the ratio form, with pi a
// certified upper bound on the series limit (depth pi_terms plus tail), so
// the check is conservative. Exact comparison on all-linear instances;
// otherwise float with 1e-9 absolute tolerance.
BoundCheck check_bound(const SimulationTrace& tr, const OfflineSolution& off,
                       std::size_t pi_terms = 12);

}  // namespace binpack
