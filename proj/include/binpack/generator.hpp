#pragma once

#include "binpack/clustering.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace binpack {

// Worst-case clustered instances built from perturbed reciprocal sizes. Item
// families are named by the reciprocal they hug: 2 (sizes near 1/2; always
// required), 3 (near 1/3), 6 (near 1/6), and the tail families 7, 43, 1807
// (identical sizes just above 1/t).
struct GeneratorParams {
  int k = 3;
  long long n = 90;  // number of bins in the certified global packing
  int m = 1;         // levels of the family-3/6 ladder
  std::set<int> families{2, 3};

  // Perturbation ladder: nu = 1/(base_scale * N * 3^(3M+3) * tail_factor)
  // with tail_factor widening nu when tail families shrink the slack of the
  // fullest certificate bin; type-(2,i) offsets are i*nu and the type-3/6
  // offsets are ladder_k * 3^(3i-c) * nu with ladder_k the smallest power of
  // 3 above 10N. Every inequality this must preserve is re-checked exactly by
  // verify_construction.
  long long base_scale = 100;
};

struct GeneratedConstruction {
  ClusteredInstance instance;
  Certificate certificate;
  std::map<std::string, BigInt> predicted_cluster_cost;
  BigInt large_item_count{0};
  BigInt predicted_sum_opt{0};
  BigInt predicted_global_opt{0};
  // ladder provenance
  Rational nu;
  BigInt ladder_k{1};
};

// Smallest N-divisor making every family count integral for these params.
BigInt required_divisor(const GeneratorParams& p);

// Emits all item classes, the cluster layout (including the merged leftover
// cluster, whose exact cost comes from the solver), and the pattern-level
// global certificate. Throws std::invalid_argument on divisibility or family
// violations, naming the failing requirement.
GeneratedConstruction generate_construction(const GeneratorParams& p);

struct VerificationReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<std::string> checks;  // one line per check family that ran
  BigInt sum_cluster_opt{0};
  BigInt global_opt{0};
  Rational ratio{0};
};

// Re-derives, with exact arithmetic: certificate conservation and
// feasibility, global optimality via the large-item count, per-cluster
// optimal costs via the exact solver, and the strict inequalities each
// cluster family relies on.
VerificationReport verify_construction(const GeneratedConstruction& c,
                                       const SolverLimits& lim = {});

// Closed-form bound for the price of clustering at minimum per-cluster
// optimum k >= 4; exact rational.
Rational lb_formula(int k);

// Limit of the k=3 construction as N, M grow: 19/10 + 2/18065 + 2/425 + 2/65.
Rational k3_limit();

// Finite-parameter prediction of sum(OPT_i)/N for these params, counting the
// merged cluster at cost k (its solver-determined cost can only be higher).
Rational finite_prediction(const GeneratorParams& p);

}  // namespace binpack
