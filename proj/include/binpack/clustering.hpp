#pragma once

#include "binpack/exact_solver.hpp"
#include "binpack/instance.hpp"

#include <map>
#include <string>
#include <vector>

namespace binpack {

// Items tagged by cluster; a valid instance has per-cluster optimum >= k.
struct ClusteredInstance {
  int k = 3;
  std::map<std::string, std::vector<ItemClass>> clusters;

  std::vector<ItemClass> all_classes() const;
};

// A pattern-level witness of a global packing: each pattern is a bin
// composition (size, per-bin count) used `multiplicity` times.
struct CertificatePattern {
  std::vector<std::pair<Rational, BigInt>> entries;
  BigInt multiplicity{1};
};

struct Certificate {
  std::vector<CertificatePattern> patterns;
  BigInt bin_count() const;
};

struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> failures;
  BigInt bin_count{0};
  BigInt large_items{0};  // items of size > 1/2 in the instance
};

// Conservation (certificate consumes exactly the instance, aggregated by
// size), per-pattern feasibility, and the large-item count. When the
// large-item count equals the certificate bin count, the certificate packing
// is globally optimal: no bin holds two items above 1/2.
CertificateCheck check_certificate(const std::vector<ItemClass>& classes,
                                   const Certificate& cert);

enum class PriceMode { Exact, FfdUpper };

struct PriceReport {
  BigInt sum_cluster_opt{0};
  BigInt global_opt{0};
  enum class GlobalMethod {
    ExactSolver,
    CertificateLargeItem,
    SizeLowerBound
  } method = GlobalMethod::ExactSolver;
  Rational ratio{0};
  struct PerCluster {
    std::string id;
    BigInt opt{0};  // FFD bin count in FfdUpper mode
    std::size_t ffd_bins = 0;
  };
  std::vector<PerCluster> per_cluster;
  bool valid_k = true;  // every cluster optimum >= k (exact mode only)
  std::vector<std::string> notes;
};

// Exact mode solves every cluster exactly and certifies the global optimum
// either by the exact solver or by a supplied certificate with the large-item
// bound. FfdUpper mode reports sum of per-cluster FFD bins over the ceiling
// of the total size, an upper-bound estimate.
PriceReport price_of_clustering(const ClusteredInstance& inst, PriceMode mode,
                                const Certificate* certificate = nullptr,
                                const SolverLimits& lim = {});

}  // namespace binpack
