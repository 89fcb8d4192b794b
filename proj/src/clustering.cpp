#include "binpack/clustering.hpp"

#include "binpack/packing.hpp"

#include <map>

namespace binpack {

std::vector<ItemClass> ClusteredInstance::all_classes() const {
  std::vector<ItemClass> out;
  for (const auto& [id, classes] : clusters) {
    for (const auto& c : classes) out.push_back(c);
  }
  return out;
}

BigInt Certificate::bin_count() const {
  BigInt n = 0;
  for (const auto& p : patterns) n += p.multiplicity;
  return n;
}

CertificateCheck check_certificate(const std::vector<ItemClass>& classes,
                                   const Certificate& cert) {
  CertificateCheck chk;
  chk.bin_count = cert.bin_count();

  const Rational half(1, 2);
  std::map<Rational, BigInt> have, used;
  for (const auto& c : classes) {
    have[c.size] += c.count;
    if (c.size > half) chk.large_items += c.count;
  }
  for (std::size_t pi = 0; pi < cert.patterns.size(); ++pi) {
    const auto& p = cert.patterns[pi];
    if (p.multiplicity < 1) {
      chk.ok = false;
      chk.failures.push_back("pattern " + std::to_string(pi) +
                             ": multiplicity must be >= 1");
      continue;
    }
    Rational load = 0;
    for (const auto& [size, count] : p.entries) {
      load += size * Rational(count);
      used[size] += count * p.multiplicity;
    }
    if (load > 1) {
      chk.ok = false;
      chk.failures.push_back("pattern " + std::to_string(pi) + " overfull: load " +
                             format_rational(load));
    }
  }
  if (have != used) {
    chk.ok = false;
    for (const auto& [size, n] : have) {
      auto it = used.find(size);
      BigInt u = it == used.end() ? BigInt(0) : it->second;
      if (u != n) {
        chk.failures.push_back("conservation: size " + format_rational(size) +
                               " has " + n.str() + " items, certificate uses " +
                               u.str());
      }
    }
    for (const auto& [size, u] : used) {
      if (have.find(size) == have.end()) {
        chk.failures.push_back("conservation: certificate uses unknown size " +
                               format_rational(size));
      }
    }
  }
  return chk;
}

PriceReport price_of_clustering(const ClusteredInstance& inst, PriceMode mode,
                                const Certificate* certificate,
                                const SolverLimits& lim) {
  PriceReport rep;

  Rational total = 0;
  for (const auto& [id, classes] : inst.clusters) {
    if (classes.empty()) {
      rep.notes.push_back("cluster " + id + " is empty");
      rep.valid_k = false;
      continue;
    }
    total += total_size(classes);
    PriceReport::PerCluster pc;
    pc.id = id;
    pc.ffd_bins = ffd_classes(classes).bin_count;
    if (mode == PriceMode::Exact) {
      pc.opt = exact_optimal(classes, lim).bins;
      if (pc.opt < inst.k) {
        rep.valid_k = false;
        rep.notes.push_back("cluster " + id + " has optimum " + pc.opt.str() +
                            " below k=" + std::to_string(inst.k));
      }
    } else {
      pc.opt = pc.ffd_bins;  // upper bound stand-in
    }
    rep.sum_cluster_opt += pc.opt;
    rep.per_cluster.push_back(std::move(pc));
  }

  if (mode == PriceMode::FfdUpper) {
    rep.method = PriceReport::GlobalMethod::SizeLowerBound;
    rep.global_opt = ceil_rational(total);
    if (rep.global_opt < 1 && rep.sum_cluster_opt > 0) rep.global_opt = 1;
    rep.notes.push_back(
        "ffd-upper estimate: sum of FFD bins over ceil(total size); "
        "true price is at most this ratio");
  } else if (certificate != nullptr) {
    auto all = inst.all_classes();
    CertificateCheck chk = check_certificate(all, *certificate);
    if (!chk.ok) {
      throw std::invalid_argument("certificate check failed: " +
                                  (chk.failures.empty() ? std::string("unknown")
                                                        : chk.failures.front()));
    }
    if (chk.large_items != chk.bin_count) {
      throw std::invalid_argument(
          "certificate bin count " + chk.bin_count.str() +
          " does not match large-item count " + chk.large_items.str() +
          "; cannot certify global optimality");
    }
    rep.method = PriceReport::GlobalMethod::CertificateLargeItem;
    rep.global_opt = chk.bin_count;
  } else {
    rep.method = PriceReport::GlobalMethod::ExactSolver;
    rep.global_opt = exact_optimal(inst.all_classes(), lim).bins;
  }

  if (rep.global_opt > 0) {
    rep.ratio = make_rational(rep.sum_cluster_opt, rep.global_opt);
  }
  return rep;
}

}  // namespace binpack
