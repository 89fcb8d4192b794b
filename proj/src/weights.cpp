#include "binpack/weights.hpp"

#include <random>
#include <stdexcept>

namespace binpack {

Rational WeightFunction::eval(const Rational& x) const {
  if (x < 0 || x > 1) {
    throw std::domain_error("weight argument outside [0,1]: " + format_rational(x));
  }
  if (kind == Kind::VFormula) {
    if (x == 0) return 0;
    if (x > Rational(1, 2)) return 1;
    BigInt j = floor_rational(Rational(1) / x);  // x in (1/(j+1), 1/j]
    return x + make_rational(BigInt(1), j * (j + 1));
  }
  Rational w = coefficient * x;
  for (const auto& b : bonuses) {
    if (x > b.lower && x <= b.upper) {
      w += b.bonus;
      break;
    }
  }
  return w;
}

WeightFunction make_builtin(std::string_view name) {
  WeightFunction f;
  f.name = std::string(name);
  const Rational one(1), half(1, 2), third(1, 3), quarter(1, 4), sixth(1, 6);
  if (name == "w195") {
    f.coefficient = Rational(9, 5);
    f.bonuses = {{half, one, Rational(3, 20)}};
  } else if (name == "wk3") {
    f.coefficient = Rational(21, 13);
    f.bonuses = {{sixth, quarter, Rational(2, 195)},
                 {quarter, third, Rational(18, 325)},
                 {third, half, Rational(64, 975)},
                 {half, one, Rational(997, 3900)}};
  } else if (name == "wk4") {
    const BigInt delta = 77805;
    f.coefficient = Rational(28, 19);
    f.bonuses = {{sixth, quarter, make_rational(BigInt(1008), delta)},
                 {quarter, third, make_rational(BigInt(5520), delta)},
                 {third, half, make_rational(BigInt(6528), delta)},
                 {half, one, make_rational(BigInt(25124), delta)}};
  } else if (name == "v") {
    f.kind = WeightFunction::Kind::VFormula;
  } else {
    throw std::invalid_argument("unknown weight function: " + std::string(name));
  }
  return f;
}

Rational total_weight(const WeightFunction& f, const std::vector<ItemClass>& classes) {
  Rational w = 0;
  for (const auto& c : classes) w += f.eval(c.size) * Rational(c.count);
  return w;
}

std::vector<CapViolation> bin_weight_cap_check(
    const WeightFunction& f, const Rational& cap,
    const std::vector<std::vector<Rational>>& bins) {
  std::vector<CapViolation> out;
  for (const auto& bin : bins) {
    Rational load = 0, weight = 0;
    for (const auto& s : bin) {
      load += s;
      weight += f.eval(s);
    }
    if (load > 1) {
      throw std::invalid_argument("infeasible bin in input stream (load " +
                                  format_rational(load) + ")");
    }
    if (weight > cap) out.push_back({bin, weight});
  }
  return out;
}

namespace {

void grid_recurse(const Rational& cap, const std::vector<Rational>& grid_weight,
                  unsigned q, unsigned depth_left, unsigned start, unsigned load,
                  std::vector<unsigned>& stack, const Rational& weight,
                  std::vector<CapViolation>& out) {
  for (unsigned i = start; i <= q; ++i) {
    if (load + i > q) break;
    Rational w = weight + grid_weight[i];
    stack.push_back(i);
    if (w > cap) {
      CapViolation v;
      for (unsigned p : stack) v.bin.push_back(make_rational(p, q));
      v.weight = w;
      out.push_back(v);
    }
    if (depth_left > 1) {
      grid_recurse(cap, grid_weight, q, depth_left - 1, i, load + i, stack, w, out);
    }
    stack.pop_back();
  }
}

}  // namespace

std::vector<CapViolation> bin_weight_cap_check_grid(const WeightFunction& f,
                                                    const Rational& cap,
                                                    const GridSpec& spec) {
  const unsigned q = spec.q;
  BigInt lo = floor_rational(spec.min_size_exclusive * q);
  unsigned i_min = lo.convert_to<unsigned>() + 1;  // i/q strictly above the cutoff
  std::vector<Rational> grid_weight(q + 1);
  for (unsigned i = i_min; i <= q; ++i) grid_weight[i] = f.eval(make_rational(i, q));
  std::vector<CapViolation> out;
  std::vector<unsigned> stack;
  grid_recurse(cap, grid_weight, q, spec.max_items, i_min, 0, stack, Rational(0), out);
  return out;
}

std::vector<std::vector<Rational>> random_feasible_bins(std::size_t trials,
                                                        std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::vector<Rational>> bins;
  bins.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Rational> bin;
    Rational load = 0;
    std::size_t m = 1 + gen() % 8;
    for (std::size_t j = 0; j < m; ++j) {
      unsigned long long qd = 2 + gen() % 419;
      unsigned long long p = 1 + gen() % qd;
      Rational s = make_rational(BigInt(p), BigInt(qd));
      if (load + s <= 1) {
        bin.push_back(s);
        load += s;
      }
    }
    bins.push_back(std::move(bin));
  }
  return bins;
}

std::vector<CapViolation> bin_weight_cap_check_random(const WeightFunction& f,
                                                      const Rational& cap,
                                                      std::size_t trials,
                                                      std::uint64_t seed) {
  return bin_weight_cap_check(f, cap, random_feasible_bins(trials, seed));
}

LemmaCheck cluster_weight_dominates_ffd(const WeightFunction& f,
                                        const std::vector<ItemClass>& cluster, int k,
                                        const SolverLimits& lim) {
  LemmaCheck chk;
  ExactResult opt = exact_optimal(cluster, lim);
  chk.opt = opt.bins;
  chk.weight = total_weight(f, cluster);
  chk.ffd_bins = ffd_classes(cluster).bin_count;
  if (opt.bins < k) {
    chk.outcome = LemmaOutcome::PreconditionFailed;
    return chk;
  }
  chk.outcome = chk.weight >= BigInt(chk.ffd_bins) ? LemmaOutcome::Holds
                                                   : LemmaOutcome::Violated;
  return chk;
}

bool ffd_v_bound_check(const std::vector<ItemClass>& classes) {
  WeightFunction v = make_builtin("v");
  Rational total = total_weight(v, classes);
  std::size_t bins = ffd_classes(classes).bin_count;
  return Rational(BigInt(bins)) <= total + 1;
}

SuiteResult lemma_suite(const WeightFunction& f, int k, std::size_t trials,
                        std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  SuiteResult res;
  std::size_t attempts = 0, max_attempts = trials * 40 + 1000;
  while (res.tested < trials && attempts < max_attempts) {
    ++attempts;
    std::vector<ItemClass> cluster;
    std::size_t m = 3 + gen() % 10;  // 3..12 items
    unsigned regime = gen() % 3;
    for (std::size_t j = 0; j < m; ++j) {
      long long p;
      if (regime == 0) {
        p = 85 + static_cast<long long>(gen() % 336);  // >= ~0.2
      } else if (regime == 1) {
        // sizes hugging the bonus breakpoints
        static const long long base[] = {210, 140, 105, 70};
        long long b = base[gen() % 4];
        p = b - 8 + static_cast<long long>(gen() % 17);
      } else {
        p = 1 + static_cast<long long>(gen() % 420);
      }
      if (p < 1) p = 1;
      if (p > 420) p = 420;
      cluster.push_back({make_rational(p, 420), 1, "", ""});
    }
    LemmaCheck chk = cluster_weight_dominates_ffd(f, cluster, k);
    if (chk.outcome == LemmaOutcome::PreconditionFailed) continue;
    ++res.tested;
    if (chk.outcome == LemmaOutcome::Violated) {
      ++res.violations;
      if (res.details.size() < 5) {
        std::string d = "violation: W=" + format_rational(chk.weight) +
                        " A=" + std::to_string(chk.ffd_bins) + " bin sizes:";
        for (const auto& c : cluster) d += " " + format_rational(c.size);
        res.details.push_back(d);
      }
    }
  }
  return res;
}

SuiteResult ffd_property_suite(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  WeightFunction v = make_builtin("v");
  SuiteResult res;
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t m = gen() % 41;  // 0..40 items, zeros included
    std::vector<ItemClass> classes;
    for (std::size_t j = 0; j < m; ++j) {
      long long p = static_cast<long long>(gen() % 421);
      classes.push_back({make_rational(p, 420), 1, "", ""});
    }
    ++res.tested;
    auto items = expand(classes);
    FFDTrace tr = ffd(items);
    bool bad = false;
    if (Rational(BigInt(tr.bin_count)) > total_weight(v, classes) + 1) {
      bad = true;
      if (res.details.size() < 5)
        res.details.push_back("FFD > V+1 at trial " + std::to_string(t));
    }
    std::string sv = ffd_structural_violation(items, tr);
    if (!sv.empty()) {
      bad = true;
      if (res.details.size() < 5)
        res.details.push_back("trial " + std::to_string(t) + ": " + sv);
    }
    if (bad) ++res.violations;
  }
  return res;
}

}  // namespace binpack
