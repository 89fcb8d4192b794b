#include "binpack/exact_solver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace binpack {

namespace {

// ---- item-level branch and bound, sizes scaled to a common denominator ----

template <typename I>
struct BBState {
  std::vector<I> sizes;  // non-increasing
  I cap;
  std::vector<I> suffix;  // suffix[i] = sum of sizes[i..]
  std::vector<I> loads;
  std::vector<int> bin_of;
  std::vector<int> best_bin_of;
  std::size_t best;
  I load_sum;
};

template <typename I>
I int_ceil_div(const I& a, const I& b) {
  if (a <= 0) return 0;
  return (a + b - 1) / b;
}

template <>
BigInt int_ceil_div<BigInt>(const BigInt& a, const BigInt& b) {
  if (a <= 0) return 0;
  return ceil_div(a, b);
}

template <typename I>
void bb_search(BBState<I>& st, std::size_t idx, std::size_t used) {
  if (used >= st.best) return;
  if (idx == st.sizes.size()) {
    st.best = used;
    st.best_bin_of = st.bin_of;
    return;
  }
  // ceil of remaining size that cannot go into currently open space
  I free_space = I(used) * st.cap - st.load_sum;
  I overflow = st.suffix[idx] - free_space;
  std::size_t lb = used + static_cast<std::size_t>(int_ceil_div(overflow, st.cap));
  if (lb >= st.best) return;

  const I s = st.sizes[idx];

  // exact-fit dominance: a bin whose residual equals the item admits an
  // optimal completion with the item placed there
  for (std::size_t b = 0; b < used; ++b) {
    if (st.cap - st.loads[b] == s) {
      st.loads[b] += s;
      st.load_sum += s;
      st.bin_of[idx] = static_cast<int>(b);
      bb_search(st, idx + 1, used);
      st.loads[b] -= s;
      st.load_sum -= s;
      return;
    }
  }

  // open bins, skipping residuals already tried (bin symmetry)
  std::vector<I> tried;
  for (std::size_t b = 0; b < used; ++b) {
    if (st.loads[b] + s > st.cap) continue;
    if (std::find(tried.begin(), tried.end(), st.loads[b]) != tried.end()) continue;
    tried.push_back(st.loads[b]);
    st.loads[b] += s;
    st.load_sum += s;
    st.bin_of[idx] = static_cast<int>(b);
    bb_search(st, idx + 1, used);
    st.loads[b] -= s;
    st.load_sum -= s;
  }

  // new bin
  if (used + 1 < st.best) {
    st.loads.push_back(s);
    st.load_sum += s;
    st.bin_of[idx] = static_cast<int>(used);
    bb_search(st, idx + 1, used + 1);
    st.loads.pop_back();
    st.load_sum -= s;
  }
}

template <typename I>
std::size_t ffd_bins_scaled(const std::vector<I>& sizes, const I& cap) {
  std::vector<I> loads;
  for (const I& s : sizes) {
    bool placed = false;
    for (auto& l : loads) {
      if (l + s <= cap) {
        l += s;
        placed = true;
        break;
      }
    }
    if (!placed) loads.push_back(s);
  }
  return loads.size();
}

template <typename I>
std::pair<std::size_t, std::vector<int>> bb_solve(const std::vector<I>& sizes,
                                                  const I& cap) {
  BBState<I> st;
  st.sizes = sizes;
  st.cap = cap;
  st.suffix.assign(sizes.size() + 1, I(0));
  for (std::size_t i = sizes.size(); i-- > 0;) st.suffix[i] = st.suffix[i + 1] + sizes[i];
  st.best = ffd_bins_scaled(sizes, cap) + 1;  // sentinel above the FFD bound
  st.bin_of.assign(sizes.size(), -1);
  st.load_sum = 0;
  bb_search(st, 0, 0);
  return {st.best, st.best_bin_of};
}

ExactResult solve_items(const std::vector<Item>& positive,
                        const std::vector<Item>& zeros) {
  // common denominator
  BigInt lcm = 1;
  for (const auto& it : positive) lcm = boost::multiprecision::lcm(lcm, den(it.size));

  std::vector<Item> sorted = positive;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Item& a, const Item& b) {
    if (a.size != b.size) return a.size > b.size;
    return a.index < b.index;
  });

  std::size_t bins;
  std::vector<int> bin_of;
  BigInt guard = lcm * BigInt(sorted.size() + 2);
  if (guard < (BigInt(1) << 62)) {
    std::vector<long long> ss;
    ss.reserve(sorted.size());
    for (const auto& it : sorted)
      ss.push_back(((num(it.size) * lcm) / den(it.size)).convert_to<long long>());
    auto r = bb_solve<long long>(ss, lcm.convert_to<long long>());
    bins = r.first;
    bin_of = std::move(r.second);
  } else {
    std::vector<BigInt> ss;
    ss.reserve(sorted.size());
    for (const auto& it : sorted) ss.push_back((num(it.size) * lcm) / den(it.size));
    auto r = bb_solve<BigInt>(ss, lcm);
    bins = r.first;
    bin_of = std::move(r.second);
  }

  ExactResult res;
  res.method = ExactResult::Method::BranchAndBound;
  res.bins = bins;
  Packing w;
  w.bins.assign(bins, {});
  w.loads.assign(bins, Rational(0));
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    w.bins[static_cast<std::size_t>(bin_of[i])].push_back(sorted[i].index);
    w.loads[static_cast<std::size_t>(bin_of[i])] += sorted[i].size;
  }
  if (!zeros.empty()) {
    if (w.bins.empty()) {
      w.bins.push_back({});
      w.loads.push_back(Rational(0));
      res.bins = 1;
    }
    for (const auto& z : zeros) w.bins[0].push_back(z.index);
  }
  res.witness = std::move(w);
  return res;
}

// ---- pattern covering for 2..3 distinct positive sizes ----

struct PatternProblem {
  std::vector<Rational> sizes;             // distinct, descending
  std::vector<unsigned long long> counts;  // demand per size
};

BigInt pattern_cover(const PatternProblem& pp) {
  const std::size_t c = pp.sizes.size();
  std::vector<unsigned long long> cap(c);
  for (std::size_t j = 0; j < c; ++j) {
    BigInt m = floor_rational(Rational(1) / pp.sizes[j]);
    unsigned long long byc = pp.counts[j];
    cap[j] = std::min<unsigned long long>(m.convert_to<unsigned long long>(), byc);
  }

  // count-capped maximal feasible patterns
  std::vector<std::vector<unsigned long long>> patterns;
  std::vector<unsigned long long> a(c, 0);
  auto feasible = [&](const std::vector<unsigned long long>& v) {
    Rational s = 0;
    for (std::size_t j = 0; j < c; ++j) s += pp.sizes[j] * BigInt(v[j]);
    return s <= 1;
  };
  auto maximal = [&](const std::vector<unsigned long long>& v) {
    for (std::size_t j = 0; j < c; ++j) {
      if (v[j] >= cap[j]) continue;
      auto w = v;
      ++w[j];
      if (feasible(w)) return false;
    }
    return true;
  };
  // c <= 3 keeps this enumeration tiny
  std::vector<unsigned long long> idx(c, 0);
  while (true) {
    if (feasible(idx)) {
      bool nonzero = false;
      for (auto v : idx) nonzero |= v > 0;
      if (nonzero && maximal(idx)) patterns.push_back(idx);
    }
    std::size_t j = 0;
    while (j < c) {
      if (idx[j] < cap[j]) {
        ++idx[j];
        break;
      }
      idx[j] = 0;
      ++j;
    }
    if (j == c) break;
  }
  if (patterns.empty()) return 0;

  std::sort(patterns.begin(), patterns.end(),
            [&](const auto& x, const auto& y) {
              Rational sx = 0, sy = 0;
              for (std::size_t j = 0; j < c; ++j) {
                sx += pp.sizes[j] * BigInt(x[j]);
                sy += pp.sizes[j] * BigInt(y[j]);
              }
              return sx > sy;
            });

  // greedy upper bound
  unsigned long long best = 0;
  {
    auto rem = pp.counts;
    while (true) {
      bool any = false;
      for (auto r : rem) any |= r > 0;
      if (!any) break;
      for (const auto& p : patterns) {
        bool useful = false;
        for (std::size_t j = 0; j < c; ++j) useful |= p[j] > 0 && rem[j] > 0;
        if (!useful) continue;
        for (std::size_t j = 0; j < c; ++j) rem[j] -= std::min(rem[j], p[j]);
        ++best;
        break;
      }
    }
  }

  std::vector<long long> rem(c);
  for (std::size_t j = 0; j < c; ++j) rem[j] = static_cast<long long>(pp.counts[j]);

  unsigned long long found = best;
  // DFS over (pattern, copies) in fixed order; exact covering search
  auto lower_bound_bins = [&](const std::vector<long long>& r) {
    Rational total = 0;
    for (std::size_t j = 0; j < c; ++j)
      if (r[j] > 0) total += pp.sizes[j] * BigInt(r[j]);
    return ceil_rational(total).convert_to<unsigned long long>();
  };
  std::function<void(std::size_t, std::vector<long long>&, unsigned long long)> rec =
      [&](std::size_t pi, std::vector<long long>& r, unsigned long long used) {
        bool done = true;
        for (auto v : r) done &= v <= 0;
        if (done) {
          found = std::min(found, used);
          return;
        }
        if (pi == patterns.size()) return;
        if (used + lower_bound_bins(r) >= found) return;
        unsigned long long tmax = 0;
        for (std::size_t j = 0; j < c; ++j) {
          if (patterns[pi][j] > 0 && r[j] > 0) {
            unsigned long long need = (static_cast<unsigned long long>(r[j]) +
                                       patterns[pi][j] - 1) /
                                      patterns[pi][j];
            tmax = std::max(tmax, need);
          }
        }
        for (long long t = static_cast<long long>(tmax); t >= 0; --t) {
          if (used + static_cast<unsigned long long>(t) >= found) continue;
          for (std::size_t j = 0; j < c; ++j)
            r[j] -= t * static_cast<long long>(patterns[pi][j]);
          rec(pi + 1, r, used + static_cast<unsigned long long>(t));
          for (std::size_t j = 0; j < c; ++j)
            r[j] += t * static_cast<long long>(patterns[pi][j]);
        }
      };
  rec(0, rem, 0);
  return BigInt(found);
}

}  // namespace

ExactResult exact_optimal(const std::vector<ItemClass>& classes, const SolverLimits& lim) {
  // aggregate by size; split off zero-size items
  std::map<Rational, BigInt, std::greater<Rational>> by_size;
  BigInt zero_count = 0;
  for (const auto& c : classes) {
    if (c.size < 0 || c.size > 1)
      throw std::invalid_argument("item size outside [0,1]: " + format_rational(c.size));
    if (c.count < 1) throw std::invalid_argument("item count must be >= 1");
    if (c.size == 0)
      zero_count += c.count;
    else
      by_size[c.size] += c.count;
  }

  if (by_size.empty()) {
    ExactResult res;
    if (zero_count > 0) {
      res.bins = 1;
      res.method = ExactResult::Method::SingleSize;
      Packing w;
      w.bins.push_back({});
      w.loads.push_back(Rational(0));
      std::size_t idx = 0;
      for (const auto& c : classes)
        for (BigInt i = 0; i < c.count; ++i) w.bins[0].push_back(idx++);
      res.witness = std::move(w);
    }
    return res;
  }

  BigInt positive_total = 0;
  for (const auto& [s, n] : by_size) positive_total += n;

  if (positive_total + zero_count <= lim.item_limit) {
    auto items = expand(classes);
    std::vector<Item> positive, zeros;
    for (auto& it : items) (it.size == 0 ? zeros : positive).push_back(it);
    return solve_items(positive, zeros);
  }

  if (by_size.size() == 1) {
    const auto& [s, n] = *by_size.begin();
    BigInt cap = floor_rational(Rational(1) / s);
    ExactResult res;
    res.bins = ceil_div(n, cap);
    res.method = ExactResult::Method::SingleSize;
    return res;
  }

  if (by_size.size() <= 3) {
    if (positive_total > lim.pattern_total_limit)
      throw SolveTooLargeError("too large for exact solve: " + positive_total.str() +
                               " items across " + std::to_string(by_size.size()) +
                               " sizes");
    PatternProblem pp;
    for (const auto& [s, n] : by_size) {
      pp.sizes.push_back(s);
      pp.counts.push_back(n.convert_to<unsigned long long>());
    }
    ExactResult res;
    res.bins = pattern_cover(pp);
    res.method = ExactResult::Method::PatternEnum;
    return res;
  }

  throw SolveTooLargeError("too large for exact solve: " + positive_total.str() +
                           " items, " + std::to_string(by_size.size()) +
                           " distinct sizes (limit " + std::to_string(lim.item_limit) +
                           " items)");
}

}  // namespace binpack
