#include "binpack/packing.hpp"

#include <algorithm>
#include <unordered_map>

namespace binpack {

VerifyResult verify_packing(const std::vector<Item>& items, const Packing& p) {
  // Bins reference item indices; map them back to positions first.
  std::unordered_map<std::size_t, std::size_t> by_index;
  by_index.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) by_index[items[i].index] = i;
  std::vector<char> seen(items.size(), 0);
  for (std::size_t b = 0; b < p.bins.size(); ++b) {
    if (p.bins[b].empty()) return {false, "bin " + std::to_string(b) + " is empty"};
    Rational load = 0;
    for (std::size_t idx : p.bins[b]) {
      auto it = by_index.find(idx);
      if (it == by_index.end() || seen[it->second])
        return {false, "coverage mismatch"};
      seen[it->second] = 1;
      load += items[it->second].size;
    }
    if (load > 1) {
      return {false, "bin " + std::to_string(b) + " overfull by " +
                         format_rational(load - 1)};
    }
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!seen[i]) return {false, "coverage mismatch"};
  }
  return {true, ""};
}

namespace {

// Bins reference positions into `items`.
Packing first_fit_positions(const std::vector<Item>& items) {
  Packing p;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Rational& s = items[i].size;
    bool placed = false;
    for (std::size_t b = 0; b < p.bins.size(); ++b) {
      if (p.loads[b] + s <= 1) {
        p.bins[b].push_back(i);
        p.loads[b] += s;
        placed = true;
        break;
      }
    }
    if (!placed) {
      p.bins.push_back({i});
      p.loads.push_back(s);
    }
  }
  return p;
}

}  // namespace

Packing first_fit(const std::vector<Item>& items) {
  Packing p = first_fit_positions(items);
  for (auto& bin : p.bins) {
    for (auto& pos : bin) pos = items[pos].index;
  }
  return p;
}

FFDTrace ffd(std::vector<Item> items) {
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.size != b.size) return a.size > b.size;
    return a.index < b.index;
  });
  FFDTrace tr;
  tr.packing = first_fit_positions(items);
  tr.bin_count = tr.packing.bin_count();

  const Rational half(1, 2);
  for (std::size_t b = 0; b < tr.bin_count; ++b) {
    // bins reference sorted positions here; entry 0 is the opening item
    tr.per_bin_first_item.push_back(items[tr.packing.bins[b][0]].size);
    if (b + 1 < tr.bin_count) {
      bool large = false;
      for (std::size_t pos : tr.packing.bins[b]) {
        if (items[pos].size > half) {
          large = true;
          break;
        }
      }
      if (large) ++tr.tau;
    }
  }
  if (tr.bin_count > 0) tr.theta = tr.per_bin_first_item.back();

  // Rewire to original item indices so the packing stands alone.
  for (auto& bin : tr.packing.bins) {
    for (auto& pos : bin) pos = items[pos].index;
  }
  return tr;
}

std::string ffd_structural_violation(const std::vector<Item>& items,
                                     const FFDTrace& trace) {
  const auto& p = trace.packing;
  const std::size_t nbins = p.bin_count();
  const Rational half(1, 2);

  std::unordered_map<std::size_t, Rational> size_of;
  size_of.reserve(items.size());
  for (const auto& it : items) size_of[it.index] = it.size;

  // pairwise loads
  for (std::size_t a = 0; a < nbins; ++a) {
    for (std::size_t b = a + 1; b < nbins; ++b) {
      if (p.loads[a] + p.loads[b] <= 1) {
        return "bins " + std::to_string(a) + "," + std::to_string(b) +
               " have total load " + format_rational(p.loads[a] + p.loads[b]);
      }
    }
  }

  // large items form a prefix
  std::vector<char> has_large(nbins, 0);
  for (std::size_t b = 0; b < nbins; ++b) {
    for (std::size_t idx : p.bins[b]) {
      if (size_of[idx] > half) {
        has_large[b] = 1;
        break;
      }
    }
  }
  for (std::size_t b = 1; b < nbins; ++b) {
    if (has_large[b] && !has_large[b - 1]) {
      return "large-item bins are not a prefix (bin " + std::to_string(b) + ")";
    }
  }

  // opening rule; only s with first item in (1/s, 1/(s-1)] is non-vacuous
  for (std::size_t b = 1; b < nbins; ++b) {
    const Rational& x = trace.per_bin_first_item[b];
    if (x == 0) continue;
    BigInt s_big = floor_rational(Rational(1) / x) + 1;
    if (s_big < 2) continue;  // x > 1/2 implies earlier bins all have larger items
    long long s = s_big.convert_to<long long>();
    Rational lo = make_rational(1, s);
    Rational hi = make_rational(1, s - 1);
    for (std::size_t e = 0; e < b; ++e) {
      bool has_bigger = false;
      long long in_range = 0;
      for (std::size_t idx : p.bins[e]) {
        const Rational& y = size_of[idx];
        if (y > hi) {
          has_bigger = true;
          break;
        }
        if (y > lo && y <= hi) ++in_range;
      }
      if (!has_bigger && in_range < s - 1) {
        return "opening rule: bin " + std::to_string(b) + " opened by " +
               format_rational(x) + " but bin " + std::to_string(e) + " has only " +
               std::to_string(in_range) + " items in (1/" + std::to_string(s) + ",1/" +
               std::to_string(s - 1) + "]";
      }
    }
  }
  return "";
}

}  // namespace binpack
