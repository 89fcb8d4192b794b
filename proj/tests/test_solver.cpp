#include "binpack/exact_solver.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace binpack;

namespace {

// independent oracle: plain set-partition enumeration, no solver machinery
std::size_t brute_min_bins(const std::vector<Rational>& sizes) {
  std::size_t best = sizes.size() + 1;
  std::vector<Rational> loads;
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == sizes.size()) {
      best = std::min(best, loads.size());
      return;
    }
    // index, not iterate: the recursion grows and shrinks `loads`
    std::size_t open = loads.size();
    for (std::size_t b = 0; b < open; ++b) {
      if (loads[b] + sizes[idx] <= 1) {
        loads[b] += sizes[idx];
        rec(idx + 1);
        loads[b] -= sizes[idx];
      }
    }
    loads.push_back(sizes[idx]);
    rec(idx + 1);
    loads.pop_back();
  };
  if (sizes.empty()) return 0;
  rec(0);
  return best;
}

}  // namespace

TEST_CASE("exact solver on the small worked examples") {
  // brute-force expectation computed by the oracle, then frozen
  std::vector<Rational> near_half = {Rational(51, 100), Rational(51, 100),
                                     Rational(49, 100)};
  CHECK(brute_min_bins(near_half) == 2);
  auto r = exact_optimal_sizes(near_half);
  CHECK(r.bins == 2);
  REQUIRE(r.witness.has_value());

  CHECK(exact_optimal_sizes({Rational(1, 3), Rational(1, 3), Rational(1, 3)}).bins == 1);
  CHECK(exact_optimal_sizes({}).bins == 0);
  CHECK(exact_optimal_sizes({Rational(0), Rational(0)}).bins == 1);
}

TEST_CASE("identical tiny items resolve by the capacity formula") {
  Rational s = Rational(1, 1807) + Rational(1, 1000000000);
  auto r = exact_optimal({{s, BigInt(3613), "", ""}});
  CHECK(r.bins == 3);
  CHECK(r.method == ExactResult::Method::SingleSize);

  // 1806 of them fit one bin, 1807 do not
  CHECK(s * 1806 <= 1);
  CHECK(s * 1807 > 1);
}

TEST_CASE("pattern covering for two distinct sizes with large counts") {
  // 30 items of 0.34 and 20 of 0.33: bins are (1,2), (0,3) or (2,0); optimum 20
  auto r = exact_optimal(
      {{Rational(34, 100), BigInt(30), "", ""}, {Rational(33, 100), BigInt(20), "", ""}});
  CHECK(r.method == ExactResult::Method::PatternEnum);
  CHECK(r.bins == 20);
}

TEST_CASE("solver limit error names itself") {
  std::vector<ItemClass> many;
  for (int i = 0; i < 30; ++i)
    many.push_back({make_rational(100 + i, 421), 2, "", ""});
  CHECK_THROWS_AS(exact_optimal(many), SolveTooLargeError);
}

TEST_CASE("solver matches the brute-force oracle on random instances") {
  std::mt19937_64 gen(2024);
  for (int t = 0; t < 400; ++t) {
    std::size_t n = 1 + gen() % 8;
    std::vector<Rational> sizes;
    for (std::size_t i = 0; i < n; ++i)
      sizes.push_back(make_rational(1 + static_cast<long long>(gen() % 60), 60));
    auto r = exact_optimal_sizes(sizes);
    CHECK(r.bins == brute_min_bins(sizes));
    REQUIRE(r.witness.has_value());
    std::vector<Item> items;
    for (std::size_t i = 0; i < n; ++i) items.push_back({sizes[i], i, ""});
    CHECK(verify_packing(items, *r.witness).ok);
  }
}

TEST_CASE("solver bracketed by FFD above and total size below") {
  std::mt19937_64 gen(77);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + gen() % 12;
    std::vector<ItemClass> classes;
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Rational s = make_rational(static_cast<long long>(gen() % 421), 420);
      classes.push_back({s, 1, "", ""});
      total += s;
    }
    auto r = exact_optimal(classes);
    CHECK(r.bins <= ffd_classes(classes).bin_count);
    CHECK(r.bins >= ceil_rational(total));
  }
}
