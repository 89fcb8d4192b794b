#include "binpack/packing.hpp"

#include <doctest.h>

#include <random>

using namespace binpack;

namespace {

std::vector<Item> items_of(const std::vector<Rational>& sizes) {
  std::vector<Item> out;
  for (std::size_t i = 0; i < sizes.size(); ++i) out.push_back({sizes[i], i, ""});
  return out;
}

}  // namespace

TEST_CASE("validate_instance flags out-of-range sizes") {
  auto ok = validate_instance({{Rational(3, 5), 1, "", ""}, {Rational(2, 5), 1, "", ""}});
  CHECK(ok.ok);
  CHECK(ok.item_count == 2);

  auto bad = validate_instance({{Rational(7, 5), 1, "", ""}});
  CHECK_FALSE(bad.ok);
  CHECK(bad.errors.front().find("size exceeds 1") != std::string::npos);

  auto zero = validate_instance({{Rational(0), 1, "", ""}});
  CHECK(zero.ok);  // zero sizes are allowed
}

TEST_CASE("first fit packs into the lowest-indexed bin that fits") {
  auto p = first_fit(items_of({Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
  CHECK(p.bin_count() == 2);
  CHECK(p.loads[0] == 1);

  // hand trace: 3/5 opens bin 0, 1/2 opens bin 1, 2/5 tops bin 0 up to 1
  auto q = first_fit(items_of({Rational(3, 5), Rational(1, 2), Rational(2, 5)}));
  CHECK(q.bin_count() == 2);
  CHECK(q.loads[0] == 1);
  CHECK(q.loads[1] == Rational(1, 2));

  CHECK(first_fit({}).bin_count() == 0);
}

TEST_CASE("ffd trace fields") {
  auto tr = ffd(items_of({Rational(3, 5), Rational(1, 2), Rational(2, 5), Rational(3, 10)}));
  CHECK(tr.bin_count == 2);
  CHECK(tr.tau == 1);
  REQUIRE(tr.theta.has_value());
  CHECK(*tr.theta == Rational(1, 2));
  CHECK(tr.packing.loads[0] == 1);
  CHECK(tr.packing.loads[1] == Rational(4, 5));

  auto zeros = ffd(items_of({Rational(0), Rational(0)}));
  CHECK(zeros.bin_count == 1);

  auto thirds = ffd(items_of({Rational(2, 3), Rational(2, 3), Rational(2, 3)}));
  CHECK(thirds.bin_count == 3);
  CHECK(thirds.tau == 2);  // inner bins only
  CHECK(*thirds.theta == Rational(2, 3));

  CHECK(ffd({}).bin_count == 0);
  CHECK_FALSE(ffd({}).theta.has_value());
}

TEST_CASE("ffd is deterministic") {
  std::mt19937_64 gen(5);
  std::vector<Rational> sizes;
  for (int i = 0; i < 30; ++i)
    sizes.push_back(make_rational(static_cast<long long>(gen() % 421), 420));
  auto a = ffd(items_of(sizes));
  auto b = ffd(items_of(sizes));
  CHECK(a.packing.bins == b.packing.bins);
  CHECK(a.tau == b.tau);
}

TEST_CASE("verify_packing catches overfull bins and coverage gaps") {
  auto items = items_of({Rational(1, 2), Rational(1, 2)});
  Packing one;
  one.bins = {{0, 1}};
  one.loads = {Rational(1)};
  CHECK(verify_packing(items, one).ok);

  auto big = items_of({Rational(3, 5), Rational(3, 5)});
  Packing bad;
  bad.bins = {{0, 1}};
  bad.loads = {Rational(6, 5)};
  auto r = verify_packing(big, bad);
  CHECK_FALSE(r.ok);
  CHECK(r.violation == "bin 0 overfull by 1/5");

  Packing missing;
  missing.bins = {{0}};
  missing.loads = {Rational(3, 5)};
  auto m = verify_packing(big, missing);
  CHECK_FALSE(m.ok);
  CHECK(m.violation == "coverage mismatch");
}

TEST_CASE("ff and ffd never overfill and keep the structural claims") {
  std::mt19937_64 gen(99);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = gen() % 25;
    std::vector<Rational> sizes;
    for (std::size_t i = 0; i < n; ++i)
      sizes.push_back(make_rational(static_cast<long long>(gen() % 421), 420));
    auto items = items_of(sizes);

    auto pf = first_fit(items);
    CHECK(verify_packing(items, pf).ok);
    for (std::size_t a = 0; a < pf.bin_count(); ++a)
      for (std::size_t b = a + 1; b < pf.bin_count(); ++b)
        CHECK(pf.loads[a] + pf.loads[b] > 1);

    auto tr = ffd(items);
    CHECK(verify_packing(items, tr.packing).ok);
    CHECK(ffd_structural_violation(items, tr) == "");
    CHECK(tr.tau + 1 <= std::max<std::size_t>(tr.bin_count, 1));
  }
}
