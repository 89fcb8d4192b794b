#include "binpack/weights.hpp"

#include <doctest.h>

using namespace binpack;

TEST_CASE("builtin weight constants") {
  auto wk3 = make_builtin("wk3");
  CHECK(wk3.coefficient == Rational(21, 13));
  CHECK(wk3.eval(Rational(3, 5)) == Rational(4777, 3900));
  CHECK(wk3.eval(Rational(1, 6)) == Rational(7, 26));  // zero-bonus region
  CHECK(wk3.eval(Rational(1, 3)) ==
        Rational(21, 13) * Rational(1, 3) + Rational(18, 325));  // upper endpoint in
  // maximum value approached at x -> 1
  CHECK(wk3.eval(Rational(1)) == Rational(7297, 3900));

  auto w195 = make_builtin("w195");
  CHECK(w195.eval(Rational(1, 2)) == Rational(9, 10));
  CHECK(w195.eval(Rational(51, 100)) == Rational(9, 5) * Rational(51, 100) + Rational(3, 20));

  auto wk4 = make_builtin("wk4");
  CHECK(wk4.coefficient == Rational(28, 19));
  CHECK(wk4.eval(Rational(3, 5)) ==
        Rational(28, 19) * Rational(3, 5) + Rational(25124, 77805));
  // the two branches of the cap argument coincide: beta = gamma + delta
  CHECK(Rational(6528, 77805) == Rational(5520, 77805) + Rational(1008, 77805));

  auto v = make_builtin("v");
  CHECK(v.eval(Rational(0)) == 0);
  CHECK(v.eval(Rational(3, 10)) == Rational(23, 60));
  CHECK(v.eval(Rational(3, 4)) == 1);
  CHECK(v.eval(Rational(1, 2)) == Rational(1, 2) + Rational(1, 6));

  CHECK_THROWS_AS(make_builtin("nope"), std::invalid_argument);
  CHECK_THROWS_AS(wk3.eval(Rational(6, 5)), std::domain_error);
}

TEST_CASE("builtins are non-decreasing around their breakpoints") {
  const Rational step(1, 420);
  for (const char* name : {"w195", "wk3", "wk4", "v"}) {
    auto f = make_builtin(name);
    std::vector<Rational> breaks = {Rational(1, 7), Rational(1, 6), Rational(1, 5),
                                    Rational(1, 4), Rational(1, 3), Rational(1, 2)};
    for (const auto& b : breaks) {
      CHECK(f.eval(b - step) <= f.eval(b));
      CHECK(f.eval(b) <= f.eval(b + step));
    }
  }
}

TEST_CASE("bin weight caps") {
  auto wk3 = make_builtin("wk3");
  const Rational cap(581, 300);

  // the tight bin: one large item plus one in (1/3,1/2], both at the edge
  std::vector<std::vector<Rational>> bins = {{Rational(51, 100), Rational(49, 100)}};
  CHECK(bin_weight_cap_check(wk3, cap, bins).empty());
  CHECK(wk3.eval(Rational(51, 100)) + wk3.eval(Rational(49, 100)) == cap);

  auto w195 = make_builtin("w195");
  CHECK(bin_weight_cap_check(w195, Rational(39, 20), {{Rational(1)}}).empty());
  CHECK(w195.eval(Rational(1)) == Rational(39, 20));

  CHECK(bin_weight_cap_check(wk3, cap, {{}}).empty());  // empty bin weighs 0

  CHECK_THROWS_AS(
      bin_weight_cap_check(wk3, cap, {{Rational(3, 5), Rational(3, 5)}}),
      std::invalid_argument);

  // a cap below an attainable weight is reported
  auto viol = bin_weight_cap_check(wk3, Rational(1), bins);
  REQUIRE(viol.size() == 1);
  CHECK(viol[0].weight == cap);
}

TEST_CASE("grid family stays under every cap on a small grid") {
  GridSpec spec;
  spec.q = 60;
  CHECK(bin_weight_cap_check_grid(make_builtin("wk3"), Rational(581, 300), spec).empty());
  CHECK(bin_weight_cap_check_grid(make_builtin("w195"), Rational(39, 20), spec).empty());
}

TEST_CASE("cluster weight lemma outcomes") {
  auto wk3 = make_builtin("wk3");

  std::vector<ItemClass> shallow = {{Rational(51, 100), 2, "", ""},
                                    {Rational(49, 100), 1, "", ""}};
  CHECK(cluster_weight_dominates_ffd(wk3, shallow, 3).outcome ==
        LemmaOutcome::PreconditionFailed);

  // five items around 1/3 where one positive and two negatives overfill
  std::vector<ItemClass> thirds = {{Rational(1, 3) + Rational(1, 100), 3, "", ""},
                                   {Rational(1, 3) - Rational(1, 300), 2, "", ""}};
  auto chk = cluster_weight_dominates_ffd(wk3, thirds, 3);
  CHECK(chk.opt == 3);
  CHECK(chk.ffd_bins == 3);
  CHECK(chk.outcome == LemmaOutcome::Holds);

  std::vector<ItemClass> ones = {{Rational(1), 3, "", ""}};
  auto full = cluster_weight_dominates_ffd(wk3, ones, 3);
  CHECK(full.opt == 3);
  CHECK(full.weight == (Rational(21, 13) + Rational(997, 3900)) * 3);
  CHECK(full.outcome == LemmaOutcome::Holds);
}

TEST_CASE("ffd against the v weights") {
  CHECK(ffd_v_bound_check({}));
  CHECK(ffd_v_bound_check({{Rational(0), 2, "", ""}}));
  CHECK(ffd_v_bound_check({{Rational(3, 5), 2, "", ""}}));
}

TEST_CASE("random suites are seed-deterministic") {
  auto a = random_feasible_bins(50, 11);
  auto b = random_feasible_bins(50, 11);
  CHECK(a == b);
  auto r1 = lemma_suite(make_builtin("wk3"), 3, 50, 3);
  auto r2 = lemma_suite(make_builtin("wk3"), 3, 50, 3);
  CHECK(r1.tested == r2.tested);
  CHECK(r1.violations == 0);
  CHECK(ffd_property_suite(100, 4).violations == 0);
}
