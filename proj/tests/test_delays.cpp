#include "binpack/delays.hpp"

#include <doctest.h>

#include <random>

using namespace binpack;

namespace {

TimedItem timed(const Rational& size, std::size_t index, const Rational& arrive,
                DelayFunction d) {
  return {{size, index, ""}, arrive, std::move(d)};
}

}  // namespace

TEST_CASE("delay function shapes") {
  auto lin = linear_delay(Rational(3, 2));
  CHECK(lin.eval_exact(Rational(2)) == 3);
  CHECK_FALSE(lin.bounded());

  auto pw = power_delay(Rational(1), Rational(1, 2));
  CHECK(pw.eval(4.0) == doctest::Approx(2.0));

  auto tab = table_delay({{Rational(1), Rational(1, 2)}, {Rational(2), Rational(1, 2)}});
  CHECK(tab.bounded());
  CHECK(tab.bound() == Rational(1, 2));
  CHECK(tab.eval_exact(Rational(1, 2)) == Rational(1, 4));
  CHECK(tab.eval_exact(Rational(10)) == Rational(1, 2));

  auto ramp = table_delay({{Rational(1), Rational(1)}, {Rational(2), Rational(3)}});
  CHECK_FALSE(ramp.bounded());  // final slope carries on
  CHECK(ramp.eval_exact(Rational(3)) == 5);

  CHECK_THROWS_AS(linear_delay(Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(table_delay({{Rational(0), Rational(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(table_delay({{Rational(1), Rational(2)}, {Rational(2), Rational(1)}}),
                  std::invalid_argument);
}

TEST_CASE("single item triggers at rho with cost rho + 1") {
  RhoResult rr = compute_rho(30);
  auto tr = simulate({timed(Rational(1, 2), 0, Rational(0), linear_delay(1))}, rr.rho);
  REQUIRE(tr.phases.size() == 1);
  CHECK(tr.exact);
  CHECK(tr.total_cost_exact == rational_from_double(rr.rho) + 1);
  CHECK(tr.phases[0].bins == 1);
}

TEST_CASE("two simultaneous items split the trigger time") {
  RhoResult rr = compute_rho(30);
  auto tr = simulate({timed(Rational(3, 10), 0, Rational(0), linear_delay(1)),
                      timed(Rational(3, 10), 1, Rational(0), linear_delay(1))},
                     rr.rho);
  REQUIRE(tr.phases.size() == 1);
  CHECK(tr.phases[0].trigger == doctest::Approx(rr.rho / 2));
  CHECK(tr.phases[0].bins == 1);
  CHECK(tr.total_cost_exact == rational_from_double(rr.rho) + 1);
}

TEST_CASE("an item arriving exactly at the trigger starts the next phase") {
  // one unit-rate item from t=0 reaches rho=1/2 at t=1/2; a second item lands
  // exactly there
  auto tr = simulate({timed(Rational(1, 4), 0, Rational(0), linear_delay(1)),
                      timed(Rational(1, 4), 1, Rational(1, 2), linear_delay(1))},
                     0.5);
  REQUIRE(tr.phases.size() == 2);
  CHECK(tr.phases[0].items == std::vector<std::size_t>{0});
  CHECK(tr.phases[1].items == std::vector<std::size_t>{1});
}

TEST_CASE("bounded delays flush at the horizon") {
  auto item = timed(Rational(1, 2), 0, Rational(0),
                    table_delay({{Rational(1), Rational(1, 10)},
                                 {Rational(2), Rational(1, 10)}}));
  CHECK_THROWS_AS(simulate({item}, 0.5), std::invalid_argument);
  auto tr = simulate({item}, 0.5, Rational(4));
  REQUIRE(tr.phases.size() == 1);
  CHECK(tr.phases[0].flushed);
  CHECK(tr.phases[0].delay == doctest::Approx(0.1));
  CHECK(tr.total_bins == 1);
}

TEST_CASE("offline oracle on the worked examples") {
  auto off = offline_optimal({timed(Rational(2, 5), 0, Rational(0), linear_delay(1)),
                              timed(Rational(2, 5), 1, Rational(1), linear_delay(1))});
  CHECK(off.bins == 1);  // merge and split both cost 2; fewer bins wins
  CHECK(off.cost_exact() == 2);

  auto single = offline_optimal({timed(Rational(1, 2), 0, Rational(0), linear_delay(1))});
  CHECK(single.bins == 1);
  CHECK(single.delay_exact == 0);

  auto forced = offline_optimal({timed(Rational(3, 5), 0, Rational(0), linear_delay(1)),
                                 timed(Rational(3, 5), 1, Rational(0), linear_delay(1))});
  CHECK(forced.bins == 2);
  CHECK(forced.cost_exact() == 2);

  CHECK(offline_optimal({}).bins == 0);
  std::vector<TimedItem> many;
  for (std::size_t i = 0; i < 13; ++i)
    many.push_back(timed(Rational(1, 20), i, Rational(0), linear_delay(1)));
  CHECK_THROWS_AS(offline_optimal(many), std::invalid_argument);
}

TEST_CASE("oracle cost is invariant under permuting equal-arrival items") {
  std::vector<TimedItem> a = {timed(Rational(2, 5), 0, Rational(0), linear_delay(1)),
                              timed(Rational(3, 5), 1, Rational(0), linear_delay(2)),
                              timed(Rational(1, 5), 2, Rational(1), linear_delay(1))};
  std::vector<TimedItem> b = {timed(Rational(3, 5), 0, Rational(0), linear_delay(2)),
                              timed(Rational(2, 5), 1, Rational(0), linear_delay(1)),
                              timed(Rational(1, 5), 2, Rational(1), linear_delay(1))};
  CHECK(offline_optimal(a).cost_exact() == offline_optimal(b).cost_exact());
}

TEST_CASE("algorithm never beats the oracle and meets the bound") {
  RhoResult rr = compute_rho(30);
  std::mt19937_64 gen(314);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + gen() % 6;
    std::vector<Rational> arr;
    for (std::size_t i = 0; i < n; ++i)
      arr.push_back(make_rational(static_cast<long long>(gen() % 17), 4));
    std::sort(arr.begin(), arr.end());
    std::vector<TimedItem> items;
    for (std::size_t i = 0; i < n; ++i) {
      items.push_back(timed(make_rational(static_cast<long long>(gen() % 41), 40), i,
                            arr[i],
                            linear_delay(make_rational(
                                1 + static_cast<long long>(gen() % 5), 2))));
    }
    auto tr = simulate(items, rr.rho);
    auto off = offline_optimal(items, 8);
    CHECK(tr.total_cost_exact >= off.cost_exact());
    auto chk = check_bound(tr, off);
    CHECK(chk.exact);
    CHECK(chk.pass);
  }
}

TEST_CASE("power delays run through the float path") {
  RhoResult rr = compute_rho(30);
  std::vector<TimedItem> items = {
      timed(Rational(1, 2), 0, Rational(0), power_delay(Rational(1), Rational(2))),
      timed(Rational(1, 2), 1, Rational(1, 4), power_delay(Rational(1), Rational(1, 2)))};
  auto tr = simulate(items, rr.rho);
  CHECK_FALSE(tr.exact);
  REQUIRE_FALSE(tr.phases.empty());
  // each non-final phase's accumulated delay lands on rho within tolerance
  for (const auto& ph : tr.phases) {
    if (!ph.flushed) CHECK(ph.delay == doctest::Approx(rr.rho).epsilon(1e-9));
  }
  auto off = offline_optimal(items, 8);
  auto chk = check_bound(tr, off);
  CHECK_FALSE(chk.exact);
  CHECK(chk.pass);
}

TEST_CASE("validation rejects inconsistent orderings") {
  std::vector<TimedItem> bad = {timed(Rational(1, 2), 1, Rational(1), linear_delay(1)),
                                timed(Rational(1, 2), 0, Rational(0), linear_delay(1))};
  CHECK_THROWS_AS(simulate(bad, 0.5), std::invalid_argument);
  std::vector<TimedItem> rev = {timed(Rational(1, 2), 0, Rational(1), linear_delay(1)),
                                timed(Rational(1, 2), 1, Rational(0), linear_delay(1))};
  CHECK_THROWS_AS(simulate(rev, 0.5), std::invalid_argument);
}
