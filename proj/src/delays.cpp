#include "binpack/delays.hpp"

#include "binpack/pi_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace binpack {

// ---- delay functions -------------------------------------------------------

double DelayFunction::eval(double t) const {
  if (t <= 0) return 0;
  switch (kind) {
    case Kind::Linear:
      return to_double(rate) * t;
    case Kind::Power:
      return to_double(rate) * std::pow(t, to_double(exponent));
    case Kind::Table:
      return to_double(eval_exact(rational_from_double(t)));
  }
  return 0;
}

Rational DelayFunction::eval_exact(const Rational& t) const {
  if (t <= 0) return 0;
  if (kind == Kind::Linear) return rate * t;
  if (kind != Kind::Table) {
    throw std::logic_error("eval_exact on a non-exact delay kind");
  }
  Rational pt = 0, pv = 0;  // previous breakpoint, starting at the implied origin
  for (const auto& [bt, bv] : table) {
    if (t <= bt) {
      return pv + (bv - pv) * (t - pt) / (bt - pt);
    }
    pt = bt;
    pv = bv;
  }
  // extend the final segment's slope
  if (table.size() >= 2) {
    const auto& [at, av] = table[table.size() - 2];
    const auto& [bt, bv] = table.back();
    return bv + (bv - av) * (t - bt) / (bt - at);
  }
  const auto& [bt, bv] = table.back();
  return bv + bv * (t - bt) / bt;  // single segment from the origin
}

bool DelayFunction::bounded() const {
  if (kind != Kind::Table) return false;
  if (table.size() < 2) return table.back().second == 0;
  return table.back().second == table[table.size() - 2].second;
}

Rational DelayFunction::bound() const {
  if (!bounded()) throw std::logic_error("bound() on an unbounded delay");
  return table.back().second;
}

void DelayFunction::validate() const {
  if (kind == Kind::Linear || kind == Kind::Power) {
    if (rate <= 0) throw std::invalid_argument("delay rate must be positive");
    if (kind == Kind::Power && exponent <= 0)
      throw std::invalid_argument("delay exponent must be positive");
    return;
  }
  if (table.empty()) throw std::invalid_argument("table delay needs breakpoints");
  Rational pt = 0, pv = 0;
  for (const auto& [t, v] : table) {
    if (t <= pt && !(pt == 0 && t == 0))
      throw std::invalid_argument("table breakpoints must increase");
    if (t == 0 && v != 0) throw std::invalid_argument("delay must satisfy d(0)=0");
    if (v < pv) throw std::invalid_argument("delay must be non-decreasing");
    pt = t;
    pv = v;
  }
  if (table.back().first == 0)
    throw std::invalid_argument("table needs a breakpoint after t=0");
}

DelayFunction linear_delay(const Rational& rate) {
  DelayFunction d;
  d.kind = DelayFunction::Kind::Linear;
  d.rate = rate;
  d.validate();
  return d;
}

DelayFunction power_delay(const Rational& rate, const Rational& exponent) {
  DelayFunction d;
  d.kind = DelayFunction::Kind::Power;
  d.rate = rate;
  d.exponent = exponent;
  d.validate();
  return d;
}

DelayFunction table_delay(std::vector<std::pair<Rational, Rational>> points) {
  DelayFunction d;
  d.kind = DelayFunction::Kind::Table;
  d.table = std::move(points);
  d.validate();
  return d;
}

// ---- simulation ------------------------------------------------------------

namespace {

void validate_timed(const std::vector<TimedItem>& items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    items[i].delay.validate();
    if (items[i].item.size < 0 || items[i].item.size > 1)
      throw std::invalid_argument("item size outside [0,1]");
    if (items[i].arrival < 0)
      throw std::invalid_argument("arrival times must be non-negative");
    if (i > 0) {
      if (items[i].item.index <= items[i - 1].item.index)
        throw std::invalid_argument("item indices must increase");
      if (items[i].arrival < items[i - 1].arrival)
        throw std::invalid_argument("index order must be consistent with arrivals");
    }
  }
}

std::size_t pack_phase(const std::vector<TimedItem>& items, std::size_t first,
                       std::size_t last_excl, Phase& ph) {
  std::vector<Item> phase_items;
  for (std::size_t j = first; j < last_excl; ++j) {
    phase_items.push_back(items[j].item);
    ph.items.push_back(items[j].item.index);
  }
  ph.bins = ffd(std::move(phase_items)).bin_count;
  return ph.bins;
}

SimulationTrace simulate_linear(const std::vector<TimedItem>& items, double rho) {
  SimulationTrace tr;
  tr.rho = rho;
  tr.exact = true;
  const Rational rho_ex = rational_from_double(rho);
  const std::size_t n = items.size();

  std::size_t f = 0;
  while (f < n) {
    // pending delay of arrived unpacked items is R*t - C
    Rational R = 0, C = 0;
    std::size_t j = f;
    std::optional<Rational> trigger;
    while (j < n) {
      if (R > 0) {
        Rational t = (rho_ex + C) / R;
        if (t <= items[j].arrival) {
          trigger = t;
          break;
        }
      }
      R += items[j].delay.rate;
      C += items[j].delay.rate * items[j].arrival;
      ++j;
    }
    if (!trigger) trigger = (rho_ex + C) / R;  // R > 0: rates are positive

    Phase ph;
    ph.trigger = to_double(*trigger);
    ph.delay = rho;  // exact by construction of the crossing time
    tr.total_bins += pack_phase(items, f, j, ph);
    tr.total_cost_exact += rho_ex + Rational(BigInt(ph.bins));
    tr.phases.push_back(std::move(ph));
    f = j;
  }
  tr.total_cost = to_double(tr.total_cost_exact);
  return tr;
}

SimulationTrace simulate_general(const std::vector<TimedItem>& items, double rho,
                                 const std::optional<Rational>& horizon) {
  SimulationTrace tr;
  tr.rho = rho;
  const std::size_t n = items.size();

  std::size_t f = 0;
  while (f < n) {
    // event times: arrivals and table breakpoints of arrived items
    std::vector<double> events;
    for (std::size_t j = f; j < n; ++j) {
      double a = to_double(items[j].arrival);
      events.push_back(a);
      if (items[j].delay.kind == DelayFunction::Kind::Table) {
        for (const auto& [bt, bv] : items[j].delay.table)
          events.push_back(a + to_double(bt));
      }
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    auto pending = [&](double t) {
      double s = 0;
      for (std::size_t j = f; j < n; ++j) {
        double a = to_double(items[j].arrival);
        if (a < t) s += items[j].delay.eval(t - a);
      }
      return s;
    };
    auto bisect = [&](double lo, double hi) {
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
        double mid = lo + (hi - lo) / 2;
        (pending(mid) >= rho ? hi : lo) = mid;
      }
      return hi;
    };

    std::optional<double> trigger;
    for (std::size_t e = 0; e + 1 <= events.size(); ++e) {
      double t1 = events[e];
      double t2 = e + 1 < events.size() ? events[e + 1] : t1;
      if (pending(t1) >= rho) {  // crossing exactly at an event time
        trigger = t1;
        break;
      }
      if (t2 > t1 && pending(t2) >= rho) {
        trigger = bisect(t1, t2);
        break;
      }
    }
    if (!trigger) {
      double last = events.empty() ? 0 : events.back();
      bool all_bounded = true;
      double limit = 0;
      for (std::size_t j = f; j < n; ++j) {
        if (items[j].delay.bounded())
          limit += to_double(items[j].delay.bound());
        else
          all_bounded = false;
      }
      if (all_bounded && limit < rho) {
        if (!horizon) {
          throw std::invalid_argument(
              "bounded delays never reach rho; a horizon is required");
        }
        if (Rational(*horizon) < items.back().arrival) {
          throw std::invalid_argument("horizon precedes the last arrival");
        }
        Phase ph;
        ph.trigger = to_double(*horizon);
        ph.delay = pending(ph.trigger);  // flush below rho
        ph.flushed = true;
        tr.total_bins += pack_phase(items, f, n, ph);
        tr.total_cost += ph.delay + static_cast<double>(ph.bins);
        tr.phases.push_back(std::move(ph));
        return tr;
      }
      double hi = std::max(last, 1.0);
      while (pending(hi) < rho) hi *= 2;
      trigger = bisect(last, hi);
    }

    double t = *trigger;
    std::size_t j = f;
    while (j < n && to_double(items[j].arrival) < t) ++j;
    Phase ph;
    ph.trigger = t;
    ph.delay = pending(t);
    tr.total_bins += pack_phase(items, f, j, ph);
    tr.total_cost += ph.delay + static_cast<double>(ph.bins);
    tr.phases.push_back(std::move(ph));
    f = j;
  }
  return tr;
}

}  // namespace

SimulationTrace simulate(const std::vector<TimedItem>& items, double rho,
                         std::optional<Rational> horizon) {
  if (rho <= 0) throw std::invalid_argument("rho must be positive");
  validate_timed(items);
  bool all_linear = std::all_of(items.begin(), items.end(), [](const TimedItem& t) {
    return t.delay.kind == DelayFunction::Kind::Linear;
  });
  if (all_linear) return simulate_linear(items, rho);
  return simulate_general(items, rho, horizon);
}

RhoResult compute_rho(std::size_t pi_terms) {
  if (pi_terms < 1) throw std::invalid_argument("pi_terms must be >= 1");
  RhoResult r;
  r.pi_hat = pi_partial_sum_double(pi_terms);
  r.rho = (-r.pi_hat + std::sqrt(r.pi_hat * r.pi_hat + 4.0)) / 2.0;
  r.ratio_bound = std::max(1.0 + 1.0 / r.rho, 1.0 + r.rho + r.pi_hat);
  return r;
}

// ---- offline oracle --------------------------------------------------------

namespace {

struct OracleState {
  const std::vector<TimedItem>* items;
  bool exact;
  std::vector<std::vector<std::size_t>> bins;  // positions
  std::vector<Rational> loads;
  std::vector<Rational> close;  // max arrival per bin

  bool found = false;
  Rational best_delay_ex{0};
  double best_delay = 0;
  std::size_t best_bins = 0;
  std::vector<std::vector<std::size_t>> best_partition;

  bool better(std::size_t bins_now, const Rational& dex, double dfl) const {
    if (!found) return true;
    if (exact) {
      Rational c = Rational(BigInt(bins_now)) + dex;
      Rational b = Rational(BigInt(best_bins)) + best_delay_ex;
      if (c != b) return c < b;
    } else {
      double c = static_cast<double>(bins_now) + dfl;
      double b = static_cast<double>(best_bins) + best_delay;
      if (c != b) return c < b;
    }
    return bins_now < best_bins;  // then first found (lexicographic) wins
  }
};

void oracle_rec(OracleState& st, std::size_t idx) {
  const auto& items = *st.items;
  if (idx == items.size()) {
    Rational dex = 0;
    double dfl = 0;
    for (std::size_t b = 0; b < st.bins.size(); ++b) {
      for (std::size_t pos : st.bins[b]) {
        const auto& it = items[pos];
        if (st.exact)
          dex += it.delay.eval_exact(st.close[b] - it.arrival);
        else
          dfl += it.delay.eval(to_double(st.close[b] - it.arrival));
      }
    }
    if (st.better(st.bins.size(), dex, dfl)) {
      st.found = true;
      st.best_bins = st.bins.size();
      st.best_delay_ex = dex;
      st.best_delay = st.exact ? to_double(dex) : dfl;
      st.best_partition = st.bins;
    }
    return;
  }
  const auto& it = items[idx];
  for (std::size_t b = 0; b < st.bins.size(); ++b) {
    if (st.loads[b] + it.item.size > 1) continue;
    st.bins[b].push_back(idx);
    st.loads[b] += it.item.size;
    Rational old_close = st.close[b];
    if (it.arrival > st.close[b]) st.close[b] = it.arrival;
    oracle_rec(st, idx + 1);
    st.close[b] = old_close;
    st.loads[b] -= it.item.size;
    st.bins[b].pop_back();
  }
  st.bins.push_back({idx});
  st.loads.push_back(it.item.size);
  st.close.push_back(it.arrival);
  oracle_rec(st, idx + 1);
  st.bins.pop_back();
  st.loads.pop_back();
  st.close.pop_back();
}

}  // namespace

OfflineSolution offline_optimal(const std::vector<TimedItem>& items,
                                std::size_t limit) {
  if (items.size() > limit) {
    throw std::invalid_argument("offline oracle limited to " + std::to_string(limit) +
                                " items (got " + std::to_string(items.size()) + ")");
  }
  validate_timed(items);
  OfflineSolution sol;
  if (items.empty()) return sol;

  OracleState st;
  st.items = &items;
  st.exact = std::all_of(items.begin(), items.end(), [](const TimedItem& t) {
    return t.delay.kind != DelayFunction::Kind::Power;
  });
  oracle_rec(st, 0);

  sol.bins = st.best_bins;
  sol.exact = st.exact;
  sol.delay = st.best_delay;
  sol.delay_exact = st.best_delay_ex;
  for (const auto& bin : st.best_partition) {
    std::vector<std::size_t> ids;
    for (std::size_t pos : bin) ids.push_back(items[pos].item.index);
    sol.partition.push_back(std::move(ids));
  }
  return sol;
}

BoundCheck check_bound(const SimulationTrace& tr, const OfflineSolution& off,
                       std::size_t pi_terms) {
  BoundCheck chk;
  chk.exact = tr.exact && off.exact;
  chk.opt_bins = static_cast<double>(off.bins);
  chk.opt_delay = off.delay;
  chk.alg = tr.total_cost;

  const Rational pi_hat = pi_certified_upper(pi_terms);
  const Rational rho_ex = rational_from_double(tr.rho);
  const Rational one(1);
  const Rational affine_d = one + one / rho_ex;
  const Rational affine_b = one + rho_ex + pi_hat;
  const Rational ratio = affine_d > affine_b ? affine_d : affine_b;

  const Rational b(BigInt(off.bins));
  if (chk.exact) {
    Rational rhs1 = affine_d * off.delay_exact + affine_b * b;
    Rational rhs2 = ratio * (b + off.delay_exact);
    chk.affine_rhs = to_double(rhs1);
    chk.ratio_rhs = to_double(rhs2);
    if (tr.total_cost_exact > rhs1) {
      chk.pass = false;
      chk.detail = "affine bound violated (exact)";
    } else if (tr.total_cost_exact > rhs2) {
      chk.pass = false;
      chk.detail = "ratio bound violated (exact)";
    }
  } else {
    double rhs1 = to_double(affine_d) * off.delay + to_double(affine_b) * chk.opt_bins;
    double rhs2 = to_double(ratio) * (chk.opt_bins + off.delay);
    chk.affine_rhs = rhs1;
    chk.ratio_rhs = rhs2;
    const double tol = 1e-9;
    if (tr.total_cost > rhs1 + tol) {
      chk.pass = false;
      chk.detail = "affine bound violated";
    } else if (tr.total_cost > rhs2 + tol) {
      chk.pass = false;
      chk.detail = "ratio bound violated";
    }
  }
  return chk;
}

}  // namespace binpack
