#include "binpack/generator.hpp"

#include <algorithm>
#include <sstream>

namespace binpack {

namespace {

std::string families_text(const std::set<int>& fams) {
  std::string out = "{";
  bool first = true;
  for (int f : fams) {
    if (!first) out += ",";
    out += std::to_string(f);
    first = false;
  }
  return out + "}";
}

std::string pad_id(const std::string& prefix, long long i, int width = 6) {
  std::string digits = std::to_string(i);
  if (static_cast<int>(digits.size()) < width)
    digits.insert(digits.begin(), width - digits.size(), '0');
  return prefix + digits;
}

struct Layout {
  // cluster-count coefficients as exact fractions of N
  std::vector<Rational> c3;  // index 1..M stored at [i-1]
  std::vector<Rational> c6;  // index 1..M-1 stored at [i-1]
  std::map<int, Rational> ctail;
  Rational inv_k1;  // P = N/(k-1)
};

Layout layout_coefficients(const GeneratorParams& p) {
  Layout lay;
  const int k = p.k;
  lay.inv_k1 = make_rational(1, k - 1);
  if (p.families.count(3)) {
    // anchor: top-level positive count = (k-2)(10k^2-33k+17) N / ((k-1)(2k-1)(5k-9)),
    // level ratio (2k-3)(5k-9)/10
    Rational p3_top = make_rational(
        static_cast<long long>(k - 2) * (10LL * k * k - 33 * k + 17),
        static_cast<long long>(k - 1) * (2 * k - 1) * (5 * k - 9));
    Rational c3_top = p3_top / (2 * k - 3);
    Rational ratio = make_rational(static_cast<long long>(2 * k - 3) * (5 * k - 9), 10);
    lay.c3.assign(p.m, Rational(0));
    Rational cur = c3_top;
    for (int i = p.m; i >= 1; --i) {
      lay.c3[i - 1] = cur;
      cur /= ratio;
    }
    if (p.families.count(6)) {
      lay.c6.assign(std::max(0, p.m - 1), Rational(0));
      for (int i = 1; i <= p.m - 1; ++i) {
        lay.c6[i - 1] = lay.c3[i - 1] * (2 * k - 3) / 5;
      }
    }
    for (int t : {7, 43, 1807}) {
      if (p.families.count(t)) {
        long long cluster_items = static_cast<long long>(k - 1) * (t - 1) + 1;
        lay.ctail[t] = p3_top / cluster_items;
      }
    }
  }
  return lay;
}

void check_params(const GeneratorParams& p) {
  const std::set<int> allowed{2, 3, 6, 7, 43, 1807};
  for (int f : p.families) {
    if (!allowed.count(f))
      throw std::invalid_argument("unknown family " + std::to_string(f));
  }
  if (p.k < 3) throw std::invalid_argument("k must be >= 3");
  if (p.m < 1) throw std::invalid_argument("M must be >= 1");
  if (p.n < 2) throw std::invalid_argument("N must be >= 2");
  if (!p.families.count(2))
    throw std::invalid_argument("family 2 is required for the global-optimum argument");
  for (int f : {6, 7, 43, 1807}) {
    if (p.families.count(f) && !p.families.count(3))
      throw std::invalid_argument("family " + std::to_string(f) +
                                  " requires family 3");
  }
  if (p.base_scale < 2) throw std::invalid_argument("base_scale must be >= 2");
}

}  // namespace

BigInt required_divisor(const GeneratorParams& p) {
  check_params(p);
  Layout lay = layout_coefficients(p);
  BigInt l = den(lay.inv_k1);
  auto add = [&l](const Rational& coeff) {
    l = boost::multiprecision::lcm(l, den(coeff));
  };
  for (const auto& c : lay.c3) add(c);
  for (const auto& c : lay.c6) add(c);
  for (const auto& [t, c] : lay.ctail) add(c);
  return l;
}

GeneratedConstruction generate_construction(const GeneratorParams& p) {
  check_params(p);
  Layout lay = layout_coefficients(p);

  const BigInt N(p.n);
  BigInt divisor = required_divisor(p);
  if (N % divisor != 0) {
    throw std::invalid_argument("N must be divisible by " + divisor.str() +
                                " for families " + families_text(p.families) +
                                ", M=" + std::to_string(p.m));
  }

  const int k = p.k;
  const int M = p.m;
  const BigInt P = N / (k - 1);
  if (P < 2)
    throw std::invalid_argument("N too small: need at least two near-half pairs");

  // perturbation ladder
  BigInt tail_factor = 1;
  if (p.families.count(1807))
    tail_factor = 1806LL * 1807;  // slack of the fullest bin is 1/(1806*1807)
  else if (p.families.count(43))
    tail_factor = 42LL * 43;
  BigInt pow3 = boost::multiprecision::pow(BigInt(3), 3 * M + 3);
  BigInt D = BigInt(p.base_scale) * N * pow3 * tail_factor;
  Rational nu = make_rational(BigInt(1), D);
  BigInt K = 1;
  while (K <= 10 * N) K *= 3;

  const Rational half(1, 2), third(1, 3), sixth(1, 6);
  auto pos2 = [&](const BigInt& i) { return half + Rational(i) * nu; };
  auto neg2 = [&](const BigInt& i) { return half - Rational(i) * nu; };
  const Rational t2 = half + Rational(P) * nu;
  auto scale = [&](int e) {
    return Rational(K * boost::multiprecision::pow(BigInt(3), e)) * nu;
  };
  auto pos3 = [&](int i) { return third + scale(3 * i); };
  auto neg3 = [&](int i) { return third - scale(3 * i - 1); };
  auto pos6 = [&](int i) { return sixth + scale(3 * i - 1) - Rational(N) * nu; };
  auto neg6 = [&](int i) { return sixth - scale(3 * i) - Rational(N) * nu; };
  auto tail_size = [&](int t) { return make_rational(1, t) + nu; };

  GeneratedConstruction g;
  g.nu = nu;
  g.ladder_k = K;
  g.instance.k = k;

  // integral cluster counts
  std::vector<BigInt> c3(M + 1, BigInt(0)), n3cnt(M + 1, BigInt(0)),
      p3cnt(M + 1, BigInt(0));
  std::vector<BigInt> c6(std::max(1, M), BigInt(0));
  if (p.families.count(3)) {
    for (int i = 1; i <= M; ++i) {
      Rational q = lay.c3[i - 1] * N;
      c3[i] = num(q);  // integral by the divisor check
      p3cnt[i] = c3[i] * (2 * k - 3);
      n3cnt[i] = c3[i] * 2;
    }
  }
  if (p.families.count(6)) {
    for (int i = 1; i <= M - 1; ++i) c6[i] = num(lay.c6[i - 1] * N);
  }

  // type-3 items must fit into the N-P single-type-2 bins
  BigInt type3_total = 0;
  for (int i = 1; i <= M; ++i) type3_total += p3cnt[i] + n3cnt[i];
  if (type3_total > N - P) {
    throw std::invalid_argument("family-3 items (" + type3_total.str() +
                                ") exceed the " + BigInt(N - P).str() +
                                " available half-filled bins");
  }

  // ---- clusters -------------------------------------------------------
  auto& clusters = g.instance.clusters;

  // family 2: i = 1..P-1 holds {neg2_i, pos2_{i+1}, (k-2) x t2}; the leftover
  // {pos2_1, neg2_P, (k-2) x t2} merges into the first cluster
  for (BigInt i = 1; i < P; ++i) {
    bool merged = (i == 1);
    std::string id = merged ? "f2-merged" : pad_id("f2-", i.convert_to<long long>());
    std::vector<ItemClass> cl;
    cl.push_back({neg2(i), 1, id, "negative type (2," + i.str() + ")"});
    cl.push_back(
        {pos2(i + 1), 1, id, "positive type (2," + BigInt(i + 1).str() + ")"});
    cl.push_back({t2, BigInt(k - 2), id, "type 2"});
    if (merged) {
      cl.push_back({pos2(BigInt(1)), 1, id, "positive type (2,1)"});
      cl.push_back({neg2(P), 1, id, "negative type (2," + P.str() + ")"});
      cl.push_back({t2, BigInt(k - 2), id, "type 2"});
    }
    clusters[id] = std::move(cl);
    g.predicted_cluster_cost[id] = k;  // merged overwritten below
  }
  {
    SolverLimits merged_lim;
    merged_lim.item_limit = std::max<std::size_t>(merged_lim.item_limit, 2 * k + 2);
    ExactResult merged_opt = exact_optimal(clusters.at("f2-merged"), merged_lim);
    g.predicted_cluster_cost["f2-merged"] = merged_opt.bins;
  }

  // family 3: per level i, c3[i] clusters of (2k-3) positive + 2 negative
  if (p.families.count(3)) {
    for (int i = 1; i <= M; ++i) {
      for (BigInt j = 0; j < c3[i]; ++j) {
        std::string id =
            pad_id("f3-" + std::to_string(i) + "-", j.convert_to<long long>());
        clusters[id] = {
            {pos3(i), BigInt(2 * k - 3), id,
             "positive type (3," + std::to_string(i) + ")"},
            {neg3(i), 2, id, "negative type (3," + std::to_string(i) + ")"}};
        g.predicted_cluster_cost[id] = k;
      }
    }
  }

  // family 6: per level i, c6[i] clusters of (5k-9) positive(i+1) + 5 negative(i)
  if (p.families.count(6)) {
    for (int i = 1; i <= M - 1; ++i) {
      for (BigInt j = 0; j < c6[i]; ++j) {
        std::string id =
            pad_id("f6-" + std::to_string(i) + "-", j.convert_to<long long>());
        clusters[id] = {
            {pos6(i + 1), BigInt(5 * k - 9), id,
             "positive type (6," + std::to_string(i + 1) + ")"},
            {neg6(i), 5, id, "negative type (6," + std::to_string(i) + ")"}};
        g.predicted_cluster_cost[id] = k;
      }
    }
  }

  // tail families: identical sizes, (k-1)(t-1)+1 items per cluster
  for (int t : {7, 43, 1807}) {
    if (!p.families.count(t)) continue;
    BigInt cl_count = num(lay.ctail.at(t) * N);
    long long per_cluster = static_cast<long long>(k - 1) * (t - 1) + 1;
    for (BigInt j = 0; j < cl_count; ++j) {
      std::string id =
          pad_id("f" + std::to_string(t) + "-", j.convert_to<long long>());
      clusters[id] = {
          {tail_size(t), BigInt(per_cluster), id, "type " + std::to_string(t)}};
      g.predicted_cluster_cost[id] = k;
    }
  }

  // ---- global certificate ---------------------------------------------
  auto& patterns = g.certificate.patterns;
  for (BigInt i = 1; i <= P; ++i) {
    patterns.push_back({{{pos2(i), 1}, {neg2(i), 1}}, 1});
  }
  BigInt plain_t2 = N - P;
  if (p.families.count(3)) {
    for (int i = 1; i <= M; ++i) {
      // positive level i rides with one negative-6 partner below level M
      CertificatePattern pat;
      pat.entries.push_back({t2, 1});
      pat.entries.push_back({pos3(i), 1});
      if (i == M) {
        for (int t : {7, 43, 1807}) {
          if (p.families.count(t)) pat.entries.push_back({tail_size(t), 1});
        }
      } else if (p.families.count(6)) {
        pat.entries.push_back({neg6(i), 1});
      }
      pat.multiplicity = p3cnt[i];
      patterns.push_back(std::move(pat));

      CertificatePattern neg;
      neg.entries.push_back({t2, 1});
      neg.entries.push_back({neg3(i), 1});
      if (i > 1 && p.families.count(6)) neg.entries.push_back({pos6(i), 1});
      neg.multiplicity = n3cnt[i];
      patterns.push_back(std::move(neg));

      plain_t2 -= p3cnt[i] + n3cnt[i];
    }
  }
  if (plain_t2 > 0) {
    patterns.push_back({{{t2, 1}}, plain_t2});
  }

  // large items: every positive type-2 and type-2 item, nothing else
  const std::vector<ItemClass> all = g.instance.all_classes();
  for (const auto& c : all) {
    if (c.size > half) g.large_item_count += c.count;
  }
  g.predicted_global_opt = N;

  g.predicted_sum_opt = 0;
  for (const auto& [id, cost] : g.predicted_cluster_cost) g.predicted_sum_opt += cost;

  return g;
}

namespace {

// family-specific strict inequalities, dispatched on the cluster id prefix
void check_cluster_inequalities(const std::string& id,
                                const std::vector<ItemClass>& classes,
                                VerificationReport& rep) {
  const Rational half(1, 2), third(1, 3), sixth(1, 6);
  auto fail = [&](const std::string& what) {
    rep.ok = false;
    rep.failures.push_back("cluster " + id + ": " + what);
  };

  if (id.rfind("f2-", 0) == 0 && id != "f2-merged") {
    // no two items of a near-half cluster may share a bin
    for (std::size_t a = 0; a < classes.size(); ++a) {
      if (classes[a].count > 1 && classes[a].size * 2 <= 1)
        fail("two '" + classes[a].label + "' items fit one bin");
      for (std::size_t b = a + 1; b < classes.size(); ++b) {
        if (classes[a].size + classes[b].size <= 1)
          fail("pair (" + classes[a].label + ", " + classes[b].label +
               ") fits one bin: " +
               format_rational(classes[a].size + classes[b].size));
      }
    }
  } else if (id.rfind("f3-", 0) == 0) {
    const ItemClass* pos = nullptr;
    const ItemClass* neg = nullptr;
    for (const auto& c : classes) (c.size > third ? pos : neg) = &c;
    if (!pos || !neg) {
      fail("expected sizes on both sides of 1/3");
      return;
    }
    if (pos->size > half) fail("positive item is large");
    if (!(pos->size + neg->size * 2 > 1))
      fail("one positive + two negative items fit one bin: " +
           format_rational(pos->size + neg->size * 2));
    if (!(pos->size + neg->size <= 1)) fail("positive+negative pair overfills");
  } else if (id.rfind("f6-", 0) == 0) {
    const ItemClass* pos = nullptr;
    const ItemClass* neg = nullptr;
    for (const auto& c : classes) (c.size > sixth ? pos : neg) = &c;
    if (!pos || !neg) {
      fail("expected sizes on both sides of 1/6");
      return;
    }
    if (!(pos->size + neg->size * 5 > 1))
      fail("six items (1 positive + 5 negative) fit one bin: " +
           format_rational(pos->size + neg->size * 5));
    if (!(neg->size > 0)) fail("negative size not positive");
  } else if (id.rfind("f7-", 0) == 0 || id.rfind("f43-", 0) == 0 ||
             id.rfind("f1807-", 0) == 0) {
    int t = std::stoi(id.substr(1, id.find('-', 1) - 1));
    const Rational& s = classes.front().size;
    if (!(s * t > 1))
      fail(std::to_string(t) + " items fit one bin: " + format_rational(s * t));
    if (!(s * (t - 1) <= 1))
      fail("a bin cannot hold " + std::to_string(t - 1) + " items: " +
           format_rational(s * (t - 1)));
  }
}

}  // namespace

VerificationReport verify_construction(const GeneratedConstruction& g,
                                       const SolverLimits& lim) {
  VerificationReport rep;
  const auto all = g.instance.all_classes();

  ValidationReport val = validate_instance(all);
  if (!val.ok) {
    rep.ok = false;
    for (const auto& e : val.errors) rep.failures.push_back(e);
  }
  rep.checks.push_back("instance validation: " + std::to_string(all.size()) +
                       " classes, " + val.item_count.str() + " items");

  CertificateCheck cert = check_certificate(all, g.certificate);
  if (!cert.ok) {
    rep.ok = false;
    for (const auto& f : cert.failures) rep.failures.push_back(f);
  }
  rep.checks.push_back("certificate: " + std::to_string(g.certificate.patterns.size()) +
                       " patterns, " + cert.bin_count.str() + " bins");

  if (cert.large_items != cert.bin_count) {
    rep.ok = false;
    rep.failures.push_back("large-item count " + cert.large_items.str() +
                           " differs from certificate bins " +
                           cert.bin_count.str());
  }
  if (cert.large_items != g.large_item_count || cert.bin_count != g.predicted_global_opt) {
    rep.ok = false;
    rep.failures.push_back("predicted global optimum " +
                           g.predicted_global_opt.str() + " not certified");
  }
  rep.global_opt = cert.bin_count;
  rep.checks.push_back("global optimum " + cert.bin_count.str() +
                       " certified by large-item bound");

  SolverLimits cluster_lim = lim;
  cluster_lim.item_limit =
      std::max<std::size_t>(cluster_lim.item_limit, 2 * g.instance.k + 2);
  std::size_t ineq_clusters = 0;
  for (const auto& [id, classes] : g.instance.clusters) {
    ExactResult opt = exact_optimal(classes, cluster_lim);
    auto pred = g.predicted_cluster_cost.find(id);
    if (pred == g.predicted_cluster_cost.end()) {
      rep.ok = false;
      rep.failures.push_back("cluster " + id + " has no predicted cost");
    } else if (opt.bins != pred->second) {
      rep.ok = false;
      rep.failures.push_back("cluster " + id + ": solver found " + opt.bins.str() +
                             " bins, predicted " + pred->second.str());
    }
    if (opt.bins < g.instance.k) {
      rep.ok = false;
      rep.failures.push_back("cluster " + id + ": optimum " + opt.bins.str() +
                             " below k=" + std::to_string(g.instance.k));
    }
    rep.sum_cluster_opt += opt.bins;
    check_cluster_inequalities(id, classes, rep);
    ++ineq_clusters;
  }
  rep.checks.push_back("per-cluster optima and inequalities over " +
                       std::to_string(ineq_clusters) + " clusters");

  if (rep.sum_cluster_opt != g.predicted_sum_opt) {
    rep.ok = false;
    rep.failures.push_back("sum of cluster optima " + rep.sum_cluster_opt.str() +
                           " differs from prediction " + g.predicted_sum_opt.str());
  }
  if (rep.global_opt > 0) rep.ratio = make_rational(rep.sum_cluster_opt, rep.global_opt);
  return rep;
}

Rational lb_formula(int k) {
  if (k < 4) throw std::invalid_argument("lb_formula requires k >= 4");
  const long long kk = k;
  Rational r = make_rational(kk, kk - 1);
  r += make_rational(kk * (kk - 2), (kk - 1) * (2 * kk - 1));
  r += make_rational(2 * kk * (kk - 2), (kk - 1) * (2 * kk - 1) * (5 * kk - 9));
  Rational inner = make_rational(1, 6 * kk - 5) + make_rational(1, 42 * kk - 41) +
                   make_rational(1, 1806 * kk - 1805);
  Rational poly(BigInt(10) * kk * kk * kk - 53 * kk * kk + 83 * kk - 34);
  r += Rational(BigInt(kk)) * poly * inner /
       Rational(BigInt(kk - 1) * (2 * kk - 1) * (5 * kk - 9));
  return r;
}

Rational k3_limit() {
  return Rational(19, 10) + Rational(2, 18065) + Rational(2, 425) + Rational(2, 65);
}

Rational finite_prediction(const GeneratorParams& p) {
  check_params(p);
  Layout lay = layout_coefficients(p);
  // per-N cluster count: (P-1)/N plus every family cluster coefficient
  Rational clusters_per_n = lay.inv_k1 - make_rational(1, p.n);
  for (const auto& c : lay.c3) clusters_per_n += c;
  for (const auto& c : lay.c6) clusters_per_n += c;
  for (const auto& [t, c] : lay.ctail) clusters_per_n += c;
  return clusters_per_n * p.k;
}

}  // namespace binpack
