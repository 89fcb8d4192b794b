#include "binpack/delays.hpp"
#include "binpack/generator.hpp"
#include "binpack/io.hpp"
#include "binpack/pi_sequence.hpp"
#include "binpack/suite.hpp"
#include "binpack/weights.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <set>

namespace {

using namespace binpack;
using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point t0 = Clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  }
};

std::string dec(const Rational& r, int digits = 12) {
  return format_decimal(r, digits);
}

ParsedInstance load(const std::string& path) {
  return parse_instance(read_file(path));
}

std::vector<ItemClass> plain_classes(const ParsedInstance& inst) {
  if (inst.kind == InstanceKind::Timed)
    throw std::invalid_argument("expected a plain or clustered instance");
  return inst.classes;
}

std::vector<TimedItem> timed_items(const ParsedInstance& inst) {
  if (inst.kind != InstanceKind::Timed)
    throw std::invalid_argument("expected a timed instance");
  return inst.timed;
}

int cmd_pack(const std::string& input, const std::string& algo, std::size_t limit,
             bool tsv) {
  Timer t;
  Report rep;
  rep.command = "pack";
  rep.params = {{"algo", algo}, {"input", input}};
  auto classes = plain_classes(load(input));
  if (algo == "ff") {
    Packing p = first_fit(expand(classes));
    rep.rows.push_back({"bins", std::to_string(p.bin_count()), ""});
  } else if (algo == "ffd") {
    FFDTrace tr = ffd_classes(classes);
    rep.rows.push_back({"bins", std::to_string(tr.bin_count), ""});
    rep.rows.push_back({"tau", std::to_string(tr.tau), ""});
    if (tr.theta)
      rep.rows.push_back({"theta", format_rational(*tr.theta), dec(*tr.theta, 6)});
  } else if (algo == "exact") {
    SolverLimits lim;
    lim.item_limit = limit;
    ExactResult r = exact_optimal(classes, lim);
    rep.rows.push_back({"optimal-bins", r.bins.str(), ""});
    const char* names[] = {"empty", "branch-and-bound", "pattern-enum", "single-size"};
    rep.rows.push_back({"method", names[static_cast<int>(r.method)], ""});
    FFDTrace tr = ffd_classes(classes);
    rep.rows.push_back({"ffd-bins", std::to_string(tr.bin_count), ""});
  } else {
    throw CLI::ValidationError("--algo must be ff, ffd or exact");
  }
  rep.wall_ms = t.ms();
  rep.print(std::cout, tsv);
  return 0;
}

int cmd_price(const std::string& input, const std::string& mode,
              const std::string& cert_path, std::size_t limit, bool tsv) {
  Timer t;
  Report rep;
  rep.command = "price";
  rep.params = {{"input", input}, {"mode", mode}};
  ClusteredInstance ci = group_clusters(load(input));
  Certificate cert;
  const Certificate* cert_ptr = nullptr;
  if (!cert_path.empty()) {
    cert = parse_certificate(read_file(cert_path));
    cert_ptr = &cert;
    rep.params.push_back({"certificate", cert_path});
  }
  SolverLimits lim;
  lim.item_limit = limit;
  PriceReport pr = price_of_clustering(
      ci, mode == "exact" ? PriceMode::Exact : PriceMode::FfdUpper, cert_ptr, lim);
  rep.rows.push_back({"clusters", std::to_string(pr.per_cluster.size()), ""});
  rep.rows.push_back({"sum-cluster-opt", pr.sum_cluster_opt.str(), ""});
  rep.rows.push_back({"global-opt", pr.global_opt.str(), ""});
  const char* methods[] = {"exact-solver", "certificate+large-item-bound",
                           "size-lower-bound"};
  rep.rows.push_back({"global-method", methods[static_cast<int>(pr.method)], ""});
  rep.rows.push_back({"ratio", format_rational(pr.ratio), dec(pr.ratio, 10)});
  for (const auto& n : pr.notes) rep.rows.push_back({"note", "", n});
  if (mode == "exact")
    rep.verdicts.push_back({"every cluster optimum >= k", pr.valid_k});
  rep.wall_ms = t.ms();
  rep.print(std::cout, tsv);
  return rep.all_pass() ? 0 : 1;
}

int cmd_gen_lb(int k, long long n, int m, const std::string& families,
               const std::string& emit, bool tsv) {
  Timer t;
  Report rep;
  rep.command = "gen-lb";
  rep.params = {{"k", std::to_string(k)},
                {"N", std::to_string(n)},
                {"M", std::to_string(m)},
                {"families", families}};
  GeneratorParams p;
  p.k = k;
  p.n = n;
  p.m = m;
  p.families.clear();
  for (const auto& fam : CLI::detail::split(families, ','))
    p.families.insert(std::stoi(fam));

  GeneratedConstruction g = generate_construction(p);
  VerificationReport v = verify_construction(g);

  rep.rows.push_back({"clusters", std::to_string(g.instance.clusters.size()), ""});
  rep.rows.push_back({"item-classes", std::to_string(g.instance.all_classes().size()), ""});
  rep.rows.push_back({"large-items", g.large_item_count.str(), ""});
  rep.rows.push_back({"global-opt", v.global_opt.str(), ""});
  rep.rows.push_back({"sum-cluster-opt", v.sum_cluster_opt.str(), ""});
  rep.rows.push_back({"ratio", format_rational(v.ratio), dec(v.ratio, 10)});
  rep.rows.push_back(
      {"merged-cluster-opt", g.predicted_cluster_cost.at("f2-merged").str(), ""});
  rep.rows.push_back({"nu", format_rational(g.nu), ""});
  Rational pred = finite_prediction(p);
  rep.rows.push_back({"prediction-at-k", format_rational(pred), dec(pred, 10)});
  for (const auto& line : v.checks) rep.rows.push_back({"check", "", line});
  for (const auto& f : v.failures) rep.rows.push_back({"failure", "", f});
  rep.verdicts.push_back({"construction verified", v.ok});

  if (!emit.empty()) {
    write_file(emit, emit_instance(from_clustered(g.instance)));
    write_file(emit + ".cert", emit_certificate(g.certificate));
    rep.rows.push_back({"emitted", "", emit + " and " + emit + ".cert"});
  }
  rep.wall_ms = t.ms();
  rep.print(std::cout, tsv);
  return v.ok ? 0 : 1;
}

int cmd_lb_formula(int k, bool tsv) {
  Timer t;
  Report rep;
  rep.command = "lb-formula";
  rep.params = {{"k", std::to_string(k)}};
  Rational r = lb_formula(k);
  rep.rows.push_back({"lower-bound", format_rational(r), dec(r, 10)});
  rep.wall_ms = t.ms();
  rep.print(std::cout, tsv);
  return 0;
}

int cmd_k3_limit(bool tsv) {
  Timer t;
  Report rep;
  rep.command = "k3-limit";
  Rational r = k3_limit();
  rep.rows.push_back({"limit", format_rational(r), dec(r, 13)});
  rep.wall_ms = t.ms();
  rep.print(std::cout, tsv);
  return 0;
}

int cmd_verify_weights(std::uint64_t seed, const std::string& function,
                       std::size_t trials, bool exhaustive, bool tsv) {
  Timer t;
  Report rep;
  rep.command = "verify-weights";
  rep.seed = seed;
  rep.params = {{"trials", std::to_string(trials)}};
  struct Case {
    const char* name;
    Rational cap;
    int lemma_k;  // 0 = no cluster lemma for this function
  };
  std::vector<Case> cases = {{"w195", Rational(39, 20), 0},
                             {"wk3", Rational(581, 300), 3},
                             {"wk4", Rational(146312, 77805), 4},
                             {"v", pi_certified_upper(12), 0}};
  bool ok = true;
  auto bins = random_feasible_bins(trials, seed);
  for (const auto& cs : cases) {
    if (!function.empty() && function != cs.name) continue;
    WeightFunction f = make_builtin(cs.name);
    auto rv = bin_weight_cap_check(f, cs.cap, bins);
    rep.verdicts.push_back({std::string(cs.name) + " cap on random bins", rv.empty()});
    ok = ok && rv.empty();
    if (exhaustive) {
      auto gv = bin_weight_cap_check_grid(f, cs.cap, GridSpec{});
      rep.verdicts.push_back({std::string(cs.name) + " cap on the q=420 grid",
                              gv.empty()});
      ok = ok && gv.empty();
    }
    if (cs.lemma_k > 0) {
      SuiteResult lr = lemma_suite(f, cs.lemma_k, trials / 10, seed + cs.lemma_k);
      rep.verdicts.push_back({std::string(cs.name) + " cluster weight lemma (" +
                                  std::to_string(lr.tested) + " clusters)",
                              lr.violations == 0});
      ok = ok && lr.violations == 0;
    }
  }
  if (function.empty() || function == "v") {
    SuiteResult fr = ffd_property_suite(trials / 10, seed + 99);
    rep.verdicts.push_back({"FFD <= V+1 and structural invariants (" +
                                std::to_string(fr.tested) + " multisets)",
                            fr.violations == 0});
    ok = ok && fr.violations == 0;
  }
  rep.wall_ms = t.ms();
  rep.print(std::cout, tsv);
  return ok ? 0 : 1;
}

int cmd_pi(std::size_t terms, bool tsv) {
  Timer t;
  Report rep;
  rep.command = "pi";
  rep.params = {{"terms", std::to_string(terms)}};
  HarmonicSequence h = pi_sequence(terms);
  for (std::size_t i = 0; i < h.terms.size(); ++i) {
    const BigInt& c = h.terms[i];
    std::size_t bits = mpz_sizeinbase(c.backend().data(), 2);
    std::string shown =
        bits <= 130 ? c.str() : ("~2^" + std::to_string(bits) + " (" +
                                 std::to_string(bits) + " bits)");
    rep.rows.push_back({"c_" + std::to_string(i + 1), shown, ""});
  }
  if (terms <= 12) {
    Rational ps = h.partial_sum_rational();
    rep.rows.push_back({"partial-sum", format_rational(ps), dec(ps, 12)});
    Rational cu = h.certified_upper.to_rational();
    rep.rows.push_back({"certified-upper", format_rational(cu), dec(cu, 12)});
  } else {
    rep.rows.push_back(
        {"partial-sum", "",
         std::to_string(pi_partial_sum_double(terms)) + " (exact form kept internally)"});
  }
  const Rational bound(1691030207LL, 1000000000LL);
  rep.verdicts.push_back({"partial sum below 1.691030207", less(h.partial_sum, bound)});
  rep.verdicts.push_back(
      {"series limit certified below 1.691030207", less(h.certified_upper, bound)});
  rep.wall_ms = t.ms();
  rep.print(std::cout, tsv);
  return rep.all_pass() ? 0 : 1;
}

int cmd_rho(std::size_t terms, bool tsv) {
  Timer t;
  Report rep;
  rep.command = "rho";
  rep.params = {{"terms", std::to_string(terms)}};
  RhoResult r = compute_rho(terms);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", r.rho);
  rep.rows.push_back({"rho", "", buf});
  std::snprintf(buf, sizeof buf, "%.10f", r.ratio_bound);
  rep.rows.push_back({"ratio-bound", "", buf});
  std::snprintf(buf, sizeof buf, "%.10f", r.pi_hat);
  rep.rows.push_back({"pi-partial", "", buf});
  rep.wall_ms = t.ms();
  rep.print(std::cout, tsv);
  return 0;
}

int cmd_simulate(const std::string& input, double rho, const std::string& horizon,
                 bool tsv) {
  Timer t;
  Report rep;
  rep.command = "simulate";
  rep.params = {{"input", input}};
  auto items = timed_items(load(input));
  if (rho <= 0) rho = compute_rho(30).rho;
  std::optional<Rational> h;
  if (!horizon.empty()) {
    auto r = parse_rational(horizon);
    if (!r) throw std::invalid_argument("malformed horizon");
    h = *r;
  }
  SimulationTrace tr = simulate(items, rho, h);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", rho);
  rep.params.push_back({"rho", buf});
  rep.rows.push_back({"phases", std::to_string(tr.phases.size()), ""});
  rep.rows.push_back({"bins", std::to_string(tr.total_bins), ""});
  std::snprintf(buf, sizeof buf, "%.10f", tr.total_cost);
  rep.rows.push_back({"cost", tr.exact ? format_rational(tr.total_cost_exact) : "",
                      buf});
  for (std::size_t i = 0; i < tr.phases.size(); ++i) {
    const Phase& ph = tr.phases[i];
    std::snprintf(buf, sizeof buf, "t=%.6f delay=%.6f bins=%zu items=%zu%s",
                  ph.trigger, ph.delay, ph.bins, ph.items.size(),
                  ph.flushed ? " (flushed)" : "");
    rep.rows.push_back({"phase-" + std::to_string(i + 1), "", buf});
  }
  rep.wall_ms = t.ms();
  rep.print(std::cout, tsv);
  return 0;
}

int cmd_oracle(const std::string& input, std::size_t limit, bool tsv) {
  Timer t;
  Report rep;
  rep.command = "oracle";
  rep.params = {{"input", input}, {"limit", std::to_string(limit)}};
  auto items = timed_items(load(input));
  OfflineSolution off = offline_optimal(items, limit);
  rep.rows.push_back({"bins", std::to_string(off.bins), ""});
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", off.delay);
  rep.rows.push_back(
      {"delay", off.exact ? format_rational(off.delay_exact) : "", buf});
  std::snprintf(buf, sizeof buf, "%.10f", off.cost());
  rep.rows.push_back(
      {"cost", off.exact ? format_rational(off.cost_exact()) : "", buf});
  for (std::size_t b = 0; b < off.partition.size(); ++b) {
    std::string bin;
    for (std::size_t idx : off.partition[b])
      bin += (bin.empty() ? "" : " ") + std::to_string(idx);
    rep.rows.push_back({"bin-" + std::to_string(b + 1), "", bin});
  }
  rep.wall_ms = t.ms();
  rep.print(std::cout, tsv);
  return 0;
}

int cmd_check_bound(const std::string& input, double rho, std::size_t limit,
                    std::size_t pi_terms, bool tsv) {
  Timer t;
  Report rep;
  rep.command = "check-bound";
  rep.params = {{"input", input}};
  auto items = timed_items(load(input));
  if (rho <= 0) rho = compute_rho(30).rho;
  SimulationTrace tr = simulate(items, rho);
  OfflineSolution off = offline_optimal(items, limit);
  BoundCheck chk = check_bound(tr, off, pi_terms);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.10f", chk.alg);
  rep.rows.push_back({"alg-cost", tr.exact ? format_rational(tr.total_cost_exact) : "",
                      buf});
  std::snprintf(buf, sizeof buf, "B=%zu D=%.10f", off.bins, off.delay);
  rep.rows.push_back({"offline", "", buf});
  std::snprintf(buf, sizeof buf, "%.10f", chk.affine_rhs);
  rep.rows.push_back({"affine-rhs", "", buf});
  std::snprintf(buf, sizeof buf, "%.10f", chk.ratio_rhs);
  rep.rows.push_back({"ratio-rhs", "", buf});
  rep.verdicts.push_back({"competitive bound" + std::string(chk.exact ? " (exact)" : ""),
                          chk.pass});
  if (!chk.detail.empty()) rep.rows.push_back({"detail", "", chk.detail});
  rep.wall_ms = t.ms();
  rep.print(std::cout, tsv);
  return chk.pass ? 0 : 1;
}

int cmd_suite(std::uint64_t seed, bool quick, bool tsv) {
  SuiteOptions opt;
  opt.seed = seed;
  if (quick) {
    opt.pi_depth = 12;
    opt.cap_random_bins = 10000;
    opt.lemma_trials = 1000;
    opt.ffd_trials = 1000;
    opt.delay_trials = 1000;
  }
  auto results = run_acceptance(opt, &std::cout);
  if (tsv) {
    for (const auto& r : results)
      std::cout << "criterion\t" << r.id << "\t" << (r.pass ? "pass" : "FAIL") << "\t"
                << r.name << "\n";
  }
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binpacklab: exact verification of clustering price bounds and "
               "delay-aware online packing"};
  app.require_subcommand(1);
  bool tsv = false;
  app.add_flag("--format-tsv,--tsv", tsv, "machine-readable tab-separated output");

  std::string input, algo = "ffd", mode = "exact", cert, families = "2,3", emit;
  std::string function, horizon;
  std::size_t limit = 24, trials = 10000, terms = 30, pi_terms = 12, oracle_limit = 12;
  int k = 3, m = 1;
  long long n = 90;
  double rho = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false, quick = false;

  auto* pack = app.add_subcommand("pack", "pack a plain instance with ff, ffd or exact");
  pack->add_option("--input", input)->required();
  pack->add_option("--algo", algo, "ff|ffd|exact");
  pack->add_option("--limit", limit, "exact-solver item limit");

  auto* price = app.add_subcommand("price", "price of clustering for a clustered instance");
  price->add_option("--input", input)->required();
  price->add_option("--mode", mode, "exact|ffd-upper");
  price->add_option("--certificate", cert, "global packing certificate file");
  price->add_option("--limit", limit);

  auto* gen = app.add_subcommand("gen-lb", "generate and verify a worst-case construction");
  gen->add_option("--k", k)->required();
  gen->add_option("--N", n)->required();
  gen->add_option("--M", m);
  gen->add_option("--families", families, "comma list from {2,3,6,7,43,1807}");
  gen->add_option("--emit", emit, "write instance and certificate files");

  auto* lbf = app.add_subcommand("lb-formula", "closed-form lower bound for k >= 4");
  lbf->add_option("--k", k)->required();

  app.add_subcommand("k3-limit", "limit of the k=3 construction");

  auto* vw = app.add_subcommand("verify-weights", "weight caps and lemma suites");
  vw->add_option("--seed", seed)->required();
  vw->add_option("--function", function, "restrict to one of w195|wk3|wk4|v");
  vw->add_option("--trials", trials);
  vw->add_flag("--exhaustive-grid", exhaustive, "also run the q=420 grid family");

  auto* pi = app.add_subcommand("pi", "harmonic sequence terms and partial sums");
  pi->add_option("--terms", terms)->required();

  auto* rho_cmd = app.add_subcommand("rho", "balancing parameter and its bound");
  rho_cmd->add_option("--terms", terms)->required();

  auto* sim = app.add_subcommand("simulate", "run the phase algorithm on a timed instance");
  sim->add_option("--input", input)->required();
  sim->add_option("--rho", rho, "defaults to the computed balancing parameter");
  sim->add_option("--horizon", horizon, "flush time for bounded delays (rational)");

  auto* orc = app.add_subcommand("oracle", "brute-force offline optimum");
  orc->add_option("--input", input)->required();
  orc->add_option("--limit", oracle_limit);

  auto* chk = app.add_subcommand("check-bound", "simulate, solve offline, compare");
  chk->add_option("--input", input)->required();
  chk->add_option("--rho", rho);
  chk->add_option("--limit", oracle_limit);
  chk->add_option("--pi-terms", pi_terms);

  auto* suite = app.add_subcommand("suite", "full verification battery");
  suite->add_option("--seed", seed);
  suite->add_flag("--quick", quick, "reduced trial counts for a fast pass");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pack->parsed()) return cmd_pack(input, algo, limit, tsv);
    if (price->parsed()) return cmd_price(input, mode, cert, limit, tsv);
    if (gen->parsed()) return cmd_gen_lb(k, n, m, families, emit, tsv);
    if (lbf->parsed()) return cmd_lb_formula(k, tsv);
    if (app.get_subcommand("k3-limit")->parsed()) return cmd_k3_limit(tsv);
    if (vw->parsed()) return cmd_verify_weights(seed, function, trials, exhaustive, tsv);
    if (pi->parsed()) return cmd_pi(terms, tsv);
    if (rho_cmd->parsed()) return cmd_rho(terms, tsv);
    if (sim->parsed()) return cmd_simulate(input, rho, horizon, tsv);
    if (orc->parsed()) return cmd_oracle(input, oracle_limit, tsv);
    if (chk->parsed()) return cmd_check_bound(input, rho, oracle_limit, pi_terms, tsv);
    if (suite->parsed()) return cmd_suite(seed ? seed : 42, quick, tsv);
  } catch (const binpack::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const binpack::SolveTooLargeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
