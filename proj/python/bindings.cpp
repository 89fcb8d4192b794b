#include "binpack/delays.hpp"
#include "binpack/generator.hpp"
#include "binpack/io.hpp"
#include "binpack/pi_sequence.hpp"
#include "binpack/suite.hpp"
#include "binpack/weights.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace binpack;

namespace {

Rational rat(const std::string& text) {
  auto r = parse_rational(text);
  if (!r) throw py::value_error("malformed rational: " + text);
  return *r;
}

std::vector<ItemClass> classes_from(const std::vector<std::string>& sizes) {
  std::vector<ItemClass> out;
  for (const auto& s : sizes) out.push_back({rat(s), 1, "", ""});
  return out;
}

std::vector<TimedItem> timed_from(
    const std::vector<std::tuple<std::string, std::string, std::string>>& items) {
  // (size, arrival, rate) with linear delays
  std::vector<TimedItem> out;
  std::size_t idx = 0;
  for (const auto& [size, arrive, rate] : items) {
    out.push_back({{rat(size), idx++, ""}, rat(arrive), linear_delay(rat(rate))});
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact bin-packing verification core";

  m.def(
      "ffd",
      [](const std::vector<std::string>& sizes) {
        FFDTrace tr = ffd_classes(classes_from(sizes));
        py::dict d;
        d["bins"] = tr.bin_count;
        d["tau"] = tr.tau;
        d["theta"] = tr.theta ? py::object(py::str(format_rational(*tr.theta)))
                              : py::object(py::none());
        std::vector<std::string> loads;
        for (const auto& l : tr.packing.loads) loads.push_back(format_rational(l));
        d["loads"] = loads;
        return d;
      },
      py::arg("sizes"), "First-fit decreasing; sizes are 'n/d' strings.");

  m.def(
      "first_fit_bins",
      [](const std::vector<std::string>& sizes) {
        return first_fit(expand(classes_from(sizes))).bin_count();
      },
      py::arg("sizes"));

  m.def(
      "exact_optimal",
      [](const std::vector<std::string>& sizes, const std::vector<long long>& counts) {
        auto classes = classes_from(sizes);
        if (!counts.empty()) {
          if (counts.size() != classes.size())
            throw py::value_error("counts must match sizes");
          for (std::size_t i = 0; i < counts.size(); ++i)
            classes[i].count = counts[i];
        }
        return exact_optimal(classes).bins.str();
      },
      py::arg("sizes"), py::arg("counts") = std::vector<long long>{},
      "Minimum bin count as a decimal string.");

  m.def(
      "eval_weight",
      [](const std::string& name, const std::string& x) {
        return format_rational(make_builtin(name).eval(rat(x)));
      },
      py::arg("name"), py::arg("x"));

  m.def(
      "bin_weight",
      [](const std::string& name, const std::vector<std::string>& sizes) {
        WeightFunction f = make_builtin(name);
        Rational w = 0;
        for (const auto& s : sizes) w += f.eval(rat(s));
        return format_rational(w);
      },
      py::arg("name"), py::arg("sizes"));

  m.def(
      "pi_partial_sum",
      [](std::size_t n) {
        return format_rational(pi_sequence(n).partial_sum_rational());
      },
      py::arg("n"), "Exact partial sum; keep n modest, terms grow fast.");

  m.def("pi_certified_upper",
        [](std::size_t n) { return format_rational(pi_certified_upper(n)); },
        py::arg("n"));

  m.def(
      "compute_rho",
      [](std::size_t terms) {
        RhoResult r = compute_rho(terms);
        return py::make_tuple(r.rho, r.ratio_bound);
      },
      py::arg("terms") = 30);

  m.def("lb_formula",
        [](int k) { return format_rational(lb_formula(k)); }, py::arg("k"));
  m.def("k3_limit", [] { return format_rational(k3_limit()); });

  m.def(
      "generate_and_verify",
      [](int k, long long n, int m, const std::vector<int>& families) {
        GeneratorParams p;
        p.k = k;
        p.n = n;
        p.m = m;
        p.families = std::set<int>(families.begin(), families.end());
        auto g = generate_construction(p);
        auto v = verify_construction(g);
        py::dict d;
        d["ok"] = v.ok;
        d["clusters"] = g.instance.clusters.size();
        d["sum_cluster_opt"] = v.sum_cluster_opt.str();
        d["global_opt"] = v.global_opt.str();
        d["ratio"] = format_rational(v.ratio);
        d["failures"] = v.failures;
        return d;
      },
      py::arg("k"), py::arg("n"), py::arg("m"), py::arg("families"));

  m.def(
      "simulate_linear",
      [](const std::vector<std::tuple<std::string, std::string, std::string>>& items,
         double rho) {
        if (rho <= 0) rho = compute_rho(30).rho;
        SimulationTrace tr = simulate(timed_from(items), rho);
        py::dict d;
        d["phases"] = tr.phases.size();
        d["bins"] = tr.total_bins;
        d["cost"] = tr.total_cost;
        d["cost_exact"] = format_rational(tr.total_cost_exact);
        return d;
      },
      py::arg("items"), py::arg("rho") = 0.0,
      "items: (size, arrival, linear rate) rational strings.");

  m.def(
      "offline_optimal",
      [](const std::vector<std::tuple<std::string, std::string, std::string>>& items,
         std::size_t limit) {
        OfflineSolution off = offline_optimal(timed_from(items), limit);
        py::dict d;
        d["bins"] = off.bins;
        d["delay"] = format_rational(off.delay_exact);
        d["cost"] = format_rational(off.cost_exact());
        return d;
      },
      py::arg("items"), py::arg("limit") = 12);

  m.def(
      "check_bound",
      [](const std::vector<std::tuple<std::string, std::string, std::string>>& items,
         double rho) {
        if (rho <= 0) rho = compute_rho(30).rho;
        auto timed = timed_from(items);
        auto tr = simulate(timed, rho);
        auto off = offline_optimal(timed);
        auto chk = check_bound(tr, off);
        py::dict d;
        d["pass"] = chk.pass;
        d["exact"] = chk.exact;
        d["alg"] = chk.alg;
        d["affine_rhs"] = chk.affine_rhs;
        d["ratio_rhs"] = chk.ratio_rhs;
        return d;
      },
      py::arg("items"), py::arg("rho") = 0.0);

  m.def(
      "run_acceptance_quick",
      [] {
        SuiteOptions opt;
        opt.pi_depth = 10;
        opt.cap_random_bins = 2000;
        opt.lemma_trials = 200;
        opt.ffd_trials = 200;
        opt.delay_trials = 200;
        auto results = run_acceptance(opt, nullptr);
        std::vector<py::dict> out;
        for (const auto& r : results) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["pass"] = r.pass;
          out.push_back(std::move(d));
        }
        return out;
      },
      "Reduced-trial run of the verification battery.");
}
