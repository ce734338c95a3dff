#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "orlicz/bound_verifier.hpp"
#include "orlicz/golden.hpp"
#include "orlicz/io.hpp"
#include "orlicz/limit_experiments.hpp"
#include "orlicz/orlicz_norm.hpp"
#include "orlicz/split_chain.hpp"
#include "orlicz/tower_chain.hpp"
#include "orlicz/young.hpp"

namespace py = pybind11;
using namespace orlicz;

namespace {

double ext_to_double(const ExtReal& v) {
  return v.is_inf ? std::numeric_limits<double>::infinity() : v.value;
}

py::object to_py(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

TowerChainSpec spec_from_atoms(
    const std::vector<std::tuple<std::string, double, double, std::int64_t>>&
        atoms) {
  TowerChainSpec spec;
  for (const auto& [label, alpha, f, h] : atoms)
    spec.atoms.push_back({label, alpha, f, h});
  return spec;
}

}  // namespace

PYBIND11_MODULE(_orlicz_regen, m) {
  m.doc() = "Orlicz-norm bounds for additive functionals of regenerative "
            "Markov chains";

  py::class_<YoungFn>(m, "YoungFn")
      .def_static("power", &YoungFn::power, py::arg("p"))
      .def_static("exp_power", &YoungFn::exp_power, py::arg("alpha"))
      .def_static("power_log", &YoungFn::power_log, py::arg("p"), py::arg("c"))
      .def_static("linear", &YoungFn::linear)
      .def("__call__", &YoungFn::operator())
      .def("inverse", &YoungFn::inverse)
      .def("scaled", &YoungFn::scaled, py::arg("a"), py::arg("b") = 1.0)
      .def("describe", &YoungFn::describe)
      .def("__repr__", &YoungFn::describe);

  py::class_<GenYoungFn>(m, "GenYoungFn")
      .def_static("from_young", &GenYoungFn::from_young)
      .def("__call__",
           [](const GenYoungFn& f, double x) { return ext_to_double(f(x)); })
      .def("inverse", &GenYoungFn::inverse)
      .def("describe", &GenYoungFn::describe)
      .def("tabulate", &GenYoungFn::tabulate, py::arg("lo"), py::arg("hi"),
           py::arg("n") = 2048)
      .def("__repr__", &GenYoungFn::describe);

  m.def("conjugate", py::overload_cast<const YoungFn&>(&conjugate));
  m.def("conjugate_gen", py::overload_cast<const GenYoungFn&>(&conjugate));
  m.def("rho_of", &rho_of, py::arg("phi"), py::arg("psi"));
  m.def("zeta_of", &zeta_of, py::arg("phi"), py::arg("psi"));
  m.def("eta_nu", &eta_nu, py::arg("phi"), py::arg("psi"));
  m.def("tilde_phi", &tilde_phi, py::arg("psi"), py::arg("rho"));
  m.def("kappa_of",
        [](const YoungFn& zeta, const YoungFn& psi) {
          auto k = kappa_of(zeta, psi);
          return py::make_tuple(k.kappa, k.kappa_inv, k.vartheta);
        },
        py::arg("zeta"), py::arg("psi"));
  m.def("normalize_assumption_A",
        [](const YoungFn& psi) {
          auto r = normalize_assumption_A(psi);
          return py::make_tuple(r.fn, r.changed);
        });
  m.def("dominates",
        [](const GenYoungFn& a, const GenYoungFn& b) {
          return dominates(a, b).holds;
        });
  m.def("fitted_exponent", &fitted_exponent, py::arg("f"), py::arg("lo"),
        py::arg("hi"), py::arg("n") = 60);
  m.def("fitted_exp_exponent", &fitted_exp_exponent, py::arg("f"),
        py::arg("lo"), py::arg("hi"), py::arg("n") = 60);
  m.def("fitted_log_power", &fitted_log_power, py::arg("f"), py::arg("p"),
        py::arg("lo"), py::arg("hi"), py::arg("n") = 60);

  m.def("orlicz_norm",
        [](const std::vector<double>& sample, const YoungFn& phi,
           double target) {
          return ext_to_double(orlicz_norm(sample, phi, target).value);
        },
        py::arg("sample"), py::arg("phi"), py::arg("target") = 1.0);
  m.def("psi_alpha_norm",
        [](const std::vector<double>& sample, double alpha) {
          return ext_to_double(psi_alpha_norm(sample, alpha).value);
        });

  py::class_<TowerChain>(m, "TowerChain")
      .def_property_readonly(
          "R", [](const TowerChain& tc) { return tc.laws.R; })
      .def_property_readonly(
          "pi_C", [](const TowerChain& tc) { return tc.laws.pi_C; })
      .def_property_readonly("atoms",
                             [](const TowerChain& tc) {
                               std::vector<std::tuple<std::string, double,
                                                      double, std::int64_t>> out;
                               for (const auto& a : tc.spec.atoms)
                                 out.emplace_back(a.label, a.alpha, a.f_tilde,
                                                  a.h);
                               return out;
                             })
      .def("stationarity_gap",
           [](const TowerChain& tc) { return stationarity_gap(tc); });

  m.def("build_tower",
        [](const std::vector<std::tuple<std::string, double, double,
                                        std::int64_t>>& atoms,
           bool require_aperiodic) {
          return build_tower(spec_from_atoms(atoms), require_aperiodic);
        },
        py::arg("atoms"), py::arg("require_aperiodic") = false,
        "Build the level-climbing chain from (label, alpha, f, h) atoms.");

  m.def("pitman_check",
        [](const TowerChain& tc, std::size_t n_blocks, std::uint64_t seed,
           int workers) {
          auto r = pitman_check(
              tc.chain, [](const ChainState&, bool) { return 1.0; }, n_blocks,
              seed, workers);
          return to_py(report_to_json(r));
        },
        py::arg("tower"), py::arg("n_blocks"), py::arg("seed"),
        py::arg("workers") = 0);

  m.def("verify_thm_nu",
        [](const TowerChain& tc, const YoungFn& phi, const YoungFn& psi) {
          return to_py(report_to_json(verify_thm_nu(tc, phi, psi)));
        });
  m.def("verify_thm_pi",
        [](const TowerChain& tc, const YoungFn& phi, const YoungFn& psi,
           bool improved_factor) {
          return to_py(
              report_to_json(verify_thm_pi(tc, phi, psi, improved_factor)));
        },
        py::arg("tower"), py::arg("phi"), py::arg("psi"),
        py::arg("improved_factor") = false);
  m.def("verify_cor_nu",
        [](const TowerChain& tc, const YoungFn& psi, const YoungFn& rho) {
          return to_py(report_to_json(verify_cor_nu(tc, psi, rho)));
        });
  m.def("verify_cor_pi",
        [](const TowerChain& tc, const YoungFn& psi, const YoungFn& zeta,
           const YoungFn& phi, double K) {
          return to_py(report_to_json(verify_cor_pi(tc, psi, zeta, phi, K)));
        });

  m.def("certify_counterexample",
        [](const std::string& side, const YoungFn& phi, const YoungFn& psi,
           const GenYoungFn& candidate, int n_max, double theta, double budget,
           std::size_t term_budget) {
          WeakOptResult res = side == "pi"
                                  ? weak_opt_pi_spec(phi, psi, candidate, n_max)
                                  : weak_opt_nu_spec(phi, psi, candidate, n_max);
          json body{{"result", report_to_json(res)}};
          if (res.refuted)
            body["certificate"] = report_to_json(divergence_certificate(
                res.series_term, theta, budget, term_budget));
          return to_py(body);
        },
        py::arg("side"), py::arg("phi"), py::arg("psi"), py::arg("candidate"),
        py::arg("n_max") = 40, py::arg("theta") = 1.0,
        py::arg("budget") = 1e6, py::arg("term_budget") = 10000);

  m.def("clt_experiment",
        [](const TowerChain& tc, const std::vector<std::size_t>& n_values,
           std::size_t replicas, std::uint64_t seed, int workers) {
          return to_py(report_to_json(
              clt_experiment(tc, n_values, replicas, seed, workers)));
        },
        py::arg("tower"), py::arg("n_values"), py::arg("replicas"),
        py::arg("seed"), py::arg("workers") = 0);
  m.def("lil_statistic",
        [](const TowerChain& tc, std::size_t n_max, std::size_t replicas,
           std::uint64_t seed, int workers) {
          return to_py(
              report_to_json(lil_statistic(tc, n_max, replicas, seed, workers)));
        },
        py::arg("tower"), py::arg("n_max"), py::arg("replicas"),
        py::arg("seed"), py::arg("workers") = 0);
  m.def("berry_esseen_experiment",
        [](const TowerChain& tc, const YoungFn& psi,
           const std::vector<std::size_t>& n_values, std::size_t replicas,
           std::uint64_t seed, int workers) {
          return to_py(report_to_json(berry_esseen_experiment(
              tc, psi, n_values, replicas, seed, workers)));
        },
        py::arg("tower"), py::arg("psi"), py::arg("n_values"),
        py::arg("replicas"), py::arg("seed"), py::arg("workers") = 0);
  m.def("tail_bound_experiment",
        [](const TowerChain& tc, double alpha, double beta, std::size_t n,
           const std::vector<double>& t_grid, std::size_t replicas,
           std::uint64_t seed, double K, int workers) {
          return to_py(report_to_json(tail_bound_experiment(
              tc, alpha, beta, n, t_grid, replicas, seed, K, workers)));
        },
        py::arg("tower"), py::arg("alpha"), py::arg("beta"), py::arg("n"),
        py::arg("t_grid"), py::arg("replicas"), py::arg("seed"),
        py::arg("K") = 0.0, py::arg("workers") = 0);

  m.def("run_golden_examples", []() {
    json out = json::array();
    for (const auto& r : run_golden_examples()) out.push_back(report_to_json(r));
    return to_py(out);
  });
}
