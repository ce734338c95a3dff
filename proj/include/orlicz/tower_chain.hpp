#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "orlicz/orlicz_norm.hpp"
#include "orlicz/split_chain.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// One base atom of the tower construction: label, base mass alpha, function
// value f_tilde, and tower height h.
struct TowerAtom {
  std::string label;
  double alpha = 0.0;
  double f_tilde = 0.0;
  std::int64_t h = 1;
};

struct TowerChainSpec {
  std::vector<TowerAtom> atoms;
  // Throws naming the violated invariant. require_h1 = false skips the
  // aperiodicity check (an h = 1 atom); useful for periodic toy chains whose
  // regeneration laws are still exact.
  void validate(bool require_h1 = true) const;
};

// Exact laws of the built chain. nu_labels/tau/S laws use the label index (or
// the relevant value) as the atom value. The per-state stationary law and the
// stationary S-law are enumerated only when the total number of tower states
// is small enough; enumerable says whether they are present.
struct TowerExactLaws {
  double R = 0.0;
  double pi_C = 0.0;
  AtomicDist nu_labels;       // value = atom index
  AtomicDist tau_plus_1_law;  // aggregated by h
  AtomicDist S_law_under_nu;  // atoms at f_tilde * h, aggregated by value
  AtomicDist f_law_under_pi;  // the alpha-law of f_tilde, aggregated
  bool enumerable = false;
  AtomicDist S_law_under_pi;  // present when enumerable
};

struct TowerChain {
  TowerChainSpec spec;
  MinorizedChain chain;
  TowerExactLaws laws;
  // f((i,k)) = f_tilde_i
  double f(const ChainState& s) const { return spec.atoms[s.label].f_tilde; }
};

TowerChain build_tower(const TowerChainSpec& spec, bool require_h1 = true);

// Largest absolute discrepancy of the one-step pushforward of pi against pi,
// computed exactly from the construction. Requires an enumerable chain.
double stationarity_gap(const TowerChain& tc);

// Property (vii): 1/2 sum F(h|f~|/2) alpha, against the exact E_pi F(|S|).
struct LowerBoundCheck {
  double bound = 0.0;
  double exact = 0.0;
};
LowerBoundCheck stationary_F_lower_bound(const TowerChainSpec& spec,
                                         const std::function<double(double)>& F);

// Output of the weak-optimality generators: a truncated counterexample spec
// (violation atoms for n = 1..x.size() plus a residual h=1 atom carrying the
// leftover mass) and the exact divergence-series term generator.
struct WeakOptResult {
  bool refuted = false;
  std::string note;
  TowerChainSpec spec;
  std::vector<double> x;  // x_n, n = 1..N
  std::vector<double> t;  // tau_n (nu side) or integer t_n (pi side)
  std::vector<double> p;  // p_n matching x/t
  double C = 0.0;         // normalizer over n >= 1
  double R = 0.0;
  // n-th exact series term (1-based) of E phi(theta |S|) lower bound
  std::function<double(std::size_t, double)> series_term;
};

WeakOptResult weak_opt_nu_spec(const YoungFn& phi, const YoungFn& psi,
                               const GenYoungFn& rho_candidate, int n_max);
WeakOptResult weak_opt_pi_spec(const YoungFn& phi, const YoungFn& psi,
                               const GenYoungFn& zeta_candidate, int n_max);

}  // namespace orlicz
