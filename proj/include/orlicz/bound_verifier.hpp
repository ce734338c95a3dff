#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "orlicz/orlicz_norm.hpp"
#include "orlicz/tower_chain.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// Evaluation of one inequality instance. lhs/rhs are extended reals; the
// ratio is only defined when both are finite and rhs > 0.
struct BoundReport {
  std::string theorem_id;
  ExtReal lhs;
  ExtReal rhs;
  bool ratio_defined = false;
  double ratio = 0.0;
  ExtReal tau_norm;  // ||tau+1||_{nu,psi}
  ExtReal f_norm;    // ||f||_{pi,.} under the relevant derived function
  int m = 1;
  double delta = 1.0;
  double pi_C = 0.0;
  std::string method;        // "exact" or "monte_carlo"
  std::size_t mc_n = 0;      // sample size when monte_carlo
  double mc_stderr = 0.0;    // stderr of E phi(|S|/C) at the reported lhs
};

struct McOptions {
  std::size_t n_blocks = 20000;
  std::uint64_t seed = 1;
  int workers = 0;
};

// ||S(f)||_{nu,phi} <= 2 m ||tau+1||_{nu,psi} ||f||_{pi,rho_{phi,psi}}.
BoundReport verify_thm_nu(const TowerChain& tc, const YoungFn& phi,
                          const YoungFn& psi, bool monte_carlo = false,
                          const McOptions& mc = {});

// ||S(f)||_{pi,phi} <= m a (1 + delta pi(C) a) ||f||_{pi,zeta_{phi,psi}},
// a = ||tau+1||_{nu,psi}. improved_factor replaces (1 + delta pi(C) a) by
// g(1 + delta pi(C) a) with g(r) = sup_x x / phi^{-1}(phi(x)/r).
BoundReport verify_thm_pi(const TowerChain& tc, const YoungFn& phi,
                          const YoungFn& psi, bool improved_factor = false,
                          bool monte_carlo = false, const McOptions& mc = {});

// ||S(f)||_{nu,phi_tilde} <= 4 m ||tau+1||_{nu,psi} ||f||_{pi,rho} with
// phi_tilde = (psi* o rho*)*.
BoundReport verify_cor_nu(const TowerChain& tc, const YoungFn& psi,
                          const YoungFn& rho, bool monte_carlo = false,
                          const McOptions& mc = {});

// ||S(f)||_{pi,phi} <= K a (1 + delta pi(C) a) ||f||_{pi,zeta} for phi
// dominated by kappa(zeta, psi); the constant K is not explicit and has to be
// supplied (typically from fit_cor_pi_constant).
BoundReport verify_cor_pi(const TowerChain& tc, const YoungFn& psi,
                          const YoungFn& zeta, const YoungFn& phi, double K);

// Smallest K making the corollary inequality hold on every chain of the
// suite (degenerate instances with zero or non-finite sides are skipped).
double fit_cor_pi_constant(const std::vector<TowerChainSpec>& suite,
                           const YoungFn& psi, const YoungFn& zeta,
                           const YoungFn& phi);

// g(r) = sup_{x>0} x / phi^{-1}(phi(x)/r), the growth-dependent replacement
// for the linear factor r.
double phi_scaling_gain(const YoungFn& phi, double r);

struct DivergenceCertificate {
  std::size_t n_terms = 0;
  double partial_sum = 0.0;
  bool exceeded = false;
};

// Sums exact series terms term(n, theta), n = 1, 2, ... until the partial sum
// passes M or the budget runs out.
DivergenceCertificate divergence_certificate(
    const std::function<double(std::size_t, double)>& term, double theta,
    double M, std::size_t term_budget = 10000);

// Deterministic pseudo-random tower spec for suite evaluation: 2-5 atoms,
// heights in [1, 8] with at least one height-1 atom, f values in [-2, 2].
TowerChainSpec random_tower_spec(std::uint64_t seed);

}  // namespace orlicz
