#pragma once

#include <cstdint>
#include <vector>

#include "orlicz/split_chain.hpp"
#include "orlicz/tower_chain.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// All experiments act on the tower's own function f = f_tilde, centered to
// E_pi f = 0 using the exact base law.

struct CltReport {
  std::vector<std::size_t> n_values;
  std::vector<double> ks_distance;  // per n, against N(0, sigma_f_sq)
  double sigma_f_sq = 0.0;          // delta pi(C) m^{-1} (E s1^2 + 2 E s1 s2), from blocks
  double sigma_estimate_sq = 0.0;   // sample variance of n^{-1/2} sums at largest n
  double cross_term = 0.0;          // E s1 s2 block estimate
  double cross_term_se = 0.0;
  bool degenerate = false;
};

CltReport clt_experiment(const TowerChain& tc,
                         const std::vector<std::size_t>& n_values,
                         std::size_t replicas, std::uint64_t seed,
                         int workers = 0);

struct LilReport {
  std::vector<double> replica_max;  // max_n |sum| / sqrt(n log log n)
  double sigma_f = 0.0;
  double q95 = 0.0;  // 95th percentile of replica_max
  bool degenerate = false;
};

LilReport lil_statistic(const TowerChain& tc, std::size_t n_max,
                        std::size_t replicas, std::uint64_t seed,
                        int workers = 0);

struct BerryEsseenReport {
  std::vector<std::size_t> n_values;
  std::vector<double> delta_n;  // sup-distance to Phi per n
  double slope = 0.0;           // least-squares slope of log delta_n vs log n
  double sigma_f = 0.0;
  double f_norm = 0.0;  // ||f||_{pi,rho} with rho = Psi*(x^3)
  bool degenerate = false;
};

// Requires x^3 to be dominated by psi and a finite ||f||_{pi,rho} with
// rho(x) = Psi*(x^3), Psi(x) = psi(sqrt(x))/sqrt(x); throws otherwise.
BerryEsseenReport berry_esseen_experiment(const TowerChain& tc,
                                          const YoungFn& psi,
                                          const std::vector<std::size_t>& n_values,
                                          std::size_t replicas,
                                          std::uint64_t seed, int workers = 0);

struct TailReport {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  double tau_norm = 0.0;  // ||tau+1||_{nu,psi_alpha}
  double f_norm = 0.0;    // ||f||_{pi,psi_beta}
  double es2 = 0.0;       // E_nu S(f)^2, exact
  double K = 0.0;         // fitted (or supplied) constant
  std::vector<double> t_grid;
  std::vector<double> tail_nu, tail_pi;      // empirical tails of |sum|
  std::vector<double> bound_nu, bound_pi;    // theorem right sides, capped at 1
  // empirical tails of the proof's pieces, nu start
  std::vector<double> tail_head, tail_blocks, tail_tail_segment;
  double truncation_level = 0.0;  // a = K ||f|| ||tau+1|| log^{1/gamma} n
  bool decomposition_ok = false;  // pathwise reconstruction verified
};

// K = 0 fits the smallest constant making both bounds dominate the empirical
// tails on the grid.
TailReport tail_bound_experiment(const TowerChain& tc, double alpha,
                                 double beta, std::size_t n,
                                 const std::vector<double>& t_grid,
                                 std::size_t replicas, std::uint64_t seed,
                                 double K = 0.0, int workers = 0);

}  // namespace orlicz
