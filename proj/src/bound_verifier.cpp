#include "orlicz/bound_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "orlicz/rng.hpp"
#include "orlicz/split_chain.hpp"

namespace orlicz {

namespace {

ExtReal times(ExtReal a, ExtReal b) {
  if (a.is_inf || b.is_inf) {
    if ((a.finite() && a.value == 0.0) || (b.finite() && b.value == 0.0))
      return ExtReal(0.0);
    return ExtReal::infinity();
  }
  return ExtReal(a.value * b.value);
}

void finish_ratio(BoundReport& r) {
  if (r.lhs.finite() && r.rhs.finite() && r.rhs.value > 0.0) {
    r.ratio_defined = true;
    r.ratio = r.lhs.value / r.rhs.value;
  }
}

// Mean and stderr of phi(|s| / C) over the draws; used to cross-check an
// exact norm against Monte Carlo samples.
void phi_mean_at(const std::vector<double>& draws, const GenYoungFn& phi,
                 double C, double* mean, double* se) {
  double sum = 0.0, sumsq = 0.0;
  std::size_t n = draws.size();
  for (double s : draws) {
    double v = phi(std::abs(s) / C).as_double();
    sum += v;
    sumsq += v * v;
  }
  *mean = sum / n;
  double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1.0));
  *se = std::sqrt(var / n);
}

// One S(f) draw started from the exact stationary law.
std::vector<double> sample_S_under_pi(const TowerChain& tc, std::size_t n,
                                      std::uint64_t seed) {
  if (!tc.chain.pi_exact)
    throw std::invalid_argument("stationary sampling needs the exact law");
  const auto& pi = *tc.chain.pi_exact;
  std::vector<double> out(n);
  for (std::size_t b = 0; b < n; ++b) {
    RngStream rng(seed, b);
    double u = rng.next_double(), acc = 0.0;
    ChainState x = pi.back().first;
    for (const auto& [s, p] : pi) {
      acc += p;
      if (u < acc) {
        x = s;
        break;
      }
    }
    // deterministic climb to the top of the current column, then regenerate
    double total = 0.0;
    const auto& atom = tc.spec.atoms[x.label];
    for (std::int64_t k = x.level; k <= atom.h; ++k) total += atom.f_tilde;
    out[b] = total;
  }
  return out;
}

void fill_mc(BoundReport& r, const std::vector<double>& draws,
             const GenYoungFn& phi, double target) {
  NormResult nr = orlicz_norm(draws, phi, target);
  r.lhs = nr.value;
  r.method = "monte_carlo";
  r.mc_n = draws.size();
  if (nr.value.finite() && nr.value.value > 0.0) {
    double mean, se;
    phi_mean_at(draws, phi, nr.value.value, &mean, &se);
    r.mc_stderr = se;
  }
}

void base_fields(BoundReport& r, const TowerChain& tc) {
  r.m = tc.chain.m;
  r.delta = tc.chain.delta;
  r.pi_C = tc.laws.pi_C;
  r.method = "exact";
}

}  // namespace

BoundReport verify_thm_nu(const TowerChain& tc, const YoungFn& phi,
                          const YoungFn& psi, bool monte_carlo,
                          const McOptions& mc) {
  GenYoungFn rho = rho_of(phi, psi);
  BoundReport r;
  r.theorem_id = "first_block_norm";
  base_fields(r, tc);
  r.tau_norm = orlicz_norm(tc.laws.tau_plus_1_law, psi).value;
  r.f_norm = function_norm(tc.laws.f_law_under_pi, rho).value;
  if (monte_carlo) {
    auto f = [&tc](const ChainState& s) { return tc.f(s); };
    fill_mc(r, sample_S_under_nu(tc.chain, f, mc.n_blocks, mc.seed, mc.workers),
            GenYoungFn::from_young(phi), 1.0);
  } else {
    r.lhs = orlicz_norm(tc.laws.S_law_under_nu, phi).value;
  }
  r.rhs = times(ExtReal(2.0 * tc.chain.m), times(r.tau_norm, r.f_norm));
  finish_ratio(r);
  return r;
}

BoundReport verify_thm_pi(const TowerChain& tc, const YoungFn& phi,
                          const YoungFn& psi, bool improved_factor,
                          bool monte_carlo, const McOptions& mc) {
  GenYoungFn zeta = zeta_of(phi, psi);
  BoundReport r;
  r.theorem_id = improved_factor ? "stationary_norm_improved" : "stationary_norm";
  base_fields(r, tc);
  r.tau_norm = orlicz_norm(tc.laws.tau_plus_1_law, psi).value;
  r.f_norm = function_norm(tc.laws.f_law_under_pi, zeta).value;
  if (monte_carlo) {
    fill_mc(r, sample_S_under_pi(tc, mc.n_blocks, mc.seed),
            GenYoungFn::from_young(phi), 1.0);
  } else {
    if (!tc.laws.enumerable)
      throw std::invalid_argument("exact stationary norm needs an enumerable chain");
    r.lhs = orlicz_norm(tc.laws.S_law_under_pi, phi).value;
  }
  if (r.tau_norm.finite()) {
    double a = r.tau_norm.value;
    double lin = 1.0 + tc.chain.delta * tc.laws.pi_C * a;
    double factor = improved_factor ? phi_scaling_gain(phi, lin) : lin;
    r.rhs = times(ExtReal(tc.chain.m * a * factor), r.f_norm);
  } else {
    r.rhs = ExtReal::infinity();
  }
  finish_ratio(r);
  return r;
}

BoundReport verify_cor_nu(const TowerChain& tc, const YoungFn& psi,
                          const YoungFn& rho, bool monte_carlo,
                          const McOptions& mc) {
  GenYoungFn phit = tilde_phi(psi, rho);
  BoundReport r;
  r.theorem_id = "first_block_norm_conjugate";
  base_fields(r, tc);
  r.tau_norm = orlicz_norm(tc.laws.tau_plus_1_law, psi).value;
  r.f_norm = function_norm(tc.laws.f_law_under_pi, GenYoungFn::from_young(rho)).value;
  if (monte_carlo) {
    auto f = [&tc](const ChainState& s) { return tc.f(s); };
    fill_mc(r, sample_S_under_nu(tc.chain, f, mc.n_blocks, mc.seed, mc.workers),
            phit, 1.0);
  } else {
    r.lhs = orlicz_norm(tc.laws.S_law_under_nu, phit).value;
  }
  r.rhs = times(ExtReal(4.0 * tc.chain.m), times(r.tau_norm, r.f_norm));
  finish_ratio(r);
  return r;
}

BoundReport verify_cor_pi(const TowerChain& tc, const YoungFn& psi,
                          const YoungFn& zeta, const YoungFn& phi, double K) {
  KappaResult kr = kappa_of(zeta, psi);
  auto w = dominates(GenYoungFn::from_young(phi), kr.kappa);
  if (!w.holds)
    throw std::invalid_argument(
        "stationary-norm corollary requires phi to be dominated by "
        "kappa(zeta, psi); without it a chain with finite inputs and an "
        "infinite stationary norm exists");
  BoundReport r;
  r.theorem_id = "stationary_norm_derived";
  base_fields(r, tc);
  r.tau_norm = orlicz_norm(tc.laws.tau_plus_1_law, psi).value;
  r.f_norm = function_norm(tc.laws.f_law_under_pi, GenYoungFn::from_young(zeta)).value;
  if (!tc.laws.enumerable)
    throw std::invalid_argument("exact stationary norm needs an enumerable chain");
  r.lhs = orlicz_norm(tc.laws.S_law_under_pi, phi).value;
  if (r.tau_norm.finite()) {
    double a = r.tau_norm.value;
    r.rhs = times(ExtReal(K * a * (1.0 + tc.chain.delta * tc.laws.pi_C * a)),
                  r.f_norm);
  } else {
    r.rhs = ExtReal::infinity();
  }
  finish_ratio(r);
  return r;
}

double fit_cor_pi_constant(const std::vector<TowerChainSpec>& suite,
                           const YoungFn& psi, const YoungFn& zeta,
                           const YoungFn& phi) {
  double K = 0.0;
  for (const auto& spec : suite) {
    auto tc = build_tower(spec);
    auto rep = verify_cor_pi(tc, psi, zeta, phi, 1.0);
    if (!rep.lhs.finite() || !rep.rhs.finite() || rep.rhs.value <= 0.0 ||
        rep.lhs.value <= 0.0)
      continue;
    K = std::max(K, rep.lhs.value / rep.rhs.value);
  }
  return K;
}

double phi_scaling_gain(const YoungFn& phi, double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("scaling gain needs r >= 1");
  double best = 0.0;
  for (double lx = std::log(1e-6); lx <= std::log(1e8) + 1e-9; lx += 0.01) {
    double x = std::exp(lx);
    double v = phi(x);
    if (!std::isfinite(v)) break;
    double denom = phi.inverse(v / r);
    if (denom > 0.0 && std::isfinite(denom)) best = std::max(best, x / denom);
  }
  return best;
}

DivergenceCertificate divergence_certificate(
    const std::function<double(std::size_t, double)>& term, double theta,
    double M, std::size_t term_budget) {
  DivergenceCertificate cert;
  for (std::size_t n = 1; n <= term_budget; ++n) {
    double t = term(n, theta);
    if (!(t >= 0.0))
      throw std::invalid_argument("divergence series has a negative term");
    cert.partial_sum += t;
    cert.n_terms = n;
    if (std::isfinite(M) && cert.partial_sum > M) {
      cert.exceeded = true;
      return cert;
    }
  }
  return cert;
}

TowerChainSpec random_tower_spec(std::uint64_t seed) {
  RngStream rng(seed, 0);
  int n = 2 + int(rng.next_u64() % 4);
  TowerChainSpec spec;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    TowerAtom a;
    a.label = "r" + std::to_string(i);
    a.alpha = 0.1 + rng.next_double();
    a.f_tilde = -2.0 + 4.0 * rng.next_double();
    a.h = i == 0 ? 1 : 1 + std::int64_t(rng.next_u64() % 8);
    total += a.alpha;
    spec.atoms.push_back(a);
  }
  double acc = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    spec.atoms[i].alpha /= total;
    acc += spec.atoms[i].alpha;
  }
  spec.atoms[n - 1].alpha = 1.0 - acc;
  return spec;
}

}  // namespace orlicz
