#include "orlicz/limit_experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "orlicz/orlicz_norm.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/rng.hpp"

namespace orlicz {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double stationary_mean(const TowerChain& tc) {
  double c = 0.0;
  for (const auto& a : tc.spec.atoms) c += a.alpha * a.f_tilde;
  return c;
}

// Sum of the centered function over n steps from the given start law.
double run_sum(const TowerChain& tc, const Init& init, double center,
               std::size_t n, RngStream& rng) {
  ChainState x = draw_start(tc.chain, init, rng);
  double total = 0.0;
  bool mark = false;
  for (std::size_t k = 0; k < n; ++k) {
    total += tc.f(x) - center;
    x = chain_step(tc.chain, x, &mark, rng);
  }
  return total;
}

std::vector<double> replica_sums(const TowerChain& tc, const Init& init,
                                 double center, std::size_t n,
                                 std::size_t replicas, std::uint64_t seed,
                                 int workers) {
  std::vector<double> out(replicas);
  parallel_for(
      replicas,
      [&](std::size_t r) {
        RngStream rng(seed, r);
        out[r] = run_sum(tc, init, center, n, rng);
      },
      workers);
  return out;
}

double ks_to_normal(std::vector<double> z) {
  std::sort(z.begin(), z.end());
  double d = 0.0;
  std::size_t n = z.size();
  for (std::size_t i = 0; i < n; ++i) {
    double c = normal_cdf(z[i]);
    d = std::max(d, std::abs(double(i + 1) / n - c));
    d = std::max(d, std::abs(double(i) / n - c));
  }
  return d;
}

struct BlockVariance {
  double sigma_sq = 0.0;   // delta pi(C) (E s1^2 + 2 E s1 s2)
  double cross = 0.0;      // E s1 s2
  double cross_se = 0.0;
};

// Block moments from one long trajectory started at nu.
BlockVariance block_variance(const TowerChain& tc, double center,
                             std::size_t n_blocks, std::uint64_t seed) {
  auto f = [&tc, center](const ChainState& s) { return tc.f(s) - center; };
  // generous step budget: mean block length is 1/(delta pi(C))
  std::size_t steps =
      std::size_t(2.0 * double(n_blocks) / (tc.chain.delta * tc.laws.pi_C)) + 64;
  auto tr = simulate(tc.chain, Init::from_nu(), steps, f, seed);
  const auto& s = tr.block_sums;
  if (s.size() < n_blocks)
    throw std::runtime_error("block budget was not reached");
  BlockVariance bv;
  double sumsq = 0.0, cross = 0.0, cross_sq = 0.0;
  std::size_t m = n_blocks - 1;
  for (std::size_t i = 0; i < n_blocks; ++i) sumsq += s[i] * s[i];
  for (std::size_t i = 0; i < m; ++i) {
    double v = s[i] * s[i + 1];
    cross += v;
    cross_sq += v * v;
  }
  bv.cross = cross / m;
  bv.cross_se = std::sqrt(
      std::max(0.0, (cross_sq / m - bv.cross * bv.cross)) / double(m));
  bv.sigma_sq = tc.chain.delta * tc.laws.pi_C *
                (sumsq / n_blocks + 2.0 * bv.cross) / tc.chain.m;
  return bv;
}

// Exact asymptotic variance: blocks are independent for one-step
// minorization, so the cross term vanishes and sigma^2 = delta pi(C) E s1^2.
double exact_sigma_sq(const TowerChain& tc, double center) {
  double es2 = 0.0;
  for (const auto& a : tc.spec.atoms) {
    double nu = tc.laws.R * a.alpha / double(a.h);
    double s = (a.f_tilde - center) * double(a.h);
    es2 += nu * s * s;
  }
  return tc.chain.delta * tc.laws.pi_C * es2 / tc.chain.m;
}

AtomicDist centered_f_law(const TowerChain& tc, double center) {
  std::map<double, double> m;
  for (const auto& a : tc.spec.atoms) m[a.f_tilde - center] += a.alpha;
  AtomicDist d;
  for (auto [v, p] : m) d.atoms.push_back({v, p});
  return d;
}

}  // namespace

CltReport clt_experiment(const TowerChain& tc,
                         const std::vector<std::size_t>& n_values,
                         std::size_t replicas, std::uint64_t seed,
                         int workers) {
  double center = stationary_mean(tc);
  CltReport rep;
  rep.n_values = n_values;
  auto bv = block_variance(tc, center, 20000, seed + 1);
  rep.sigma_f_sq = bv.sigma_sq;
  rep.cross_term = bv.cross;
  rep.cross_term_se = bv.cross_se;
  if (!(rep.sigma_f_sq > 1e-12)) {
    rep.degenerate = true;
    rep.ks_distance.assign(n_values.size(), 0.0);
    return rep;
  }
  double sigma = std::sqrt(rep.sigma_f_sq);
  for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
    std::size_t n = n_values[ni];
    auto sums = replica_sums(tc, Init::from_pi(), center, n, replicas,
                             seed + 100 + ni, workers);
    std::vector<double> z(sums.size());
    double var = 0.0;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      double norm = sums[i] / std::sqrt(double(n));
      var += norm * norm;
      z[i] = norm / sigma;
    }
    rep.ks_distance.push_back(ks_to_normal(std::move(z)));
    if (ni + 1 == n_values.size()) rep.sigma_estimate_sq = var / sums.size();
  }
  return rep;
}

LilReport lil_statistic(const TowerChain& tc, std::size_t n_max,
                        std::size_t replicas, std::uint64_t seed, int workers) {
  if (double(n_max) < std::exp(2.0))
    throw std::invalid_argument("iterated-logarithm statistic needs n_max > e^2");
  double center = stationary_mean(tc);
  LilReport rep;
  auto bv = block_variance(tc, center, 20000, seed + 1);
  rep.sigma_f = std::sqrt(std::max(0.0, bv.sigma_sq));
  rep.replica_max.resize(replicas);
  parallel_for(
      replicas,
      [&](std::size_t r) {
        RngStream rng(seed + 100, r);
        ChainState x = draw_start(tc.chain, Init::from_pi(), rng);
        double partial = 0.0, best = 0.0;
        bool mark = false;
        for (std::size_t k = 0; k < n_max; ++k) {
          partial += tc.f(x) - center;
          double n = double(k + 1);
          if (n >= std::exp(2.0)) {
            double stat = std::abs(partial) / std::sqrt(n * std::log(std::log(n)));
            best = std::max(best, stat);
          }
          x = chain_step(tc.chain, x, &mark, rng);
        }
        rep.replica_max[r] = best;
      },
      workers);
  auto sorted = rep.replica_max;
  std::sort(sorted.begin(), sorted.end());
  rep.q95 = sorted[std::size_t(0.95 * (sorted.size() - 1))];
  rep.degenerate = !(rep.sigma_f > 1e-9);
  return rep;
}

BerryEsseenReport berry_esseen_experiment(const TowerChain& tc,
                                          const YoungFn& psi,
                                          const std::vector<std::size_t>& n_values,
                                          std::size_t replicas,
                                          std::uint64_t seed, int workers) {
  auto dom = dominates(YoungFn::power(3.0), psi);
  if (!dom.holds)
    throw std::invalid_argument(
        "rate experiment needs the regeneration norm to control x^3");
  // rho(x) = Psi*(x^3) with Psi(x) = psi(sqrt x)/sqrt x
  GenYoungFn Psi = GenYoungFn::from_eval(
      [psi](double x) -> ExtReal {
        if (x <= 0.0) return ExtReal(0.0);
        double s = std::sqrt(x);
        return ExtReal(psi(s) / s);
      },
      std::nullopt, "psi(sqrt x)/sqrt x");
  GenYoungFn PsiConj = conjugate(Psi);
  GenYoungFn rho = GenYoungFn::from_eval(
      [PsiConj](double x) -> ExtReal { return PsiConj(x * x * x); },
      std::nullopt, "Psi*(x^3)");
  double center = stationary_mean(tc);
  auto fn = function_norm(centered_f_law(tc, center), rho);
  if (!fn.value.finite())
    throw std::invalid_argument("rate experiment needs a finite function norm");

  BerryEsseenReport rep;
  rep.n_values = n_values;
  rep.f_norm = fn.value.value;
  double s2 = exact_sigma_sq(tc, center);
  if (!(s2 > 1e-12)) {
    rep.degenerate = true;
    return rep;
  }
  rep.sigma_f = std::sqrt(s2);
  for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
    std::size_t n = n_values[ni];
    auto sums = replica_sums(tc, Init::from_pi(), center, n, replicas,
                             seed + 100 + ni, workers);
    std::vector<double> z(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i)
      z[i] = sums[i] / (rep.sigma_f * std::sqrt(double(n)));
    rep.delta_n.push_back(ks_to_normal(std::move(z)));
  }
  // least-squares slope of log delta vs log n
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = n_values.size();
  for (std::size_t i = 0; i < k; ++i) {
    double x = std::log(double(n_values[i])), y = std::log(rep.delta_n[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return rep;
}

namespace {

struct TailPieces {
  double total = 0.0;  // signed sum over the first n steps
  double head = 0.0;   // I
  double blocks = 0.0; // II
  double tail = 0.0;   // III
  bool identity = false;
};

// Runs from nu until the first regeneration at index >= n-1 and evaluates the
// three-way splitting of the additive functional.
TailPieces decompose_path(const TowerChain& tc, double center, std::size_t n,
                          RngStream& rng) {
  TailPieces out;
  ChainState x = draw_start(tc.chain, Init::from_nu(), rng);
  double signed_head = 0.0, blocks_signed = 0.0, signed_tail = 0.0;
  double cur_block = 0.0;
  std::size_t idx = 0, tau0 = 0;
  bool have_tau0 = false;
  std::size_t cap = 1000 * n + 1000000;
  while (idx < cap) {
    double v = tc.f(x) - center;
    if (idx < n) out.total += v;
    if (!have_tau0) {
      out.head += std::abs(v);
      signed_head += v;
    } else {
      cur_block += v;
    }
    // the tail segment [n, tau(N)] may overlap the head block when tau(0)
    // already reaches past n
    if (idx >= n) {
      out.tail += std::abs(v);
      signed_tail += v;
    }
    bool mark = false;
    x = chain_step(tc.chain, x, &mark, rng);
    if (mark) {
      if (!have_tau0) {
        have_tau0 = true;
        tau0 = idx;
        (void)tau0;
      } else {
        blocks_signed += cur_block;
        cur_block = 0.0;
      }
      if (idx >= n - 1) break;
    }
    ++idx;
  }
  out.blocks = std::abs(blocks_signed);
  double recon = signed_head + blocks_signed - signed_tail;
  double scale = std::max({1.0, std::abs(out.total), std::abs(recon)});
  out.identity = std::abs(recon - out.total) <= 1e-9 * scale &&
                 std::abs(out.total) <= out.head + out.blocks + out.tail + 1e-9;
  return out;
}

double tail_fraction(const std::vector<double>& abs_vals, double t) {
  std::size_t c = 0;
  for (double v : abs_vals)
    if (v >= t) ++c;
  return double(c) / double(abs_vals.size());
}

}  // namespace

TailReport tail_bound_experiment(const TowerChain& tc, double alpha,
                                 double beta, std::size_t n,
                                 const std::vector<double>& t_grid,
                                 std::size_t replicas, std::uint64_t seed,
                                 double K, int workers) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("tail bound needs positive exponents");
  TailReport rep;
  rep.alpha = alpha;
  rep.beta = beta;
  rep.gamma = alpha * beta / (alpha + beta);
  rep.t_grid = t_grid;
  double center = stationary_mean(tc);

  auto tn = psi_alpha_norm(tc.laws.tau_plus_1_law, alpha);
  auto fnorm = psi_alpha_norm(centered_f_law(tc, center), beta);
  if (!tn.value.finite() || !fnorm.value.finite())
    throw std::invalid_argument("tail bound needs finite input norms");
  rep.tau_norm = tn.value.value;
  rep.f_norm = fnorm.value.value;

  // exact E_nu S(f)^2 from the regeneration laws
  for (std::size_t i = 0; i < tc.spec.atoms.size(); ++i) {
    const auto& a = tc.spec.atoms[i];
    double nu_i = tc.laws.R * a.alpha / double(a.h);
    double s = (a.f_tilde - center) * double(a.h);
    rep.es2 += nu_i * s * s;
  }

  auto sums_nu = replica_sums(tc, Init::from_nu(), center, n, replicas, seed, workers);
  auto sums_pi = replica_sums(tc, Init::from_pi(), center, n, replicas, seed + 1, workers);
  for (double& v : sums_nu) v = std::abs(v);
  for (double& v : sums_pi) v = std::abs(v);
  for (double t : t_grid) {
    rep.tail_nu.push_back(tail_fraction(sums_nu, t));
    rep.tail_pi.push_back(tail_fraction(sums_pi, t));
  }

  double fa = rep.f_norm * rep.tau_norm;
  double v2 = tc.chain.delta * tc.laws.pi_C * rep.es2;
  double logn = std::log(double(n));
  double loga = std::log(rep.tau_norm);
  auto bound_at = [&](double t, double k, bool stationary) {
    double b = k * std::exp(-t * t / (k * double(n) * v2)) +
               k * std::exp(-t / (k * rep.f_norm * std::pow(rep.tau_norm, 3.0))) +
               k * std::exp(-std::pow(t, rep.gamma) /
                            (k * std::pow(fa, rep.gamma) * logn));
    if (stationary && loga > 0.0)
      b += k * std::exp(-std::pow(t, rep.gamma) /
                        (k * std::pow(fa, rep.gamma) * loga));
    return b;
  };
  auto dominated = [&](double k) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      if (std::min(1.0, bound_at(t_grid[i], k, false)) < rep.tail_nu[i]) return false;
      if (std::min(1.0, bound_at(t_grid[i], k, true)) < rep.tail_pi[i]) return false;
    }
    return true;
  };
  if (K > 0.0) {
    rep.K = K;
  } else {
    double k = 1.0;
    for (int it = 0; it < 600 && !dominated(k); ++it) k *= 1.1;
    rep.K = k;
  }
  for (double t : t_grid) {
    rep.bound_nu.push_back(std::min(1.0, bound_at(t, rep.K, false)));
    rep.bound_pi.push_back(std::min(1.0, bound_at(t, rep.K, true)));
  }

  // proof decomposition on a subsample of paths
  rep.truncation_level = rep.K * fa * std::pow(logn, 1.0 / rep.gamma);
  std::size_t reps_dec = std::min<std::size_t>(replicas, 200);
  std::vector<double> heads(reps_dec), blocks(reps_dec), tails(reps_dec);
  bool all_ok = true;
  for (std::size_t r = 0; r < reps_dec; ++r) {
    RngStream rng(seed + 7, r);
    auto p = decompose_path(tc, center, n, rng);
    heads[r] = p.head;
    blocks[r] = p.blocks;
    tails[r] = p.tail;
    all_ok = all_ok && p.identity;
  }
  rep.decomposition_ok = all_ok;
  for (double t : t_grid) {
    rep.tail_head.push_back(tail_fraction(heads, t));
    rep.tail_blocks.push_back(tail_fraction(blocks, t));
    rep.tail_tail_segment.push_back(tail_fraction(tails, t));
  }
  return rep;
}

}  // namespace orlicz
