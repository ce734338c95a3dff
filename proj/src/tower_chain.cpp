#include "orlicz/tower_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace orlicz {

namespace {
constexpr std::int64_t kEnumCap = 200000;  // max states for exact enumeration
constexpr double kSat = 1e300;

double sat(ExtReal v) { return v.finite() ? std::min(v.value, kSat) : kSat; }
}  // namespace

void TowerChainSpec::validate(bool require_h1) const {
  if (atoms.empty()) throw std::invalid_argument("tower spec: no atoms");
  double total = 0.0;
  bool has_h1 = false;
  for (const auto& a : atoms) {
    if (!(a.alpha > 0.0)) throw std::invalid_argument("tower spec: alpha <= 0");
    if (a.h < 1) throw std::invalid_argument("tower spec: h < 1");
    if (!std::isfinite(a.f_tilde))
      throw std::invalid_argument("tower spec: f_tilde not finite");
    total += a.alpha;
    if (a.h == 1) has_h1 = true;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("tower spec: alpha mass sums to " +
                                std::to_string(total));
  if (require_h1 && !has_h1)
    throw std::invalid_argument(
        "tower spec: no atom with h = 1; Harris ergodicity (the aperiodicity "
        "property of the construction) requires alpha({h = 1}) > 0");
}

TowerChain build_tower(const TowerChainSpec& spec, bool require_h1) {
  spec.validate(require_h1);
  const auto& atoms = spec.atoms;
  const int n = static_cast<int>(atoms.size());

  double inv_R = 0.0;
  for (const auto& a : atoms) inv_R += a.alpha / static_cast<double>(a.h);
  double R = 1.0 / inv_R;

  TowerExactLaws laws;
  laws.R = R;
  laws.pi_C = inv_R;

  std::vector<double> nu(n), nu_cum(n);
  for (int i = 0; i < n; ++i) nu[i] = R * atoms[i].alpha / static_cast<double>(atoms[i].h);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += nu[i];
    nu_cum[i] = acc;
  }
  nu_cum[n - 1] = 1.0;

  for (int i = 0; i < n; ++i) laws.nu_labels.atoms.push_back({(double)i, nu[i]});

  std::map<double, double> by_h, by_S, by_f;
  for (int i = 0; i < n; ++i) {
    by_h[static_cast<double>(atoms[i].h)] += nu[i];
    by_S[atoms[i].f_tilde * static_cast<double>(atoms[i].h)] += nu[i];
    by_f[atoms[i].f_tilde] += atoms[i].alpha;
  }
  for (auto [v, p] : by_h) laws.tau_plus_1_law.atoms.push_back({v, p});
  for (auto [v, p] : by_S) laws.S_law_under_nu.atoms.push_back({v, p});
  for (auto [v, p] : by_f) laws.f_law_under_pi.atoms.push_back({v, p});

  std::int64_t total_states = 0;
  for (const auto& a : atoms) {
    total_states += a.h;
    if (total_states > kEnumCap) break;
  }
  laws.enumerable = total_states <= kEnumCap;

  MinorizedChain chain;
  chain.m = 1;
  chain.delta = 1.0;  // property (i): the top slice is an atom
  chain.pi_C = inv_R;
  chain.in_small_set = [atoms](const ChainState& s) {
    return s.level == atoms[s.label].h;
  };
  chain.nu_sampler = [nu_cum](RngStream& rng) {
    return ChainState{static_cast<int>(rng.next_categorical(nu_cum)), 1};
  };
  chain.kernel_sampler = [](const ChainState& s, RngStream&) {
    return ChainState{s.label, s.level + 1};  // deterministic climb
  };
  chain.residual_sampler = [](const ChainState&, RngStream&) -> ChainState {
    throw std::logic_error("delta = 1: the residual kernel has zero weight");
  };

  if (laws.enumerable) {
    std::vector<std::pair<ChainState, double>> pi;
    std::map<double, double> by_Spi;
    for (int i = 0; i < n; ++i) {
      double mass = atoms[i].alpha / static_cast<double>(atoms[i].h);
      for (std::int64_t k = 1; k <= atoms[i].h; ++k) {
        pi.push_back({ChainState{i, k}, mass});
        by_Spi[static_cast<double>(atoms[i].h - k + 1) * atoms[i].f_tilde] += mass;
      }
    }
    chain.pi_exact = std::move(pi);
    for (auto [v, p] : by_Spi) laws.S_law_under_pi.atoms.push_back({v, p});
  }

  return TowerChain{spec, std::move(chain), std::move(laws)};
}

double stationarity_gap(const TowerChain& tc) {
  if (!tc.laws.enumerable || !tc.chain.pi_exact)
    throw std::invalid_argument("stationarity_gap needs an enumerable chain");
  const auto& atoms = tc.spec.atoms;
  std::map<std::pair<int, std::int64_t>, double> push;
  double pi_top = 0.0;  // mass regenerating this step (all of C since delta=1)
  for (const auto& [s, p] : *tc.chain.pi_exact) {
    if (s.level == atoms[s.label].h)
      pi_top += p;
    else
      push[{s.label, s.level + 1}] += p;
  }
  // regenerated mass lands on level 1 according to nu
  for (size_t i = 0; i < atoms.size(); ++i) {
    double nu_i = tc.laws.R * atoms[i].alpha / static_cast<double>(atoms[i].h);
    push[{static_cast<int>(i), 1}] += pi_top * nu_i;
  }
  double gap = 0.0;
  for (const auto& [s, p] : *tc.chain.pi_exact) {
    auto it = push.find({s.label, s.level});
    double q = it == push.end() ? 0.0 : it->second;
    gap = std::max(gap, std::abs(q - p));
    if (it != push.end()) push.erase(it);
  }
  for (const auto& [k, q] : push) gap = std::max(gap, std::abs(q));
  return gap;
}

LowerBoundCheck stationary_F_lower_bound(const TowerChainSpec& spec,
                                         const std::function<double(double)>& F) {
  spec.validate(false);
  // probe monotonicity on a grid spanning the relevant arguments
  double prev = F(0.0);
  for (double t = 1e-3; t <= 1e6; t *= 3.0) {
    double cur = F(t);
    if (cur < prev - 1e-12 * std::max(1.0, std::abs(prev)))
      throw std::invalid_argument("stationary_F_lower_bound: F is decreasing");
    prev = cur;
  }
  LowerBoundCheck out;
  std::int64_t work = 0;
  for (const auto& a : spec.atoms) {
    double af = std::abs(a.f_tilde);
    out.bound += 0.5 * F(static_cast<double>(a.h) * af / 2.0) * a.alpha;
    work += a.h;
    if (work > 10 * kEnumCap)
      throw std::invalid_argument("stationary_F_lower_bound: tower too tall to enumerate");
    double mass = a.alpha / static_cast<double>(a.h);
    for (std::int64_t j = 1; j <= a.h; ++j)
      out.exact += F(static_cast<double>(j) * af) * mass;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weak-optimality generators

namespace {

// Smallest convenient t >= 2 with objective(t) >= need; tries the sup argmax
// first, then a geometric sweep.
bool find_t(const std::function<double(double)>& objective, double argmax_hint,
            double need, double* t_out) {
  auto ok = [&](double t) {
    double v = objective(t);
    return std::isfinite(v) && v >= need;
  };
  if (argmax_hint >= 2.0 && argmax_hint < 9e18 && ok(argmax_hint)) {
    *t_out = argmax_hint;
    return true;
  }
  for (double t = 2.0; t < 9e18; t *= 1.25) {
    if (ok(t)) {
      *t_out = t;
      return true;
    }
  }
  return false;
}

struct Sequences {
  std::vector<double> x, t, q;  // q = unnormalized p
};

WeakOptResult assemble(const Sequences& seq, const YoungFn& phi, bool nu_side) {
  WeakOptResult res;
  res.refuted = !seq.x.empty();
  if (!res.refuted) {
    res.note = "candidate not refuted at budget";
    return res;
  }
  res.x = seq.x;
  res.t = seq.t;
  double qsum = 0.0;
  for (double q : seq.q) qsum += q;
  res.C = 0.5 / qsum;  // violation atoms carry half the base mass
  for (double q : seq.q) res.p.push_back(res.C * q);

  TowerChainSpec spec;
  spec.atoms.push_back({"rest", 0.5, 0.0, 1});
  for (size_t i = 0; i < res.x.size(); ++i) {
    std::ostringstream lbl;
    lbl << "a" << (i + 1);
    // heights can leave int64 range for deep violation atoms; the series
    // generator keeps the exact double value, the spec records a saturated h
    double h = std::min(res.t[i], 4e18);
    spec.atoms.push_back({lbl.str(), res.p[i], res.x[i],
                          static_cast<std::int64_t>(h)});
  }
  res.spec = spec;

  double inv_R = 0.0;
  for (const auto& a : spec.atoms) inv_R += a.alpha / static_cast<double>(a.h);
  res.R = 1.0 / inv_R;

  std::vector<double> xs = res.x, ts = res.t, ps = res.p;
  double R = res.R;
  if (nu_side) {
    res.series_term = [xs, ts, ps, R, phi](std::size_t n1, double theta) {
      if (n1 == 0 || n1 > xs.size()) return 0.0;
      std::size_t i = n1 - 1;
      if (theta == 0.0) return 0.0;
      double arg = theta * xs[i] * ts[i];
      double val = std::isfinite(arg) ? std::min(phi(arg), kSat) : kSat;
      return R * val / ts[i] * ps[i];
    };
  } else {
    res.series_term = [xs, ts, ps, phi](std::size_t n1, double theta) {
      if (n1 == 0 || n1 > xs.size()) return 0.0;
      std::size_t i = n1 - 1;
      if (theta == 0.0) return 0.0;
      double arg = theta * xs[i] * ts[i] / 2.0;
      double val = std::isfinite(arg) ? std::min(phi(arg), kSat) : kSat;
      return 0.5 * val * ps[i];
    };
  }
  return res;
}

}  // namespace

WeakOptResult weak_opt_nu_spec(const YoungFn& phi, const YoungFn& psi,
                               const GenYoungFn& rho_candidate, int n_max) {
  Sequences seq;
  int k = 1;
  for (int n = 1; n <= n_max; ++n) {
    bool found = false;
    for (; k <= 800; ++k) {
      double x = std::ldexp(1.0, k);
      if (!std::isfinite(x) || x > 1e250) break;
      ExtReal cand = rho_candidate(x);
      double arg = x * std::ldexp(1.0, -n);
      SupPoint sp = rho_sup_at(phi, psi, arg);
      bool violated = cand.finite() &&
                      (sp.value.is_inf ||
                       sp.value.value > cand.value * (1.0 + 1e-9) + 1e-12);
      if (!violated) continue;
      double need = cand.finite() ? cand.value : kSat;
      auto objective = [&](double t) { return (phi(arg * t) - psi(t)) / t; };
      double t;
      if (!find_t(objective, sp.argmax, need, &t)) continue;
      double tau = std::floor(t);
      if (tau < 2.0) tau = 2.0;
      double denom = psi(tau) / tau + need;
      double q = std::ldexp(1.0, -n) / denom;
      if (!(q > 0.0) || !std::isfinite(q)) break;  // underflow: stop the sweep
      seq.x.push_back(x);
      seq.t.push_back(tau);
      seq.q.push_back(q);
      ++k;
      found = true;
      break;
    }
    if (!found) break;
  }
  return assemble(seq, phi, true);
}

WeakOptResult weak_opt_pi_spec(const YoungFn& phi, const YoungFn& psi,
                               const GenYoungFn& zeta_candidate, int n_max) {
  Sequences seq;
  int k = 1;
  for (int n = 1; n <= n_max; ++n) {
    bool found = false;
    for (; k <= 800; ++k) {
      double x = std::ldexp(1.0, k);
      if (!std::isfinite(x) || x > 1e250) break;
      ExtReal cand = zeta_candidate(x);
      double arg = x * std::ldexp(1.0, -n);
      SupPoint sp = zeta_sup_at(phi, psi, arg);
      bool violated = cand.finite() &&
                      (sp.value.is_inf ||
                       sp.value.value > cand.value * (1.0 + 1e-9) + 1e-12);
      if (!violated) continue;
      double need = cand.finite() ? cand.value : kSat;
      auto objective = [&](double t) { return phi(arg * t) - psi(t) / t; };
      double hint = sp.argmax;
      double t;
      if (!find_t(objective, hint, need, &t)) continue;
      // the construction wants integer heights; re-verify after rounding
      double ti = std::max(2.0, std::floor(t));
      bool ok = false;
      for (int bump = 0; bump < 6; ++bump) {
        double v = objective(ti);
        if (std::isfinite(v) && v >= need) {
          ok = true;
          break;
        }
        ti += 1.0;
      }
      if (!ok) continue;
      double denom = need + psi(ti) / ti;
      double q = std::ldexp(1.0, -n) / denom;
      if (!(q > 0.0) || !std::isfinite(q)) break;
      seq.x.push_back(x);
      seq.t.push_back(ti);
      seq.q.push_back(q);
      ++k;
      found = true;
      break;
    }
    if (!found) break;
  }
  return assemble(seq, phi, false);
}

}  // namespace orlicz
