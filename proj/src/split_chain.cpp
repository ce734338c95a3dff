#include "orlicz/split_chain.hpp"

#include <cmath>
#include <stdexcept>

#include "orlicz/parallel.hpp"

namespace orlicz {

namespace {

ChainState draw_init(const MinorizedChain& chain, const Init& init, RngStream& rng) {
  switch (init.kind) {
    case Init::Kind::nu:
      return chain.nu_sampler(rng);
    case Init::Kind::pi: {
      if (!chain.pi_exact)
        throw std::invalid_argument("init=pi requires an exact stationary law");
      const auto& pi = *chain.pi_exact;
      double u = rng.next_double(), acc = 0.0;
      for (const auto& [s, p] : pi) {
        acc += p;
        if (u < acc) return s;
      }
      return pi.back().first;
    }
    case Init::Kind::point:
      return init.at;
  }
  throw std::logic_error("unreachable");
}

// One transition; also reports the mark drawn at the current state.
ChainState step(const MinorizedChain& chain, const ChainState& x, bool& mark,
                RngStream& rng) {
  if (chain.in_small_set(x)) {
    mark = rng.next_bernoulli(chain.delta);
    if (mark) return chain.nu_sampler(rng);
    return chain.residual_sampler(x, rng);
  }
  mark = false;
  return chain.kernel_sampler(x, rng);
}

void require_m1(const MinorizedChain& chain) {
  if (chain.m != 1)
    throw std::invalid_argument("simulation supports one-step minorization only");
}

constexpr std::size_t kBlockStepCap = 100000000;  // runaway-block guard

}  // namespace

ChainState chain_step(const MinorizedChain& chain, const ChainState& x,
                      bool* mark, RngStream& rng) {
  bool y = false;
  ChainState next = step(chain, x, y, rng);
  *mark = y;
  return next;
}

ChainState draw_start(const MinorizedChain& chain, const Init& init,
                      RngStream& rng) {
  return draw_init(chain, init, rng);
}

RegenTrace simulate(const MinorizedChain& chain, const Init& init,
                    std::size_t steps,
                    const std::function<double(const ChainState&)>& f,
                    std::uint64_t master_seed, std::uint64_t stream_id) {
  require_m1(chain);
  RegenTrace tr;
  tr.master_seed = master_seed;
  tr.stream_id = stream_id;
  if (steps == 0) return tr;

  RngStream rng(master_seed, stream_id);
  tr.states.reserve(steps);
  tr.marks.reserve(steps);
  ChainState x = draw_init(chain, init, rng);
  for (std::size_t k = 0; k < steps; ++k) {
    bool mark = false;
    ChainState next = step(chain, x, mark, rng);
    tr.states.push_back(x);
    tr.marks.push_back(mark ? 1 : 0);
    if (mark) tr.tau.push_back(k);
    x = next;
  }
  // complete blocks: s_0 over [0, tau(0)], then (tau(i-1), tau(i)]
  std::size_t start = 0;
  for (std::size_t ti = 0; ti < tr.tau.size(); ++ti) {
    std::size_t end = tr.tau[ti];
    double s = 0.0;
    for (std::size_t k = start; k <= end; ++k) s += f(tr.states[k]);
    tr.block_sums.push_back(s);
    tr.block_lengths.push_back(end - start + 1);
    start = end + 1;
  }
  return tr;
}

namespace {

// One regeneration block from nu: accumulates G over X_0..X_{tau(0)} where G
// sees the state and its mark.
double run_block(const MinorizedChain& chain,
                 const std::function<double(const ChainState&, bool)>& G,
                 RngStream& rng) {
  ChainState x = chain.nu_sampler(rng);
  double total = 0.0;
  for (std::size_t k = 0; k < kBlockStepCap; ++k) {
    bool mark = false;
    ChainState next = step(chain, x, mark, rng);
    total += G(x, mark);
    if (mark) return total;
    x = next;
  }
  throw std::runtime_error("regeneration block exceeded the step cap");
}

MomentCheck compare_mc(const std::vector<double>& draws, double exact) {
  MomentCheck r;
  r.n = draws.size();
  double sum = 0.0, sumsq = 0.0;
  for (double v : draws) {
    sum += v;
    sumsq += v * v;
  }
  r.estimate = sum / r.n;
  double var = (sumsq - sum * sum / r.n) / (r.n - 1);
  r.std_error = std::sqrt(std::max(var, 0.0) / r.n);
  r.exact = exact;
  r.z = r.std_error > 0.0 ? (r.estimate - exact) / r.std_error
                          : (r.estimate == exact ? 0.0 : INFINITY);
  return r;
}

std::vector<double> block_draws(const MinorizedChain& chain,
                                const std::function<double(const ChainState&, bool)>& G,
                                std::size_t n_blocks, std::uint64_t seed,
                                int workers) {
  require_m1(chain);
  std::vector<double> out(n_blocks);
  parallel_for(
      n_blocks,
      [&](std::size_t b) {
        RngStream rng(seed, b);
        out[b] = run_block(chain, G, rng);
      },
      workers);
  return out;
}

}  // namespace

MomentCheck pitman_check(const MinorizedChain& chain,
                         const std::function<double(const ChainState&, bool)>& F,
                         std::size_t n_blocks, std::uint64_t seed, int workers) {
  if (!chain.pi_exact || !chain.pi_C)
    throw std::invalid_argument("pitman_check needs pi_exact and pi_C");
  if (n_blocks < 2) throw std::invalid_argument("pitman_check: n_blocks < 2");
  double epi = 0.0;
  for (const auto& [s, p] : *chain.pi_exact) {
    if (chain.in_small_set(s))
      epi += p * (chain.delta * F(s, true) + (1.0 - chain.delta) * F(s, false));
    else
      epi += p * F(s, false);
  }
  double exact = epi / (chain.delta * *chain.pi_C);
  return compare_mc(block_draws(chain, F, n_blocks, seed, workers), exact);
}

MomentCheck block_mean_check(const MinorizedChain& chain,
                             const std::function<double(const ChainState&)>& f,
                             std::size_t n_blocks, std::uint64_t seed, int workers) {
  if (!chain.pi_exact || !chain.pi_C)
    throw std::invalid_argument("block_mean_check needs pi_exact and pi_C");
  if (n_blocks < 2) throw std::invalid_argument("block_mean_check: n_blocks < 2");
  double epi = 0.0;
  for (const auto& [s, p] : *chain.pi_exact) epi += p * f(s);
  double exact = chain.m * epi / (chain.delta * *chain.pi_C);
  auto G = [&f](const ChainState& s, bool) { return f(s); };
  return compare_mc(block_draws(chain, G, n_blocks, seed, workers), exact);
}

std::vector<double> sample_S_under_nu(const MinorizedChain& chain,
                                      const std::function<double(const ChainState&)>& f,
                                      std::size_t n_blocks, std::uint64_t seed,
                                      int workers) {
  auto G = [&f](const ChainState& s, bool) { return f(s); };
  return block_draws(chain, G, n_blocks, seed, workers);
}

}  // namespace orlicz
