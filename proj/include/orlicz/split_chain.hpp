#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "orlicz/rng.hpp"

namespace orlicz {

// State of a labelled tower-style chain: a label index and a level. Generic
// chains can encode whatever they like in the two ints.
struct ChainState {
  int label = 0;
  std::int64_t level = 1;
  friend bool operator==(const ChainState&, const ChainState&) = default;
};

// A Harris chain with a one-step minorization P(x, .) >= delta nu(.) on the
// small set C. Samplers are exact; the residual kernel (P - delta nu)/(1-delta)
// is supplied by the builder, never estimated.
struct MinorizedChain {
  int m = 1;
  double delta = 1.0;
  std::function<bool(const ChainState&)> in_small_set;
  std::function<ChainState(RngStream&)> nu_sampler;
  // residual kernel at x in C (only consulted when delta < 1)
  std::function<ChainState(const ChainState&, RngStream&)> residual_sampler;
  // full kernel at x off C
  std::function<ChainState(const ChainState&, RngStream&)> kernel_sampler;
  std::optional<std::vector<std::pair<ChainState, double>>> pi_exact;
  std::optional<double> pi_C;
};

struct Init {
  enum class Kind { nu, pi, point };
  Kind kind = Kind::nu;
  ChainState at{};  // for Kind::point
  static Init from_nu() { return {Kind::nu}; }
  static Init from_pi() { return {Kind::pi}; }
  static Init from_point(ChainState x) { return {Kind::point, x}; }
};

struct RegenTrace {
  std::vector<ChainState> states;      // X_0 .. X_{steps-1}
  std::vector<std::uint8_t> marks;     // Y_k for each stored state
  std::vector<std::size_t> tau;        // regeneration times tau(0), tau(1), ...
  std::vector<double> block_sums;      // s_0 = sum_{0..tau(0)}, then per block
  std::vector<std::size_t> block_lengths;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

// One transition; *mark receives the split-chain mark Y_k drawn at x.
ChainState chain_step(const MinorizedChain& chain, const ChainState& x,
                      bool* mark, RngStream& rng);
// Draw the initial state for the given start law.
ChainState draw_start(const MinorizedChain& chain, const Init& init,
                      RngStream& rng);

// Runs the split chain for `steps` states and materializes marks, regeneration
// times and complete blocks of f. Only m = 1 is supported.
RegenTrace simulate(const MinorizedChain& chain, const Init& init,
                    std::size_t steps, const std::function<double(const ChainState&)>& f,
                    std::uint64_t master_seed, std::uint64_t stream_id = 0);

struct MomentCheck {
  double estimate = 0.0;
  double exact = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  std::size_t n = 0;
};

// Monte Carlo check of the occupation-measure identity
//   E_nu sum_{i=0}^{tau(0)} F(X_i, Y_i) = delta^{-1} pi(C)^{-1} E_pi F(X_0, Y_0)
// with the right side computed exactly from pi_exact.
MomentCheck pitman_check(const MinorizedChain& chain,
                         const std::function<double(const ChainState&, bool)>& F,
                         std::size_t n_blocks, std::uint64_t seed, int workers = 0);

// Same for the block mean: E s_i(f) = delta^{-1} pi(C)^{-1} m int f dpi.
MomentCheck block_mean_check(const MinorizedChain& chain,
                             const std::function<double(const ChainState&)>& f,
                             std::size_t n_blocks, std::uint64_t seed,
                             int workers = 0);

// Independent draws of S(f) = sum_{i=0}^{tau(0)} f(X_i) started from nu.
std::vector<double> sample_S_under_nu(const MinorizedChain& chain,
                                      const std::function<double(const ChainState&)>& f,
                                      std::size_t n_blocks, std::uint64_t seed,
                                      int workers = 0);

}  // namespace orlicz
