#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "orlicz/extreal.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct Atom {
  double value = 0.0;
  double prob = 0.0;
};

// Finite atomic law. Probabilities must be positive and sum to 1 (1e-12).
struct AtomicDist {
  std::vector<Atom> atoms;
  void validate() const;  // throws std::invalid_argument on violation
};

enum class NormStatus { finite, infinite_certified, budget_exhausted };

struct NormResult {
  ExtReal value;
  NormStatus status = NormStatus::finite;
  // E phi(|X|/C) at the returned C (meaningful when status == finite)
  double residual = 0.0;
  std::string certificate;  // divergence evidence when infinite_certified
};

// Luxemburg norm inf{C > 0 : E phi(|X|/C) <= target}, target in {1, 2}.
NormResult orlicz_norm(const AtomicDist& dist, const GenYoungFn& phi,
                       double target = 1.0);
NormResult orlicz_norm(const AtomicDist& dist, const YoungFn& phi,
                       double target = 1.0);
// Empirical version: uniform weights on the sample.
NormResult orlicz_norm(const std::vector<double>& sample, const GenYoungFn& phi,
                       double target = 1.0);
NormResult orlicz_norm(const std::vector<double>& sample, const YoungFn& phi,
                       double target = 1.0);

// psi_alpha quasi-norm: solves E exp((|X|/C)^alpha) = 2. Equivalent to the
// Orlicz norm of the convexity-patched ExpPower(alpha) up to constants.
NormResult psi_alpha_norm(const AtomicDist& dist, double alpha);
NormResult psi_alpha_norm(const std::vector<double>& sample, double alpha);

// Norm of a function under an atomic stationary law: the pushforward is the
// atomic law of its values, so this just delegates.
NormResult function_norm(const AtomicDist& f_values_under_pi, const GenYoungFn& rho);
NormResult function_norm(const AtomicDist& f_values_under_pi, const YoungFn& rho);

// Infinite atomic law given as a term generator (values need not be sorted;
// probabilities sum to <= 1 over all terms). Partial expectations are exact
// lower bounds, so once they exceed the target at every C on a dyadic ladder
// the norm is certified infinite. If the budget runs out before the ladder is
// exhausted, the result is flagged budget_exhausted (no guessing).
struct SeriesNormInput {
  std::function<Atom(std::size_t)> term;
  std::size_t budget = 200000;
  int ladder_min_exp = -20;  // C ladder 2^k, k in [min, max]
  int ladder_max_exp = 60;
};
NormResult orlicz_norm_series(const SeriesNormInput& input, const GenYoungFn& phi,
                              double target = 1.0);

}  // namespace orlicz
