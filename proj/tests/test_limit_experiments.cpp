#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "orlicz/limit_experiments.hpp"
#include "orlicz/orlicz_norm.hpp"

using namespace orlicz;

namespace {

// alpha(h = n) proportional to r^n up to hmax, f = g(h)
TowerChain ratio_tower(double r, int hmax, const std::function<double(int)>& g) {
  TowerChainSpec spec;
  double z = 0.0;
  for (int n = 1; n <= hmax; ++n) z += std::pow(r, n);
  for (int n = 1; n <= hmax; ++n)
    spec.atoms.push_back({"g" + std::to_string(n), std::pow(r, n) / z,
                          g(n), n});
  return build_tower(spec);
}

TowerChain clt_tower() {
  return ratio_tower(0.5, 20, [](int n) { return n % 2 ? 1.0 : -1.0; });
}

}  // namespace

TEST_CASE("normalized sums of the geometric tower are asymptotically normal") {
  auto tc = clt_tower();
  auto rep = clt_experiment(tc, {1000, 10000, 100000}, 2000, 2024, 0);
  REQUIRE(!rep.degenerate);
  for (double ks : rep.ks_distance) {
    CHECK(ks >= 0.0);
    CHECK(ks < 0.05);
  }
  // the sample variance of the normalized sums reproduces the block formula
  CHECK(rep.sigma_estimate_sq ==
        doctest::Approx(rep.sigma_f_sq).epsilon(0.10));
  // consecutive blocks are independent, so the cross term vanishes
  CHECK(std::abs(rep.cross_term) <= 3.0 * rep.cross_term_se);
}

TEST_CASE("zero function gives a degenerate variance report") {
  auto tc = ratio_tower(0.5, 6, [](int) { return 0.0; });
  auto rep = clt_experiment(tc, {1000}, 100, 5, 0);
  CHECK(rep.degenerate);
}

TEST_CASE("experiments are deterministic in the seed") {
  auto tc = clt_tower();
  auto a = clt_experiment(tc, {1000}, 500, 7, 0);
  auto b = clt_experiment(tc, {1000}, 500, 7, 0);
  CHECK(a.ks_distance == b.ks_distance);
  CHECK(a.sigma_f_sq == b.sigma_f_sq);
}

TEST_CASE("iterated-logarithm statistic stays in the qualitative band") {
  auto tc = clt_tower();
  auto rep = lil_statistic(tc, 100000, 200, 11, 0);
  REQUIRE(!rep.degenerate);
  CHECK(rep.q95 >= 0.5 * rep.sigma_f);
  CHECK(rep.q95 <= 3.0 * rep.sigma_f);

  auto zero = lil_statistic(ratio_tower(0.5, 6, [](int) { return 0.0; }),
                            1000, 20, 3, 0);
  for (double v : zero.replica_max) CHECK(v == 0.0);

  CHECK_THROWS_AS(lil_statistic(tc, 7, 10, 1, 0), std::invalid_argument);
}

TEST_CASE("distance to the normal law decays at the expected rate") {
  // a slowly decaying tower with f = h^2 keeps the sum skewness visible over
  // the monte carlo floor across the whole n range
  auto tc = ratio_tower(0.92, 100, [](int n) { return double(n) * n; });
  auto rep = berry_esseen_experiment(tc, YoungFn::power(4.0),
                                     {1000, 4000, 16000}, 10000, 42, 0);
  REQUIRE(!rep.degenerate);
  for (double d : rep.delta_n) {
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
  CHECK(rep.slope <= -0.35);
  CHECK(rep.f_norm > 0.0);
}

TEST_CASE("rate experiment preconditions") {
  auto tc = clt_tower();
  // psi = x^2 cannot control the third moment of the regeneration time
  CHECK_THROWS_AS(berry_esseen_experiment(tc, YoungFn::power(2.0), {1000}, 10, 1, 0),
                  std::invalid_argument);
  auto zero = berry_esseen_experiment(
      ratio_tower(0.5, 6, [](int) { return 0.0; }), YoungFn::power(4.0),
      {1000}, 10, 1, 0);
  CHECK(zero.degenerate);
}

TEST_CASE("exponential tail bound dominates the empirical tails") {
  auto tc = clt_tower();
  std::vector<double> t_grid;
  for (double t = 0.0; t <= 400.0; t += 25.0) t_grid.push_back(t);
  auto rep = tail_bound_experiment(tc, 1.0, 1.0, 2000, t_grid, 100000, 31, 0.0, 0);
  CHECK(rep.gamma == doctest::Approx(0.5));
  CHECK(rep.tau_norm > 1.0);
  CHECK(rep.f_norm > 0.0);
  CHECK(rep.es2 > 0.0);
  REQUIRE(rep.K >= 1.0);
  // t = 0: everything has tail 1 and the capped bound matches
  CHECK(rep.tail_nu[0] == 1.0);
  CHECK(rep.tail_pi[0] == 1.0);
  CHECK(rep.bound_nu[0] == 1.0);
  CHECK(rep.bound_pi[0] == 1.0);
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    CHECK(rep.bound_nu[i] >= rep.tail_nu[i]);
    CHECK(rep.bound_pi[i] >= rep.tail_pi[i]);
    if (i > 0) {
      CHECK(rep.tail_nu[i] <= rep.tail_nu[i - 1]);
      CHECK(rep.tail_pi[i] <= rep.tail_pi[i - 1]);
    }
  }
  // proof decomposition reconstructs the additive functional pathwise
  CHECK(rep.decomposition_ok);
  CHECK(rep.truncation_level > 0.0);

  // composition rule: the block sum inherits the gamma-exponential norm
  double c = 0.0;
  for (const auto& a : tc.spec.atoms) c += a.alpha * a.f_tilde;
  AtomicDist s_law;
  for (std::size_t i = 0; i < tc.spec.atoms.size(); ++i) {
    const auto& a = tc.spec.atoms[i];
    s_law.atoms.push_back({(a.f_tilde - c) * double(a.h),
                           tc.laws.R * a.alpha / double(a.h)});
  }
  auto sn = psi_alpha_norm(s_law, rep.gamma);
  CHECK(sn.value.finite());

  CHECK_THROWS_AS(
      tail_bound_experiment(tc, -1.0, 1.0, 100, t_grid, 100, 1, 0.0, 0),
      std::invalid_argument);
}
