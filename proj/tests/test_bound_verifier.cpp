#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "orlicz/bound_verifier.hpp"
#include "orlicz/split_chain.hpp"
#include "orlicz/tower_chain.hpp"

using namespace orlicz;

namespace {

TowerChain geometric_tower(int n_max, double f_tilde = 1.0) {
  TowerChainSpec spec;
  double z = 0.0;
  for (int n = 1; n <= n_max; ++n) z += std::ldexp(1.0, -n);
  for (int n = 1; n <= n_max; ++n)
    spec.atoms.push_back({"g" + std::to_string(n), std::ldexp(1.0, -n) / z,
                          f_tilde, n});
  return build_tower(spec);
}

}  // namespace

TEST_CASE("first-block bound on the three-level tower by hand") {
  auto tc = build_tower({{{"a", 1.0, 1.0, 3}}}, false);
  auto phi = YoungFn::power(2.0);
  auto rep = verify_thm_nu(tc, phi, phi);
  CHECK(rep.lhs.value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(rep.tau_norm.value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(rep.f_norm.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.rhs.value == doctest::Approx(6.0).epsilon(1e-6));
  REQUIRE(rep.ratio_defined);
  CHECK(rep.ratio == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("zero function gives a zero left side") {
  auto tc = build_tower({{{"a", 0.5, 0.0, 1}, {"b", 0.5, 0.0, 3}}});
  auto rep = verify_thm_nu(tc, YoungFn::power(2.0), YoungFn::power(4.0));
  CHECK(rep.lhs.finite());
  CHECK(rep.lhs.value == doctest::Approx(0.0));
  auto rpi = verify_thm_pi(tc, YoungFn::power(2.0), YoungFn::power(4.0));
  CHECK(rpi.lhs.value == doctest::Approx(0.0));
  auto rc = verify_cor_nu(tc, YoungFn::power(4.0), YoungFn::power(2.0));
  CHECK(rc.lhs.value == doctest::Approx(0.0));
}

TEST_CASE("first-block bound holds on a randomized suite") {
  auto phi = YoungFn::power(2.0);
  auto psi = YoungFn::power(4.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto tc = build_tower(random_tower_spec(seed));
    auto rep = verify_thm_nu(tc, phi, psi);
    REQUIRE(rep.ratio_defined);
    CHECK(rep.ratio <= 1.0);
  }
}

TEST_CASE("stationary bound holds on a randomized suite") {
  auto phi = YoungFn::power(2.0);
  auto psi = YoungFn::power(4.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto tc = build_tower(random_tower_spec(seed));
    auto rep = verify_thm_pi(tc, phi, psi);
    REQUIRE(rep.ratio_defined);
    CHECK(rep.ratio <= 1.0);
  }
}

TEST_CASE("conjugate-form first-block bound holds on a randomized suite") {
  auto psi = YoungFn::power(4.0);
  auto rho = YoungFn::power(2.0);
  auto tc3 = build_tower({{{"a", 1.0, 1.0, 3}}}, false);
  auto one = verify_cor_nu(tc3, psi, rho);
  REQUIRE(one.ratio_defined);
  CHECK(one.ratio <= 1.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto tc = build_tower(random_tower_spec(seed));
    auto rep = verify_cor_nu(tc, psi, rho);
    REQUIRE(rep.ratio_defined);
    CHECK(rep.ratio <= 1.0);
  }
}

TEST_CASE("linear-growth sharpness of the tau-norm dependence") {
  // phi(x) = x, psi(x) = x^2, f == 1: the stationary norm is comparable to
  // the squared tau-norm, so the bound's ratio sits well inside [1/4, 1]
  auto tc = geometric_tower(12);
  auto rep = verify_thm_pi(tc, YoungFn::linear(), YoungFn::power(2.0));
  REQUIRE(rep.ratio_defined);
  CHECK(rep.ratio >= 0.25);
  CHECK(rep.ratio <= 1.0);
  // sanity of the hand-computed sides: lhs = E_pi S = (E_alpha h + 1)/2
  double eh = 0.0, z = 0.0;
  for (int n = 1; n <= 12; ++n) z += std::ldexp(1.0, -n);
  for (int n = 1; n <= 12; ++n) eh += n * std::ldexp(1.0, -n) / z;
  CHECK(rep.lhs.value == doctest::Approx((eh + 1.0) / 2.0).epsilon(1e-6));
}

TEST_CASE("scaling gain reduces to the classical factors") {
  CHECK(phi_scaling_gain(YoungFn::linear(), 5.0) == doctest::Approx(5.0).epsilon(1e-3));
  CHECK(phi_scaling_gain(YoungFn::power(2.0), 9.0) == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(phi_scaling_gain(YoungFn::power(4.0), 16.0) == doctest::Approx(2.0).epsilon(1e-3));
  // the improved factor never exceeds the linear one (g(r) <= r by convexity)
  auto tc = geometric_tower(8);
  auto lin = verify_thm_pi(tc, YoungFn::power(3.0), YoungFn::power(4.0), false);
  auto imp = verify_thm_pi(tc, YoungFn::power(3.0), YoungFn::power(4.0), true);
  CHECK(imp.rhs.value <= lin.rhs.value * (1.0 + 1e-9));
  CHECK(imp.lhs.value <= imp.rhs.value);
}

TEST_CASE("derived stationary bound needs the domination precondition") {
  auto tc = geometric_tower(6);
  // psi = x^3, zeta = x^2 force kappa = x; phi = x is dominated by it
  auto rep = verify_cor_pi(tc, YoungFn::power(3.0), YoungFn::power(2.0),
                           YoungFn::power(1.0), 2.0);
  CHECK(rep.lhs.finite());
  CHECK(rep.rhs.finite());
  // phi growing much faster than kappa is rejected
  CHECK_THROWS_AS(verify_cor_pi(tc, YoungFn::power(3.0), YoungFn::power(2.0),
                                YoungFn::power(3.0), 2.0),
                  std::invalid_argument);
}

TEST_CASE("fitted constant of the derived bound is stable across suites") {
  auto psi = YoungFn::power(3.0);
  auto zeta = YoungFn::power(2.0);
  auto phi = YoungFn::power(1.0);
  std::vector<TowerChainSpec> s1, s2;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) s1.push_back(random_tower_spec(seed));
  for (std::uint64_t seed = 21; seed <= 40; ++seed) s2.push_back(random_tower_spec(seed));
  double k1 = fit_cor_pi_constant(s1, psi, zeta, phi);
  double k2 = fit_cor_pi_constant(s2, psi, zeta, phi);
  REQUIRE(k1 > 0.0);
  REQUIRE(k2 > 0.0);
  CHECK(k1 / k2 <= 2.0);
  CHECK(k2 / k1 <= 2.0);
  // the fitted constant makes the bound hold on its own suite
  for (const auto& spec : s1) {
    auto rep = verify_cor_pi(build_tower(spec), psi, zeta, phi, k1);
    CHECK(rep.lhs.value <= rep.rhs.value * (1.0 + 1e-9));
  }
}

TEST_CASE("monte carlo and exact evaluation agree") {
  auto phi = YoungFn::power(2.0);
  auto psi = YoungFn::power(4.0);
  auto tc = build_tower(random_tower_spec(7));
  auto exact = verify_thm_nu(tc, phi, psi);
  auto mc = verify_thm_nu(tc, phi, psi, true, {20000, 3});
  REQUIRE(exact.lhs.finite());
  REQUIRE(mc.lhs.finite());
  // at the exact norm, the sampled phi-mean must cover the exact expectation
  auto f = [&tc](const ChainState& s) { return tc.f(s); };
  auto draws = sample_S_under_nu(tc.chain, f, 20000, 3);
  double c = exact.lhs.value;
  double mean = 0.0, sumsq = 0.0;
  for (double s : draws) {
    double v = phi(std::abs(s) / c);
    mean += v;
    sumsq += v * v;
  }
  mean /= draws.size();
  double se = std::sqrt((sumsq / draws.size() - mean * mean) / draws.size());
  double exact_mean = 0.0;
  for (const auto& a : tc.laws.S_law_under_nu.atoms)
    exact_mean += phi(std::abs(a.value) / c) * a.prob;
  CHECK(std::abs(mean - exact_mean) <= 3.0 * se + 1e-12);
  CHECK(mc.lhs.value == doctest::Approx(exact.lhs.value).epsilon(0.05));

  auto mpi = verify_thm_pi(tc, phi, psi, false, true, {20000, 5});
  auto epi = verify_thm_pi(tc, phi, psi);
  CHECK(mpi.lhs.value == doctest::Approx(epi.lhs.value).epsilon(0.05));
}

TEST_CASE("divergence certificates") {
  auto phi = YoungFn::power(2.0);
  auto psi = YoungFn::power(4.0);
  auto res = weak_opt_nu_spec(phi, psi, GenYoungFn::from_young(YoungFn::power(2.5)), 20);
  REQUIRE(res.refuted);

  auto zero = divergence_certificate(res.series_term, 0.0, 10.0, 100);
  CHECK(!zero.exceeded);
  CHECK(zero.partial_sum == 0.0);

  auto hit = divergence_certificate(res.series_term, 1.0, 1e6, 10000);
  CHECK(hit.exceeded);
  CHECK(hit.partial_sum > 1e6);
  CHECK(hit.n_terms <= res.x.size());

  auto open = divergence_certificate(res.series_term, 1.0, INFINITY, 50);
  CHECK(!open.exceeded);
  CHECK(open.n_terms == 50);

  // partial sums are nondecreasing in the term count
  double prev = 0.0;
  for (std::size_t n = 1; n <= 10; ++n) {
    auto c = divergence_certificate(res.series_term, 1.0, INFINITY, n);
    CHECK(c.partial_sum >= prev);
    prev = c.partial_sum;
  }
}
