#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "orlicz/young.hpp"

using namespace orlicz;

namespace {
const double kRho24 = 2.0 / (3.0 * std::sqrt(3.0));  // rho_{x^2,x^4}(1)
}

TEST_CASE("power family basics") {
  auto f = YoungFn::power(2.0);
  CHECK(f(0.0) == 0.0);
  CHECK(f(3.0) == doctest::Approx(9.0));
  CHECK(f.inverse(9.0) == doctest::Approx(3.0));
  CHECK(f.scaled(2.0, 3.0)(1.0) == doctest::Approx(18.0));
  CHECK_THROWS_AS(YoungFn::power(0.5), std::invalid_argument);
  CHECK_THROWS_AS(f(-1.0), std::domain_error);
}

TEST_CASE("exp_power patch keeps convexity") {
  auto f = YoungFn::exp_power(0.5);
  auto patch = f.low_x_patch();
  REQUIRE(patch.has_value());
  // tangent point of expm1(sqrt(x)) through the origin (frozen oracle)
  CHECK(patch->first == doctest::Approx(2.5396382822).epsilon(1e-6));
  CHECK(patch->second == doctest::Approx(1.5441386524).epsilon(1e-6));
  // midpoint convexity across the whole range including the seam
  for (double a = 1e-3; a < 1e3; a *= 1.7) {
    double b = a * 3.1;
    CHECK(f(0.5 * (a + b)) <= 0.5 * (f(a) + f(b)) + 1e-12 * f(b));
  }
  // unpatched region matches the nominal formula
  CHECK(f(9.0) == doctest::Approx(std::expm1(3.0)));
  // no patch needed at alpha >= 1
  CHECK(!YoungFn::exp_power(1.0).low_x_patch().has_value());
}

TEST_CASE("power_log patch for negative log power") {
  auto f = YoungFn::power_log(2.0, -1.0);
  REQUIRE(f.low_x_patch().has_value());
  for (double a = 1e-3; a < 1e3; a *= 1.9) {
    double b = a * 2.7;
    CHECK(f(0.5 * (a + b)) <= 0.5 * (f(a) + f(b)) + 1e-12 * f(b));
  }
  auto g = YoungFn::power_log(2.0, 1.0);
  CHECK(!g.low_x_patch().has_value());
  CHECK(g(10.0) == doctest::Approx(100.0 * std::pow(std::log(std::exp(1.0) + 10.0), 1.0)));
}

TEST_CASE("tabulated interpolation preserves power laws") {
  std::vector<std::pair<double, double>> knots;
  for (double x = 0.01; x <= 1e4; x *= 1.3) knots.emplace_back(x, x * x * x);
  auto f = YoungFn::tabulated(knots);
  CHECK(f(7.77) == doctest::Approx(7.77 * 7.77 * 7.77).epsilon(1e-9));
  CHECK(f(2e4) == doctest::Approx(8e12).epsilon(1e-6));  // extrapolation
  CHECK(f.inverse(1000.0) == doctest::Approx(10.0).epsilon(1e-8));
}

TEST_CASE("conjugate closed forms") {
  auto c2 = conjugate(YoungFn::power(2.0));
  CHECK(c2(3.0).require_finite() == doctest::Approx(9.0 / 4.0));
  auto c3 = conjugate(YoungFn::power(3.0));
  CHECK(c3(2.0).require_finite() ==
        doctest::Approx(2.0 * std::pow(3.0, -1.5) * std::pow(2.0, 1.5)));
  auto cl = conjugate(YoungFn::linear());
  CHECK(cl(0.7).require_finite() == 0.0);
  CHECK(!cl(1.5).finite());
  REQUIRE(cl.finite_ceiling().has_value());
  CHECK(*cl.finite_ceiling() == doctest::Approx(1.0));
  auto ce = conjugate(YoungFn::exp_power(1.0));
  CHECK(ce(1.0).require_finite() == 0.0);
  CHECK(ce(std::exp(1.0)).require_finite() == doctest::Approx(1.0));
}

TEST_CASE("numeric conjugate matches oracle and closed form") {
  // patched exp_power(0.5) has no closed form; frozen grid oracle
  auto c = conjugate(YoungFn::exp_power(0.5));
  CHECK(c(5.0).require_finite() == doctest::Approx(29.2085638038).epsilon(1e-6));
  // numeric path on a scaled power must agree with hand algebra:
  // f(x) = 2 x^2 -> f*(y) = y^2 / 8
  auto cs = conjugate(YoungFn::power(2.0).scaled(2.0));
  CHECK(cs(4.0).require_finite() == doctest::Approx(2.0).epsilon(1e-7));
  // ceiling detection on a tabulated asymptotically-linear function
  std::vector<std::pair<double, double>> knots;
  for (double x = 0.5; x <= 1e6; x *= 2.0) knots.emplace_back(x, x);
  auto ct = conjugate(GenYoungFn::tabulated(knots));
  REQUIRE(ct.finite_ceiling().has_value());
  CHECK(*ct.finite_ceiling() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(!ct(2.0).finite());
}

TEST_CASE("biconjugation recovers a convex function") {
  auto f = YoungFn::power(2.5);
  auto ff = conjugate(conjugate(f));
  for (double x : {0.3, 1.0, 4.7, 55.0}) {
    CHECK(ff(x).require_finite() == doctest::Approx(f(x)).epsilon(1e-5));
  }
}

TEST_CASE("generalized inverse at a jump") {
  auto cl = conjugate(YoungFn::linear());
  // inf{x : f(x) >= 0.5} is the jump location 1
  CHECK(cl.inverse(0.5) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS((void)conjugate(YoungFn::power(2.0)).inverse(-1.0),
                  std::domain_error);
}

TEST_CASE("inverse product sandwich x <= f^{-1}(x) (f*)^{-1}(x) <= 2x") {
  for (const auto& f :
       {YoungFn::power(2.0), YoungFn::power(3.5), YoungFn::exp_power(1.0),
        YoungFn::power_log(2.0, 1.0)}) {
    auto fs = conjugate(f);
    for (double x = 0.25; x <= 1e4; x *= 3.7) {
      double prod = f.inverse(x) * fs.inverse(x);
      CHECK(prod >= x * (1.0 - 1e-6));
      CHECK(prod <= 2.0 * x * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("rho exact values for power pairs") {
  auto rho = rho_of(YoungFn::power(2.0), YoungFn::power(4.0));
  CHECK(rho(1.0).require_finite() == doctest::Approx(kRho24).epsilon(1e-7));
  CHECK(rho(2.0).require_finite() == doctest::Approx(8.0 * kRho24).epsilon(1e-7));
  // phi=x^2, psi=x^3: rho(x) = x^4/4
  auto rho23 = rho_of(YoungFn::power(2.0), YoungFn::power(3.0));
  CHECK(rho23(2.0).require_finite() == doctest::Approx(4.0).epsilon(1e-7));
}

TEST_CASE("rho frozen oracles for exponential pairs") {
  auto r12 = rho_of(YoungFn::exp_power(1.0), YoungFn::exp_power(2.0));
  CHECK(r12(1.0).require_finite() == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r12(2.0).require_finite() == doctest::Approx(7.2488516342).epsilon(1e-6));
  auto r32 = rho_of(YoungFn::power(3.0), YoungFn::exp_power(2.0));
  CHECK(r32(5.0).require_finite() == doctest::Approx(588.2663628668).epsilon(1e-6));
  auto rp = rho_of(YoungFn::exp_power(0.5), YoungFn::exp_power(2.0));
  CHECK(rp(2.0).require_finite() == doctest::Approx(3.08827729).epsilon(1e-5));
}

TEST_CASE("rho infinity detection") {
  // exponential phi against polynomial psi: the sup diverges
  auto rho = rho_of(YoungFn::exp_power(1.0), YoungFn::power(2.0));
  CHECK(!rho(1.0).finite());
  CHECK_THROWS_AS(rho(1.0).require_finite(), std::range_error);
}

TEST_CASE("rho rejects psi violating the small-slope/unit-value assumption") {
  CHECK_THROWS_AS(rho_of(YoungFn::power(2.0), YoungFn::linear()),
                  std::invalid_argument);
  CHECK_THROWS_AS(rho_of(YoungFn::power(2.0), YoungFn::power(2.0).scaled(0.25)),
                  std::invalid_argument);
}

TEST_CASE("zeta exact and frozen values") {
  auto z = zeta_of(YoungFn::power(2.0), YoungFn::power(4.0));
  CHECK(z(1.0).require_finite() == doctest::Approx(4.0 / 27.0).epsilon(1e-7));
  CHECK(z(2.0).require_finite() == doctest::Approx(4.0 * 64.0 / 27.0).epsilon(1e-7));
  auto z2 = zeta_of(YoungFn::power(2.0), YoungFn::exp_power(2.0));
  CHECK(z2(3.0).require_finite() == doctest::Approx(16.01527415).epsilon(1e-6));
  CHECK_THROWS_AS(zeta_of(YoungFn::power(2.0), YoungFn::exp_power(1.0)),
                  std::invalid_argument);
}

TEST_CASE("rho and zeta are nondecreasing and convex on the finite range") {
  auto rho = rho_of(YoungFn::power(2.0), YoungFn::power(4.0));
  auto z = zeta_of(YoungFn::power(2.0), YoungFn::exp_power(2.0));
  for (const auto& f : {rho, z}) {
    double prev = 0.0, prev_x = 0.0, prev_slope = 0.0;
    for (double x = 0.5; x <= 64.0; x *= 1.4) {
      double v = f(x).require_finite();
      CHECK(v >= prev * (1.0 - 1e-9));
      if (prev_x > 0.0) {
        double slope = (v - prev) / (x - prev_x);
        CHECK(slope >= prev_slope * (1.0 - 1e-6));
        prev_slope = slope;
      }
      prev = v;
      prev_x = x;
    }
  }
}

TEST_CASE("eta closed forms") {
  // phi = psi = x^2  =>  eta(z) = z
  auto e22 = eta_nu(YoungFn::power(2.0), YoungFn::power(2.0));
  CHECK(e22(3.0).require_finite() == doctest::Approx(3.0).epsilon(1e-7));
  // phi = x^2, psi = x^4: eta(2) frozen from the conjugate algebra
  auto e24 = eta_nu(YoungFn::power(2.0), YoungFn::power(4.0));
  CHECK(e24(2.0).require_finite() == doctest::Approx(1.7547653506).epsilon(1e-6));
}

TEST_CASE("conjugate of eta sandwiches rho up to constants") {
  auto phi = YoungFn::power(2.0);
  auto psi = YoungFn::power(4.0);
  auto rho = rho_of(phi, psi);
  auto eta_star = conjugate(eta_nu(phi, psi));
  GridSpec g{1.0, 1024.0, 80};
  CHECK(dominates(rho, eta_star, g).holds);
  CHECK(dominates(eta_star, rho, g).holds);
}

TEST_CASE("kappa exact power case") {
  // zeta = x^p, psi = x^r: kappa(x) = x^{(r-1)p/(r+p-1)}
  auto k24 = kappa_of(YoungFn::power(2.0), YoungFn::power(4.0));
  CHECK(k24.kappa(32.0).require_finite() ==
        doctest::Approx(std::pow(32.0, 1.2)).epsilon(1e-6));
  CHECK(k24.kappa_inv(64.0).require_finite() ==
        doctest::Approx(std::pow(64.0, 5.0 / 6.0)).epsilon(1e-6));
  // p=2, r=3: the exponent is exactly 1
  auto k23 = kappa_of(YoungFn::power(2.0), YoungFn::power(3.0));
  CHECK(k23.kappa(64.0).require_finite() == doctest::Approx(64.0).epsilon(1e-6));
  // vartheta = kappa_inv o (psi(x)/x): for p=2, r=4 this is x^{3*5/6} = x^{2.5}
  CHECK(k24.vartheta(4.0).require_finite() ==
        doctest::Approx(std::pow(4.0, 2.5)).epsilon(1e-6));
}

TEST_CASE("tilde_phi exact power case") {
  // psi = x^3, rho = x^2: phi~ = c x^{3/2}, phi~(4) hand-computed
  auto tp = tilde_phi(YoungFn::power(3.0), YoungFn::power(2.0));
  CHECK(tp(4.0).require_finite() == doctest::Approx(14.0381228048).epsilon(1e-5));
}

TEST_CASE("golden exponents: rho cases") {
  auto r1 = rho_of(YoungFn::power(2.0), YoungFn::power(4.0));
  CHECK(fitted_exponent(r1, 10.0, 1e3) == doctest::Approx(3.0).epsilon(0.017));
  auto r2 = rho_of(YoungFn::exp_power(0.5), YoungFn::exp_power(2.0));
  CHECK(std::abs(fitted_exp_exponent(r2, 10.0, 1e3) - 2.0 / 3.0) < 0.05);
  auto r3 = rho_of(YoungFn::power(3.0), YoungFn::exp_power(2.0));
  CHECK(std::abs(fitted_log_power(r3, 3.0, 10.0, 1e3) - 1.0) < 0.15);
}

TEST_CASE("golden exponents: zeta cases") {
  auto z1 = zeta_of(YoungFn::power(2.0), YoungFn::power(4.0));
  CHECK(fitted_exponent(z1, 10.0, 1e3) == doctest::Approx(6.0).epsilon(0.009));
  auto z2 = zeta_of(YoungFn::exp_power(0.5), YoungFn::exp_power(2.0));
  CHECK(std::abs(fitted_exp_exponent(z2, 10.0, 1e3) - 2.0 / 3.0) < 0.05);
  auto z3 = zeta_of(YoungFn::power(2.0), YoungFn::exp_power(2.0));
  CHECK(std::abs(fitted_log_power(z3, 2.0, 10.0, 1e3) - 1.0) < 0.15);
}

TEST_CASE("golden exponents: tilde_phi cases") {
  auto t1 = tilde_phi(YoungFn::power(3.0), YoungFn::power(2.0));
  CHECK(fitted_exponent(t1, 10.0, 1e3) == doctest::Approx(1.5).epsilon(0.034));
  auto t2 = tilde_phi(YoungFn::exp_power(1.0), YoungFn::exp_power(1.0));
  CHECK(std::abs(fitted_exp_exponent(t2, 10.0, 1e3) - 0.5) < 0.05);
  // x^p/log-power case read off from the pre-conjugate side, where the joint
  // power-log fit is exact; conjugation maps (q, s) to (q/(q-1), -s/(q-1))
  auto psis = conjugate(YoungFn::exp_power(1.0));
  auto rhos = conjugate(YoungFn::power(3.0));
  auto g = GenYoungFn::from_eval(
      [psis, rhos](double y) -> ExtReal {
        ExtReal inner = rhos(y);
        if (!inner.finite()) return ExtReal::infinity();
        return psis(inner.value);
      },
      std::nullopt, "pre-conjugate");
  auto pl = fit_power_log(g, 100.0, 1e4);
  CHECK(std::abs(pl.exponent / (pl.exponent - 1.0) - 3.0) < 0.05);
  CHECK(std::abs(-pl.log_power / (pl.exponent - 1.0) - (-2.0)) < 0.15);
}

TEST_CASE("golden exponents: kappa cases") {
  auto k1 = kappa_of(YoungFn::power(2.0), YoungFn::power(3.0));
  CHECK(fitted_exponent(k1.kappa, 10.0, 1e3) == doctest::Approx(1.0).epsilon(0.05));
  auto k2 = kappa_of(YoungFn::exp_power(1.0), YoungFn::exp_power(2.0));
  CHECK(std::abs(fitted_exp_exponent(k2.kappa, 10.0, 1e3) - 2.0 / 3.0) < 0.05);
  auto k3 = kappa_of(YoungFn::power(2.0), YoungFn::exp_power(2.0));
  CHECK(std::abs(fitted_log_power(k3.kappa, 2.0, 10.0, 1e3) - (-1.0)) < 0.15);
}

TEST_CASE("closed-form lookup table") {
  CHECK(closed_form_lookup("nu-1", 2.0, 4.0).exponent == doctest::Approx(3.0));
  CHECK(closed_form_lookup("nu-2", 0.5, 2.0).exponent == doctest::Approx(2.0 / 3.0));
  CHECK(closed_form_lookup("nu-2", 0.5, 2.0).stretched);
  CHECK(closed_form_lookup("nu-3", 3.0, 2.0).log_power == doctest::Approx(1.0));
  CHECK(closed_form_lookup("nu-4", 3.0, 2.0).exponent == doctest::Approx(1.5));
  CHECK(closed_form_lookup("nu-5", 1.0, 1.0).exponent == doctest::Approx(0.5));
  CHECK(closed_form_lookup("nu-6", 1.0, 3.0).log_power == doctest::Approx(-2.0));
  CHECK(closed_form_lookup("pi-1", 2.0, 4.0).exponent == doctest::Approx(6.0));
  CHECK(closed_form_lookup("pi-2", 0.5, 2.0).exponent == doctest::Approx(2.0 / 3.0));
  CHECK(closed_form_lookup("pi-3", 2.0, 2.0).log_power == doctest::Approx(1.0));
  CHECK(closed_form_lookup("pi-4", 3.0, 2.0).exponent == doctest::Approx(1.0));
  CHECK(closed_form_lookup("pi-4", 4.0, 2.0).exponent == doctest::Approx(1.2));
  CHECK(closed_form_lookup("pi-5", 2.0, 1.0).exponent == doctest::Approx(2.0 / 3.0));
  CHECK(closed_form_lookup("pi-6", 2.0, 2.0).log_power == doctest::Approx(-1.0));
  CHECK_THROWS_AS(closed_form_lookup("nu-1", 4.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_lookup("pi-1", 2.0, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_lookup("bogus", 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("domination search") {
  auto w = dominates(YoungFn::power(2.0), YoungFn::power(3.0));
  CHECK(w.holds);
  CHECK(w.C1 == doctest::Approx(1.0));
  CHECK(w.C2 == doctest::Approx(1.0));
  CHECK(w.x0 == doctest::Approx(1.0));
  auto w2 = dominates(YoungFn::power(3.0), YoungFn::power(2.0));
  CHECK(!w2.holds);
  CHECK(w2.max_violation > 1.0);
  // scaling is absorbed by the dyadic constants
  auto w3 = dominates(YoungFn::power(2.0).scaled(100.0), YoungFn::power(2.0));
  CHECK(w3.holds);
  CHECK(w3.C1 >= 100.0);
}

TEST_CASE("assumption normalization") {
  auto ok = normalize_assumption_A(YoungFn::power(2.0));
  CHECK(!ok.changed);

  auto rs = normalize_assumption_A(YoungFn::power(2.0).scaled(0.25));
  CHECK(rs.changed);
  CHECK(rs.rescaled);
  CHECK(!rs.patched);
  CHECK(rs.fn(1.0) == doctest::Approx(1.0));
  CHECK_NOTHROW(rho_of(YoungFn::power(2.0), rs.fn));

  auto lp = normalize_assumption_A(YoungFn::linear());
  CHECK(lp.changed);
  CHECK(lp.patched);
  CHECK(lp.fn(1.0) >= 1.0);
  CHECK(lp.fn(1e-6) / 1e-6 <= 0.5);
  // equivalent to the original in both directions
  REQUIRE(lp.witness_fwd.has_value());
  REQUIRE(lp.witness_rev.has_value());
  CHECK(lp.witness_fwd->holds);
  CHECK(lp.witness_rev->holds);
  // the normalized function is accepted downstream
  CHECK_NOTHROW(rho_of(YoungFn::power(2.0), lp.fn));
  // midpoint convexity of the patched function
  for (double a = 0.1; a < 100.0; a *= 1.8) {
    double b = a * 2.9;
    CHECK(lp.fn(0.5 * (a + b)) <= 0.5 * (lp.fn(a) + lp.fn(b)) + 1e-9 * lp.fn(b));
  }
}

TEST_CASE("tabulate export roundtrip") {
  auto rho = rho_of(YoungFn::power(2.0), YoungFn::power(4.0));
  auto knots = rho.tabulate(0.1, 100.0, 256);
  REQUIRE(knots.size() == 256);
  auto tab = GenYoungFn::tabulated(knots);
  for (double x : {0.37, 3.14, 42.0}) {
    CHECK(tab(x).require_finite() ==
          doctest::Approx(rho(x).require_finite()).epsilon(0.01));
  }
}

TEST_CASE("fit_slope recovers a line") {
  std::vector<double> xs, ys;
  for (int i = 0; i < 20; ++i) {
    xs.push_back(i * 0.5);
    ys.push_back(3.0 - 1.7 * (i * 0.5));
  }
  CHECK(fit_slope(xs, ys) == doctest::Approx(-1.7).epsilon(1e-12));
  CHECK_THROWS_AS(fit_slope({1.0}, {2.0}), std::invalid_argument);
}
