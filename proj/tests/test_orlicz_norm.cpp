#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "orlicz/orlicz_norm.hpp"

using namespace orlicz;

TEST_CASE("atomic law validation") {
  CHECK_THROWS_AS(AtomicDist{}.validate(), std::invalid_argument);
  CHECK_THROWS_AS((AtomicDist{{{1.0, 0.5}, {2.0, 0.6}}}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS((AtomicDist{{{1.0, -0.5}, {2.0, 1.5}}}).validate(),
                  std::invalid_argument);
  CHECK_NOTHROW((AtomicDist{{{1.0, 0.5}, {2.0, 0.5}}}).validate());
}

TEST_CASE("norm of constants and simple two-atom laws") {
  auto p2 = YoungFn::power(2.0);
  AtomicDist c7{{{7.0, 1.0}}};
  auto r = orlicz_norm(c7, p2);
  CHECK(r.status == NormStatus::finite);
  CHECK(r.value.require_finite() == doctest::Approx(7.0).epsilon(1e-10));
  CHECK(r.residual == doctest::Approx(1.0).epsilon(1e-6));

  // atoms {(0, 1/2), (a, 1/2)} under Power(2): a^2/(2C^2) = 1 => C = a/sqrt(2)
  AtomicDist half{{{0.0, 0.5}, {3.0, 0.5}}};
  auto r2 = orlicz_norm(half, p2);
  CHECK(r2.value.require_finite() == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-10));

  AtomicDist zero{{{0.0, 1.0}}};
  auto r3 = orlicz_norm(zero, p2);
  CHECK(r3.status == NormStatus::finite);
  CHECK(r3.value.require_finite() == 0.0);
}

TEST_CASE("norm from samples, duplicates merged") {
  auto p2 = YoungFn::power(2.0);
  std::vector<double> s{1.0, 1.0, -1.0, 1.0};  // |X| = 1 a.s.
  CHECK(orlicz_norm(s, p2).value.require_finite() == doctest::Approx(1.0));
  CHECK_THROWS_AS(orlicz_norm(std::vector<double>{}, p2), std::invalid_argument);
  // E(X^2)/C^2 = 1 at C = rms
  std::vector<double> s2{1.0, 3.0};
  CHECK(orlicz_norm(s2, p2).value.require_finite() ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-10));
}

TEST_CASE("psi_alpha quasi-norm closed forms") {
  AtomicDist c{{{2.0, 1.0}}};
  CHECK(psi_alpha_norm(c, 1.0).value.require_finite() ==
        doctest::Approx(2.0 / std::log(2.0)).epsilon(1e-9));
  CHECK(psi_alpha_norm(c, 2.0).value.require_finite() ==
        doctest::Approx(2.0 / std::sqrt(std::log(2.0))).epsilon(1e-9));
  CHECK_THROWS_AS(psi_alpha_norm(c, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(psi_alpha_norm(std::vector<double>{}, 1.0),
                  std::invalid_argument);
  // with a zero atom: 0.5 e^{a/C} + 0.5 = 2 => C = a / log 3
  AtomicDist mix{{{0.0, 0.5}, {1.0, 0.5}}};
  CHECK(psi_alpha_norm(mix, 1.0).value.require_finite() ==
        doctest::Approx(1.0 / std::log(3.0)).epsilon(1e-9));
  CHECK(psi_alpha_norm(mix, 1.0).residual == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("function norm delegates to the pushforward law") {
  auto p2 = YoungFn::power(2.0);
  AtomicDist ones{{{1.0, 0.3}, {1.0, 0.7}}};
  CHECK(function_norm(ones, p2).value.require_finite() == doctest::Approx(1.0));
  AtomicDist two{{{1.0, 0.5}, {3.0, 0.5}}};
  CHECK(function_norm(two, p2).value.require_finite() ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-10));
  AtomicDist z{{{0.0, 1.0}}};
  CHECK(function_norm(z, p2).value.require_finite() == 0.0);
}

TEST_CASE("homogeneity") {
  auto phi = YoungFn::exp_power(1.0);
  AtomicDist base{{{0.5, 0.25}, {2.0, 0.5}, {5.0, 0.25}}};
  double n1 = orlicz_norm(base, phi).value.require_finite();
  for (double c : {0.1, 1.0, 7.0}) {
    AtomicDist scaled = base;
    for (auto& a : scaled.atoms) a.value *= c;
    double nc = orlicz_norm(scaled, phi).value.require_finite();
    CHECK(nc == doctest::Approx(c * n1).epsilon(1e-9));
  }
}

TEST_CASE("triangle inequality on a common finite space") {
  auto phi = YoungFn::power(3.0);
  // joint space with 4 outcomes; X and Y are coordinates
  std::vector<double> probs{0.1, 0.2, 0.3, 0.4};
  std::vector<double> X{1.0, -2.0, 0.5, 3.0};
  std::vector<double> Y{0.7, 1.0, -4.0, 2.0};
  auto law = [&](const std::vector<double>& v) {
    AtomicDist d;
    for (size_t i = 0; i < v.size(); ++i) d.atoms.push_back({v[i], probs[i]});
    return d;
  };
  std::vector<double> XY(4);
  for (int i = 0; i < 4; ++i) XY[i] = X[i] + Y[i];
  double nx = orlicz_norm(law(X), phi).value.require_finite();
  double ny = orlicz_norm(law(Y), phi).value.require_finite();
  double nxy = orlicz_norm(law(XY), phi).value.require_finite();
  CHECK(nxy <= nx + ny + 1e-9);
}

TEST_CASE("monotonicity in phi") {
  AtomicDist d{{{0.5, 0.5}, {4.0, 0.5}}};
  // x^2 <= x^3 only for x >= 1; use pointwise-ordered pairs
  auto lo = YoungFn::power(2.0);
  auto hi = YoungFn::power(2.0).scaled(3.0);  // 3x^2 >= x^2 pointwise
  double nlo = orlicz_norm(d, lo).value.require_finite();
  double nhi = orlicz_norm(d, hi).value.require_finite();
  CHECK(nlo <= nhi + 1e-9);
  auto e1 = YoungFn::exp_power(1.0);  // e^x - 1 >= x... >= x^2/2? use vs linear
  double nlin = orlicz_norm(d, YoungFn::linear()).value.require_finite();
  double nexp = orlicz_norm(d, e1).value.require_finite();
  CHECK(nlin <= nexp + 1e-9);  // x <= e^x - 1 pointwise
}

TEST_CASE("norm under a finite-ceiling function is an essential sup") {
  auto linf = conjugate(YoungFn::linear());  // 0 on [0,1], infinite above
  AtomicDist d{{{1.0, 0.5}, {6.0, 0.5}}};
  auto r = orlicz_norm(d, linf);
  CHECK(r.status == NormStatus::finite);
  CHECK(r.value.require_finite() == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(r.residual <= 1.0);
}

TEST_CASE("series norm certifies divergence") {
  // atoms value=2^n with prob ~ c 2^{-n} under phi(x)=x^2:
  // E phi(X/C) ~ sum 2^n / C^2 diverges for every C
  SeriesNormInput in;
  in.term = [](std::size_t i) {
    double p = std::pow(2.0, -(double)(i + 1));
    return Atom{std::pow(2.0, (double)(i + 1)), p};
  };
  auto phi = GenYoungFn::from_young(YoungFn::power(2.0));
  auto r = orlicz_norm_series(in, phi);
  CHECK(r.status == NormStatus::infinite_certified);
  CHECK(!r.value.finite());
  CHECK(r.certificate.find("every C") != std::string::npos);
}

TEST_CASE("series norm flags an undecidable budget") {
  // summable series: E phi(X/C) converges, so large C can never be certified
  SeriesNormInput in;
  in.budget = 2000;
  in.term = [](std::size_t i) {
    double p = std::pow(2.0, -(double)(i + 1));
    return Atom{1.0, p};
  };
  auto phi = GenYoungFn::from_young(YoungFn::power(2.0));
  auto r = orlicz_norm_series(in, phi);
  CHECK(r.status == NormStatus::budget_exhausted);
  CHECK(r.certificate.find("budget") != std::string::npos);
  // the head-law lower bound is close to the true norm 1
  CHECK(r.value.require_finite() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("residual invariant for continuous laws") {
  auto phi = YoungFn::exp_power(1.0);
  AtomicDist d{{{0.3, 0.2}, {1.1, 0.5}, {2.9, 0.3}}};
  auto r = orlicz_norm(d, phi);
  CHECK(r.residual >= 1.0 - 1e-9);
  CHECK(r.residual <= 1.0 + 1e-6);
  auto q = psi_alpha_norm(d, 1.0);
  CHECK(q.residual >= 2.0 - 1e-9);
  CHECK(q.residual <= 2.0 + 1e-6);
}
