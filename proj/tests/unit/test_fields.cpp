#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "powconc/errors.hpp"
#include "powconc/fields.hpp"
#include "powconc/rng.hpp"

using namespace powconc;
using std::numbers::pi;

TEST_CASE("sphere_area: Gamma formula against tabulated values") {
  CHECK(sphere_area(1) == doctest::Approx(2 * pi).epsilon(1e-15));
  CHECK(sphere_area(2) == doctest::Approx(4 * pi).epsilon(1e-15));
  CHECK(sphere_area(3) == doctest::Approx(2 * pi * pi).epsilon(1e-15));
  for (int n = 1; n <= 6; ++n) {
    CHECK(sphere_area(n) ==
          doctest::Approx(2 * std::pow(pi, (n + 1) / 2.0) / std::tgamma((n + 1) / 2.0)).epsilon(1e-14));
  }
}

TEST_CASE("kernel evaluation examples") {
  const auto gw = make_gauss_weierstrass(1);
  CHECK(gw->eval(Vec{0.0}, 1.0 / (4 * pi)) == doctest::Approx(1.0).epsilon(1e-15));
  const auto pk = make_poisson_kernel(1);
  CHECK(pk->eval(Vec{0.0}, 1.0) == doctest::Approx(1.0 / pi).epsilon(1e-15));
  const auto ind = make_indicator(ConvexBody::interval(-1.0, 1.0));
  CHECK(ind->eval(Vec{2.0}) == 0.0);
  CHECK(ind->eval(Vec{0.3}) == 1.0);
  CHECK(make_indicator(ConvexBody::interval(-1.0, 1.0), 2.5)->eval(Vec{0.0}) == 2.5);
  CHECK_THROWS_AS(gw->eval(Vec{0.0}, 0.0), DomainError);
  CHECK_THROWS_AS(gw->eval(Vec{0.0}, -1.0), DomainError);
  CHECK_THROWS_AS(gw->eval(Vec{0.0, 1.0}, 1.0), DomainError);
  // n = 2 values
  const auto gw2 = make_gauss_weierstrass(2);
  CHECK(gw2->eval(Vec{1.0, 1.0}, 0.5) == doctest::Approx(std::exp(-1.0) / (2 * pi)).epsilon(1e-14));
  const auto pk2 = make_poisson_kernel(2);
  CHECK(pk2->eval(Vec{0.0, 0.0}, 2.0) == doctest::Approx(4.0 / (4 * pi) / 8.0).epsilon(1e-14));
}

TEST_CASE("declared claims") {
  const auto gw = make_gauss_weierstrass(2);
  REQUIRE(gw->claim().p);
  CHECK(gw->claim().p->value() == doctest::Approx(-0.5));
  CHECK(*gw->claim().alpha == 0.5);
  CHECK(gw->claim().almost_strict);
  const auto pk = make_poisson_kernel(1);
  CHECK(pk->claim().p->value() == doctest::Approx(-1.0));
  CHECK(*pk->claim().alpha == 1.0);
  CHECK(make_indicator(ConvexBody::interval(0.0, 1.0))->claim().p->is_plus_inf());
  CHECK(make_poisson_slice(1, 1.0)->claim().p->value() == doctest::Approx(-0.5));
  CHECK(make_poisson_slice(1, 1.0)->claim().strict);
  const auto ke = make_kappa_exp(1, -0.5, 2.0, 1.0);
  CHECK(*ke->claim().alpha == doctest::Approx(0.5));
  CHECK(ke->claim().p->value() == doctest::Approx(-1.0));
  const auto kp = make_kappa_power(1, 1.0, 2.0, -2.0);
  CHECK(*kp->claim().alpha == 1.0);
  CHECK(kp->claim().p->value() == doctest::Approx(1.0 / (1.0 - 2.0)));
}

TEST_CASE("kappa parameter validation") {
  CHECK_THROWS_AS(make_kappa_exp(1, 0.5, 2.0, 1.0), DomainError);  // c/a > 0
  CHECK_THROWS_AS(make_kappa_exp(1, -0.5, 0.5, 1.0), DomainError);  // b < 1
  CHECK_THROWS_AS(make_kappa_power(1, -1.0, 2.0, -2.0), DomainError);  // a < 0
  CHECK_THROWS_AS(make_kappa_power(1, 0.0, 1.0, -2.0), DomainError);  // (a,b) = (0,1)
  CHECK_THROWS_AS(make_kappa_power(1, 1.0, 2.0, -1.0), DomainError);  // c >= -a
  CHECK_THROWS_AS(make_kappa_power(1, 1.0, 2.0, 0.5), DomainError);  // c >= 0
  CHECK_NOTHROW(make_kappa_power(2, 0.0, 2.0, -0.5));
}

TEST_CASE("property: kappa families reproduce the kernels") {
  CounterRng rng(21, 0);
  const auto gw = make_gauss_weierstrass(1);
  const auto pk = make_poisson_kernel(1);
  const auto ke = make_kappa_exp(1, -0.5, 2.0, 1.0);
  const auto kp = make_kappa_power(1, 1.0, 2.0, -2.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec x{rng.uniform(-5, 5)};
    const double t = std::exp(rng.uniform(-3, 2));
    CHECK(gw->eval(x, t) == doctest::Approx(ke->eval(x, 4 * t) / std::sqrt(pi)).epsilon(1e-12));
    CHECK(pk->eval(x, t) == doctest::Approx(kp->eval(x, t) / pi).epsilon(1e-12));
  }
  // general n: GW = (4 pi)^(-n/2) kappa_exp(-n/2, 2, 1)(|x|, t) with r scaled by 1/2
  const auto gw3 = make_gauss_weierstrass(3);
  const auto ke3 = make_kappa_exp(3, -1.5, 2.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Vec x{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double t = rng.uniform(0.1, 3.0);
    CHECK(gw3->eval(x, t) == doctest::Approx(std::pow(pi, -1.5) * ke3->eval(x, 4 * t)).epsilon(1e-12));
  }
}

TEST_CASE("lift examples") {
  const auto one = make_constant(2, 1.0);
  const auto l1 = lift(one, ExtExponent::finite(1.0), 1.0);
  CHECK(l1->eval(Vec{0.3, -5.0}, 2.5) == doctest::Approx(2.5));
  const auto tent = make_tent(ConvexBody::interval(-1.0, 1.0));
  CHECK(lift(tent, ExtExponent::finite(1.0), 1.0)->eval(Vec{0.5}, 2.0) == doctest::Approx(1.5));
  const auto gauss = radialize(1, RadialProfile::exp_power(1.0, 2.0));
  const auto l0 = lift(gauss, ExtExponent::finite(0.0), 1.0);
  CounterRng rng(22, 0);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(-3, 3), t = rng.uniform(0.2, 4.0);
    CHECK(l0->eval(Vec{x}, t) == doctest::Approx(std::exp(-x * x / t)).epsilon(1e-13));
  }
  // outside the hat region the lift is 0
  CHECK(lift(tent, ExtExponent::finite(0.0), 1.0)->eval(Vec{3.0}, 2.0) == 0.0);
  CHECK(lift(tent, ExtExponent::finite(1.0), 1.0)->eval(Vec{3.0}, 2.0) == 0.0);
  CHECK_THROWS_AS(lift(tent, ExtExponent::plus_inf(), 1.0), DomainError);
  CHECK_THROWS_AS(lift(tent, ExtExponent::finite(1.0), 0.0), DomainError);
}

TEST_CASE("property: lift reproduces the kappa scaling law") {
  // kappa(r, t) = t^(alpha/p) kappa(r / t^alpha, 1)
  CounterRng rng(23, 0);
  for (const auto& k : {make_kappa_exp(1, -0.5, 2.0, 1.0), make_kappa_exp(2, -1.0, 1.5, 0.75),
                        make_kappa_power(1, 1.0, 2.0, -2.0), make_kappa_power(2, 0.5, 3.0, -2.0)}) {
    const auto& c = k->claim();
    const auto lifted = lift(make_slice(k, 1.0), *c.p, *c.alpha);
    for (int i = 0; i < 200; ++i) {
      Vec x(static_cast<std::size_t>(k->dim()));
      for (auto& xi : x) xi = rng.uniform(-3, 3);
      const double t = std::exp(rng.uniform(-2, 2));
      CHECK(lifted->eval(x, t) == doctest::Approx(k->eval(x, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("conjugation examples") {
  const auto phi1 = std::make_shared<FunctionField>(
      1, 0.0, kInf, [](std::span<const double>, double t) { return t; }, "time");
  const auto c = conjugate0(phi1);
  CHECK(c->eval(Vec{0.7}, std::exp(2.0)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(c->eval(Vec{0.7}, 1.0), DomainError);
  CHECK_THROWS_AS(c->eval(Vec{0.7}, 0.5), DomainError);
  // round trip returns the original wrapper
  CHECK(conjugate0_inverse(c) == phi1);
  const auto gw = make_gauss_weierstrass(1);
  const auto back = conjugate0(conjugate0_inverse(gw));
  CHECK(back == gw);
  const auto inv = conjugate0_inverse(gw);
  CounterRng rng(24, 0);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(-2, 2), t = rng.uniform(1.01, 5.0);
    CHECK(inv->eval(Vec{x}, std::log(t)) == doctest::Approx(gw->eval(Vec{x}, t)).epsilon(1e-14));
  }
  // kappa_0(r, t) = kappa(r, log t)
  const auto k = make_kappa_power(1, 1.0, 2.0, -2.0);
  const auto k0 = conjugate0(k);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(-2, 2), t = rng.uniform(1.01, 30.0);
    CHECK(k0->eval(Vec{x}, t) == k->eval(Vec{x}, std::log(t)));
  }
}

TEST_CASE("shifted examples") {
  const auto gw = make_gauss_weierstrass(2);
  const auto big = shifted(gw);
  CHECK(big->dim() == 4);
  CounterRng rng(25, 0);
  for (int i = 0; i < 100; ++i) {
    const Vec x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const Vec y{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const Vec zero{0.0, 0.0};
    const Vec minus_y{-y[0], -y[1]};
    const double t = rng.uniform(0.1, 3.0);
    CHECK(big->eval3(x, x, t) == doctest::Approx(1.0 / (4 * pi * t)).epsilon(1e-14));
    CHECK(big->eval3(x, zero, t) == gw->eval(x, t));
    CHECK(big->eval3(zero, y, t) == gw->eval(minus_y, t));
    CHECK(big->eval(Vec{x[0], x[1], y[0], y[1]}, t) == big->eval3(x, y, t));
  }
}

TEST_CASE("radial examples") {
  const auto f = radialize(2, RadialProfile::exp_power(1.0, 1.0));
  CHECK(f->eval(Vec{0.0, 2.0}) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  const auto c = radialize(3, RadialProfile::constant(0.7));
  CHECK(c->eval(Vec{5.0, -1.0, 2.0}) == 0.7);
  CHECK(c->eval(Vec{0.0, 0.0, 0.0}) == 0.7);
  const auto p = radialize(1, RadialProfile::power(1.5));
  CHECK(p->eval(Vec{1.0}) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-15));
  CHECK(RadialProfile::exp_power(1.0, 2.0).strictly_decreasing);
  CHECK_FALSE(RadialProfile::constant(1.0).strictly_decreasing);
  CHECK_THROWS_AS(RadialProfile::exp_power(1.0, 0.5), DomainError);
  RadialProfile bad;
  bad.k = [](double r) { return r; };
  bad.strictly_decreasing = true;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("scalar families: tent, product, translated, grid") {
  const auto tent = make_tent(ConvexBody::box({-1.0, -1.0}, {1.0, 1.0}), 2.0);
  CHECK(tent->eval(Vec{0.0, 0.0}) == doctest::Approx(2.0));
  CHECK(tent->eval(Vec{0.5, 0.0}) == doctest::Approx(1.0));
  CHECK(tent->eval(Vec{2.0, 0.0}) == 0.0);

  const auto trunc = make_product({make_gaussian(1, 0.5), make_indicator(ConvexBody::interval(-1.0, 2.0))});
  REQUIRE(trunc->support());
  CHECK(trunc->support()->bounding_box().first[0] == -1.0);
  CHECK(trunc->eval(Vec{0.5}) == doctest::Approx(make_gaussian(1, 0.5)->eval(Vec{0.5})));
  CHECK(trunc->eval(Vec{-1.5}) == 0.0);
  CHECK(trunc->sup_bound() == doctest::Approx(1.0 / std::sqrt(2 * pi)));

  const auto shifted_tent = make_translated(make_tent(ConvexBody::interval(-1.0, 1.0)), Vec{3.0});
  CHECK(shifted_tent->eval(Vec{3.5}) == doctest::Approx(0.5));
  CHECK(shifted_tent->support()->bounding_box().second[0] == doctest::Approx(4.0));

  const CustomGridField grid({0.0, 0.0}, {1.0, 2.0}, {2, 3}, {0, 1, 2, 3, 4, 5});
  CHECK(grid.eval(Vec{0.0, 0.0}) == 0.0);
  CHECK(grid.eval(Vec{0.0, 2.0}) == doctest::Approx(2.0));
  CHECK(grid.eval(Vec{1.0, 1.0}) == doctest::Approx(4.0));
  CHECK(grid.eval(Vec{0.5, 0.5}) == doctest::Approx(2.0));
  CHECK(grid.eval(Vec{1.5, 0.5}) == 0.0);
  CHECK_THROWS_AS(CustomGridField({0.0}, {1.0}, {3}, {0, -1, 0}), DomainError);
}

TEST_CASE("property: fields are nonnegative and vanish off their support") {
  CounterRng rng(26, 0);
  const std::vector<ScalarFieldPtr> fields = {
      make_indicator(ConvexBody::ball({0.0, 0.0}, 1.0)), make_tent(ConvexBody::interval(-1.0, 2.0)),
      make_gaussian(2, 0.3), make_poisson_slice(1, 0.5), radialize(2, RadialProfile::power(2.0)),
      power_kappa_slice(1, 1.0, 2.0, -2.0, 1.0),
      make_product({make_gaussian(2, 1.0), make_indicator(ConvexBody::box({-1.0, -1.0}, {1.0, 1.0}))})};
  for (const auto& f : fields) {
    for (int i = 0; i < 500; ++i) {
      Vec x(static_cast<std::size_t>(f->dim()));
      for (auto& xi : x) xi = rng.uniform(-4, 4);
      const double v = f->eval(x);
      CHECK(v >= 0.0);
      CHECK(v <= f->sup_bound() * (1 + 1e-12));
      if (const auto s = f->support(); s && !s->contains(x)) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("rescaled") {
  const auto gw = make_gauss_weierstrass(1);
  const auto r = rescaled(gw, 2.0, 3.0, 0.5);
  CHECK(r->eval(Vec{0.4}, 2.0) == doctest::Approx(2.0 * gw->eval(Vec{1.2}, 1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(rescaled(gw, 0.0, 1.0, 1.0), DomainError);
}
