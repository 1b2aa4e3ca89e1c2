#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "powconc/convolve.hpp"
#include "powconc/errors.hpp"
#include "powconc/rng.hpp"

using namespace powconc;

namespace {

QuadratureSpec on(ConvexBody support) { return QuadratureSpec::defaults_for(std::move(support)); }

}  // namespace

TEST_CASE("closed-form oracles") {
  // mpmath: erf(1/2), W and P of chi_[-1,1] at (0.3, 0.5)
  CHECK(oracle_W_interval(-1, 1, 0.0, 1.0) == doctest::Approx(0.520499877813046537682746653892).epsilon(1e-14));
  CHECK(oracle_W_interval(-1, 1, 0.3, 0.5) == doctest::Approx(0.661235863191316652098639747525).epsilon(1e-14));
  CHECK(oracle_P_interval(-1, 1, 0.3, 0.5) == doctest::Approx(0.685693395458910003505621666293).epsilon(1e-14));
  CHECK(oracle_P_interval(-1, 1, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(oracle_W_interval(1, -1, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(oracle_P_interval(-1, 1, 0.0, 0.0), DomainError);
}

TEST_CASE("oracle limits and symmetry") {
  // t -> 0 recovers the indicator away from the endpoints, 1/2 at them
  CHECK(oracle_W_interval(-1, 1, 0.2, 1e-8) == doctest::Approx(1.0));
  CHECK(oracle_W_interval(-1, 1, 1.5, 1e-8) == doctest::Approx(0.0));
  CHECK(oracle_W_interval(-1, 1, 1.0, 1e-10) == doctest::Approx(0.5));
  CHECK(oracle_P_interval(-1, 1, 0.2, 1e-9) == doctest::Approx(1.0));
  CHECK(oracle_P_interval(-1, 1, -1.0, 1e-9) == doctest::Approx(0.5));
  for (double x : {0.1, 0.7, 2.5}) {
    for (double t : {0.05, 1.0, 9.0}) {
      CHECK(oracle_W_interval(-1, 1, x, t) == doctest::Approx(oracle_W_interval(-1, 1, -x, t)).epsilon(1e-14));
      CHECK(oracle_P_interval(-1, 1, x, t) == doctest::Approx(oracle_P_interval(-1, 1, -x, t)).epsilon(1e-14));
    }
  }
}

TEST_CASE("quadrature agrees with the oracles within est_error") {
  const auto chi = make_indicator(ConvexBody::interval(-1, 1));
  const auto quad = on(ConvexBody::interval(-1, 1));
  CounterRng rng(31, 0);
  for (int i = 0; i < 50; ++i) {
    const double x = rng.uniform(-3, 3), t = rng.uniform(0.1, 4);
    const Vec xv{x};
    const auto w = gauss_weierstrass_integral(*chi, xv, t, quad);
    const auto p = poisson_integral(*chi, xv, t, quad);
    CHECK(std::abs(w.value - oracle_W_interval(-1, 1, x, t)) <= std::max(w.est_error, 1e-6));
    CHECK(std::abs(p.value - oracle_P_interval(-1, 1, x, t)) <= std::max(p.est_error, 1e-6));
  }
  const auto w = gauss_weierstrass_integral(*chi, Vec{0.3}, 0.5, quad);
  CHECK(std::abs(w.value - 0.661235863191316652098639747525) <= w.est_error);
  CHECK(w.est_error < 1e-5);
}

TEST_CASE("zero data and bounds") {
  const auto zero = make_constant(1, 0.0);
  const auto quad = on(ConvexBody::interval(-1, 1));
  CHECK(poisson_integral(*zero, Vec{0.2}, 1.0, quad).value == 0.0);
  CHECK(gauss_weierstrass_integral(*zero, Vec{0.2}, 1.0, quad).value == 0.0);

  const auto tent = make_tent(ConvexBody::interval(-1, 1), 2.0);
  CounterRng rng(32, 0);
  for (int i = 0; i < 40; ++i) {
    const double x = rng.uniform(-3, 3), t = rng.uniform(0.05, 5);
    const double v = poisson_integral(*tent, Vec{x}, t, quad).value;
    CHECK(v >= 0.0);
    CHECK(v <= 2.0 + 1e-9);
  }
}

TEST_CASE("box data in two dimensions factorizes") {
  const auto box = ConvexBody::box({-1.0, 0.0}, {1.0, 0.5});
  const auto chi = make_indicator(box);
  const auto quad = on(box);
  for (const auto& [x0, x1, t] : {std::tuple{0.0, 0.0, 0.5}, std::tuple{0.7, -0.4, 1.3}, std::tuple{-1.5, 1.0, 0.2}}) {
    const auto r = gauss_weierstrass_integral(*chi, Vec{x0, x1}, t, quad);
    const double expect = oracle_W_interval(-1, 1, x0, t) * oracle_W_interval(0, 0.5, x1, t);
    CHECK(std::abs(r.value - expect) <= std::max(r.est_error, 1e-6));
  }
}

TEST_CASE("total mass is preserved") {
  // integral of W g over x equals the integral of g, here 1 for the tent on [-1,1]
  const auto tent = make_tent(ConvexBody::interval(-1, 1));
  const auto quad = on(ConvexBody::interval(-1, 1));
  for (double t : {0.1, 0.5}) {
    double sum = 0.0;
    const int m = 4000;
    const double lo = -12, hi = 12, h = (hi - lo) / m;
    for (int i = 0; i <= m; ++i) {
      const double w = (i == 0 || i == m) ? 0.5 : 1.0;
      sum += w * gauss_weierstrass_integral(*tent, Vec{lo + i * h}, t, quad).value;
    }
    CHECK(std::abs(sum * h - 1.0) < 1e-4);
  }
}

TEST_CASE("kernel mass is one") {
  for (int n : {1, 2}) {
    for (double t : {0.1, 1.0, 5.0}) {
      CHECK(std::abs(kernel_mass("gw", n, t) - 1.0) < 1e-6);
      CHECK(std::abs(kernel_mass("poisson", n, t) - 1.0) < 1e-6);
    }
  }
  CHECK_THROWS_AS(kernel_mass("heat", 1, 1.0), InputError);
}

TEST_CASE("translation equivariance") {
  const auto tent = make_tent(ConvexBody::interval(-1, 1));
  const double s = 0.8;
  const auto moved = make_translated(tent, Vec{s});
  for (double x : {-1.2, 0.1, 2.0}) {
    for (double t : {0.3, 2.0}) {
      const auto a = poisson_integral(*tent, Vec{x}, t, on(ConvexBody::interval(-1, 1)));
      const auto b = poisson_integral(*moved, Vec{x + s}, t, on(ConvexBody::interval(-1 + s, 1 + s)));
      CHECK(b.value == doctest::Approx(a.value).epsilon(1e-9));
    }
  }
}

TEST_CASE("P decreases in t far from the support") {
  const auto chi = make_indicator(ConvexBody::interval(-1, 1));
  const auto quad = on(ConvexBody::interval(-1, 1));
  double prev = HUGE_VAL;
  for (double t = 2.0; t < 40.0; t *= 1.5) {
    const double v = poisson_integral(*chi, Vec{0.0}, t, quad).value;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("error budget and configuration errors") {
  const auto chi = make_indicator(ConvexBody::interval(-1, 1));
  auto quad = on(ConvexBody::interval(-1, 1));
  quad.points_per_axis = 8;
  quad.error_budget = 1e-14;
  CHECK_THROWS_AS(gauss_weierstrass_integral(*chi, Vec{1.0}, 1e-3, quad), ResolutionError);
  quad.error_budget.reset();
  quad.points_per_axis = 0;
  CHECK_THROWS_AS(quad.validate(), InputError);
}

TEST_CASE("ConvolutionField matches the oracle field") {
  QuadratureSpec quad = on(ConvexBody::interval(-1, 1));
  const auto field = make_convolution(make_poisson_kernel(1), make_indicator(ConvexBody::interval(-1, 1)), quad);
  const auto oracle = make_p_interval(-1, 1);
  for (double x : {-2.0, 0.0, 0.9}) {
    const auto e = field->eval_with_noise(Vec{x}, 0.7);
    CHECK(std::abs(e.value - oracle->eval(Vec{x}, 0.7)) <= std::max(e.noise, 1e-6));
  }
}
