#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "powconc/errors.hpp"
#include "powconc/extmeans.hpp"
#include "powconc/rng.hpp"

using namespace powconc;

namespace {

const ExtExponent kPlus = ExtExponent::plus_inf();
const ExtExponent kMinus = ExtExponent::minus_inf();
ExtExponent fin(double r) { return ExtExponent::finite(r); }

double ulp_slack(double v, int k) { return k * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v)); }

// Random exponent from a mix of special and generic values.
ExtExponent random_exponent(CounterRng& rng) {
  const double u = rng.uniform();
  if (u < 0.05) return kPlus;
  if (u < 0.10) return kMinus;
  if (u < 0.15) return fin(0.0);
  if (u < 0.20) return fin(rng.uniform(-1e-9, 1e-9));
  return fin(rng.uniform(-6.0, 6.0));
}

}  // namespace

TEST_CASE("ExtExponent tags and parsing") {
  CHECK(ExtExponent::parse("inf") == kPlus);
  CHECK(ExtExponent::parse("+inf") == kPlus);
  CHECK(ExtExponent::parse("-inf") == kMinus);
  CHECK(ExtExponent::parse("-0.5").value() == -0.5);
  CHECK(ExtExponent::from_double(std::numeric_limits<double>::infinity()) == kPlus);
  CHECK_THROWS_AS(ExtExponent::finite(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(ExtExponent::finite(std::nan("")), DomainError);
  CHECK_THROWS_AS(ExtExponent::parse("abc"), InputError);
  CHECK_THROWS_AS(kPlus.value(), DomainError);
  CHECK(kMinus < fin(-1e300));
  CHECK(fin(1e300) < kPlus);
  CHECK(kPlus.to_string() == "inf");
  CHECK(kMinus.to_string() == "-inf");
  CHECK(fin(0.25).to_string() == "0.25");
  for (const auto& p : {kPlus, kMinus, fin(-0.5), fin(3.0)}) CHECK(ExtExponent::parse(p.to_string()) == p);
}

TEST_CASE("mean_p examples") {
  CHECK(mean_p(fin(1.0), 5.0, 0.0, 0.3) == 0.0);
  CHECK(mean_p(kPlus, 5.0, 0.0, 0.3) == 0.0);
  CHECK(mean_p(kMinus, 0.0, 5.0, 0.3) == 0.0);
  CHECK(mean_p(fin(0.0), 1.0, 4.0, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(mean_p(kPlus, 2.0, 7.0, 0.5) == 7.0);
  CHECK(mean_p(kMinus, 2.0, 7.0, 0.5) == 2.0);
  CHECK(mean_p(fin(-1.0), 1.0, 2.0, 0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  // mpmath references
  CHECK(mean_p(fin(2.0), 1.0, 2.0, 0.5) == doctest::Approx(1.58113883008418966599944677222).epsilon(1e-15));
  CHECK(mean_p(fin(-0.5), 1.0, 9.0, 0.3) == doctest::Approx(1.5625).epsilon(1e-14));
  CHECK(mean_p(fin(0.3), 2.0, 5.0, 0.75) == doctest::Approx(4.06690870059935908501855474578).epsilon(1e-14));
}

TEST_CASE("mean_p domain errors") {
  CHECK_THROWS_AS(mean_p(fin(1.0), 1.0, 2.0, 2.0), DomainError);
  CHECK_THROWS_AS(mean_p(fin(1.0), 1.0, 2.0, -0.1), DomainError);
  CHECK_THROWS_AS(mean_p(fin(1.0), -1.0, 2.0, 0.5), DomainError);
  CHECK_THROWS_AS(mean_p(fin(0.0), 1.0, std::nan(""), 0.5), DomainError);
}

TEST_CASE("ell_exponent examples and conventions") {
  CHECK(ell_exponent(fin(2), fin(2)) == fin(1));
  CHECK(ell_exponent(fin(0), fin(0)) == fin(0));
  CHECK(ell_exponent(fin(3), fin(-3)) == kMinus);
  CHECK(ell_exponent(fin(-0.5), kPlus) == fin(-0.5));
  CHECK(ell_exponent(kPlus, fin(-0.5)) == fin(-0.5));
  CHECK(ell_exponent(fin(0), kPlus) == fin(0));
  CHECK(ell_exponent(kPlus, kPlus) == kPlus);
  CHECK(ell_exponent(kPlus, kMinus) == kMinus);  // sum is 0 by convention
  CHECK_THROWS_AS(ell_exponent(fin(-2), fin(1)), DomainError);
  CHECK_THROWS_AS(ell_exponent(kMinus, fin(1)), DomainError);
  CHECK(ext_sum(kPlus, kMinus) == fin(0));
}

TEST_CASE("bbl_exponent examples") {
  CHECK(bbl_exponent(fin(0), 3) == fin(0));
  CHECK(bbl_exponent(kPlus, 2) == fin(0.5));
  CHECK(bbl_exponent(fin(-0.5), 1) == fin(-1));
  CHECK(bbl_exponent(fin(-1.0), 1) == kMinus);
  CHECK(bbl_exponent(fin(-0.25), 2).value() == doctest::Approx(-0.5));
  CHECK(bbl_exponent(fin(1.0), 2).value() == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(bbl_exponent(fin(-0.6), 2), DomainError);
  CHECK_THROWS_AS(bbl_exponent(kMinus, 1), DomainError);
  CHECK_THROWS_AS(bbl_exponent(fin(0), 0), DomainError);
}

TEST_CASE("check_product_inequality examples") {
  auto r = check_product_inequality(fin(1), fin(1), 1, 1, 1, 1, 0.5);
  CHECK(r.margin == 0.0);
  r = check_product_inequality(fin(2), fin(2), 1, 2, 3, 1, 0.5);
  CHECK(r.ell == fin(1));
  CHECK(r.margin >= 0.0);
  CHECK(r.margin == doctest::Approx(1.03553390593273762200422181052).epsilon(1e-14));
  r = check_product_inequality(fin(0), fin(0), 1, 4, 4, 1, 0.5);
  CHECK(std::abs(r.margin) <= 4 * std::numeric_limits<double>::epsilon() * 4);
}

TEST_CASE("property: monotone in p, homogeneous, endpoint identities") {
  CounterRng rng(2024, 0);
  const std::vector<ExtExponent> ladder = {kMinus, fin(-5), fin(-1), fin(-1e-9), fin(0),
                                           fin(1e-9), fin(0.5), fin(1), fin(3), kPlus};
  for (int i = 0; i < 20000; ++i) {
    const double a = std::exp(rng.uniform(-20, 20)), b = std::exp(rng.uniform(-20, 20));
    const double lam = rng.uniform();
    double prev = 0.0;
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      const double m = mean_p(ladder[k], a, b, lam);
      if (k > 0) REQUIRE(m >= prev - ulp_slack(prev, 4));
      prev = m;
      const double s = std::exp(rng.uniform(-5, 5));
      REQUIRE(mean_p(ladder[k], s * a, s * b, lam) == doctest::Approx(s * m).epsilon(1e-12));
      REQUIRE(mean_p(ladder[k], a, a, lam) == doctest::Approx(a).epsilon(1e-14));
      REQUIRE(mean_p(ladder[k], a, b, 0.0) == doctest::Approx(a).epsilon(1e-14));
      REQUIRE(mean_p(ladder[k], a, b, 1.0) == doctest::Approx(b).epsilon(1e-14));
    }
  }
}

TEST_CASE("property: continuity at p = 0 and p = +-inf") {
  CounterRng rng(7, 0);
  for (int i = 0; i < 2000; ++i) {
    const double a = rng.uniform(0.1, 10), b = rng.uniform(0.1, 10), lam = rng.uniform();
    const double m0 = mean_p(fin(0), a, b, lam);
    CHECK(mean_p(fin(1e-8), a, b, lam) == doctest::Approx(m0).epsilon(1e-6));
    CHECK(mean_p(fin(-1e-8), a, b, lam) == doctest::Approx(m0).epsilon(1e-6));
    // At |p| = 1e8 a weight lam in (1e-3, 1-1e-3) costs |log lam|/p ~ 1e-7.
    if (lam > 1e-3 && lam < 1 - 1e-3) {
      CHECK(mean_p(fin(1e8), a, b, lam) == doctest::Approx(std::max(a, b)).epsilon(1e-6));
      CHECK(mean_p(fin(-1e8), a, b, lam) == doctest::Approx(std::min(a, b)).epsilon(1e-6));
    }
  }
}

TEST_CASE("property: product inequality on random inputs") {
  CounterRng rng(99, 0);
  int checked = 0;
  for (int i = 0; i < 200000; ++i) {
    ExtExponent p = random_exponent(rng), q = random_exponent(rng);
    if (ext_sum(p, q) < fin(0)) std::swap(p, q), q = (q.is_finite() ? fin(-q.value()) : kPlus);
    if (ext_sum(p, q) < fin(0)) continue;
    const double a = std::exp(rng.uniform(-8, 8)), b = std::exp(rng.uniform(-8, 8));
    const double c = std::exp(rng.uniform(-8, 8)), d = std::exp(rng.uniform(-8, 8));
    const double lam = rng.uniform();
    const auto r = check_product_inequality(p, q, a, b, c, d, lam);
    REQUIRE(r.margin >= -ulp_slack(std::max(r.lhs, r.rhs), 4));
    ++checked;
  }
  CHECK(checked > 150000);
}
