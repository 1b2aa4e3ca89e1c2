#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "powconc/descriptors.hpp"
#include "powconc/errors.hpp"

using namespace powconc;

TEST_CASE("numbers and exponents") {
  CHECK(number_from_json(json("inf")) == HUGE_VAL);
  CHECK(number_from_json(json("-inf")) == -HUGE_VAL);
  CHECK(number_from_json(json(2.5)) == 2.5);
  CHECK(number_to_json(-HUGE_VAL) == json("-inf"));
  CHECK(number_to_json(0.25) == json(0.25));
  CHECK_THROWS_AS(number_from_json(json("many")), InputError);
  CHECK_THROWS_AS(number_from_json(json::array()), InputError);
  for (const auto& p : {ExtExponent::plus_inf(), ExtExponent::minus_inf(), ExtExponent::finite(-0.5)}) {
    CHECK(ext_from_json(ext_to_json(p)) == p);
  }
  CHECK(ext_from_json(json("-1.5")) == ExtExponent::finite(-1.5));
}

TEST_CASE("body round trips") {
  const std::vector<ConvexBody> bodies = {
      ConvexBody::interval(-1, 2), ConvexBody::box({0.0, 1.0}, {2.0, 3.0}), ConvexBody::ball({0.0, 0.0, 1.0}, 2.0),
      ConvexBody::polytope({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}})};
  for (const auto& b : bodies) {
    const auto j = body_to_json(b);
    const auto back = body_from_json(j);
    CHECK(back.kind_name() == b.kind_name());
    CHECK(body_to_json(back) == j);
    CHECK(back.volume() == doctest::Approx(b.volume()));
  }
}

TEST_CASE("malformed bodies and fields raise InputError") {
  for (const char* text : {R"({"kind":"interval","a":0})", R"({"kind":"blob"})", R"({"a":0,"b":1})",
                           R"({"kind":"box","lo":[0,0],"hi":"x"})", R"([1,2])"}) {
    CHECK_THROWS_AS(body_from_json(json::parse(text)), InputError);
  }
  for (const char* text : {R"({"kind":"tent"})", R"({"kind":"gaussian","n":1})", R"({"kind":"unknown"})",
                           R"({"kind":"lift","field":{"kind":"constant","c":1},"alpha":1})",
                           R"({"kind":"product","factors":3})"}) {
    CHECK_THROWS_AS(field_from_json(json::parse(text)), InputError);
  }
  CHECK_THROWS_AS(load_json_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("field descriptors evaluate like the direct construction") {
  auto f = scalar_field_from_json(json::parse(R"({"kind":"tent","body":{"kind":"interval","a":-1,"b":1},"height":2})"));
  CHECK(f->eval(Vec{0.5}) == doctest::Approx(make_tent(ConvexBody::interval(-1, 1), 2.0)->eval(Vec{0.5})));

  auto gw = space_time_field_from_json(json::parse(R"({"kind":"gauss_weierstrass","n":2})"));
  CHECK(gw->eval(Vec{0.3, -0.2}, 0.7) == make_gauss_weierstrass(2)->eval(Vec{0.3, -0.2}, 0.7));

  auto k = space_time_field_from_json(json::parse(R"({"kind":"kappa_exp","a":-0.5,"b":2,"c":1})"));
  CHECK(k->eval(Vec{0.4}, 1.3) == make_kappa_exp(1, -0.5, 2, 1)->eval(Vec{0.4}, 1.3));

  auto w = space_time_field_from_json(json::parse(R"({"kind":"weierstrass_interval","a":-1,"b":1})"));
  CHECK(w->eval(Vec{0.3}, 0.5) == doctest::Approx(0.661235863191316652098639747525).epsilon(1e-14));

  auto lifted = space_time_field_from_json(
      json::parse(R"({"kind":"lift","field":{"kind":"tent","body":{"kind":"interval","a":0,"b":1}},"p":1,"alpha":1})"));
  CHECK(lifted->dim() == 1);

  // scalar kinds are not space-time fields and vice versa
  CHECK_THROWS_AS(space_time_field_from_json(json::parse(R"({"kind":"gaussian","n":1,"t":1})")), InputError);
  CHECK_THROWS_AS(scalar_field_from_json(json::parse(R"({"kind":"poisson_kernel","n":1})")), InputError);
}

TEST_CASE("bbl instance descriptor") {
  const auto inst = bbl_instance_from_json(json::parse(
      R"({"n":1,"f0":{"kind":"indicator","body":{"kind":"interval","a":0,"b":1}},
          "f1":{"kind":"indicator","body":{"kind":"interval","a":2,"b":4}},"ell":0,"lambda":0.5})"));
  const auto j = bbl_report_to_json(verify_bbl(inst));
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("rhs").get<double>() == doctest::Approx(1.4142135623730951));
  CHECK_THROWS_AS(bbl_instance_from_json(json::parse(
                      R"({"n":1,"f0":{"kind":"indicator","body":{"kind":"interval","a":0,"b":1}},
                          "f1":{"kind":"indicator","body":{"kind":"interval","a":2,"b":4}},"ell":-2,"lambda":0.5})")),
                  DomainError);
}

TEST_CASE("max problem descriptors") {
  auto prob = max_problem_from_json(json::parse(
      R"({"objective":{"kind":"gaussian","n":2,"t":1},"feasible":{"kind":"box","lo":[0.5,-1],"hi":[2,1]},
          "tolerance":1e-9,"multistart":5,"seed":3})"));
  auto r = maximize(prob);
  CHECK(r.argmax[0] == doctest::Approx(0.5));
  CHECK(std::abs(r.argmax[1]) < 1e-6);

  // space-time objective over (x, t)
  prob = max_problem_from_json(json::parse(
      R"({"objective":{"kind":"poisson_interval","a":-1,"b":1},"feasible":{"kind":"box","lo":[-2,0.5],"hi":[2,3]}})"));
  r = maximize(prob);
  CHECK(std::abs(r.argmax[0]) < 1e-6);
  CHECK(r.argmax[1] == doctest::Approx(0.5));
  const auto j = max_result_to_json(r);
  CHECK(j.at("certificate_ok").get<bool>());

  CHECK_THROWS_AS(max_problem_from_json(json::parse(
                      R"({"objective":{"kind":"gaussian","n":2,"t":1},"feasible":{"kind":"interval","a":0,"b":1}})")),
                  InputError);
  // time range outside the kernel's domain
  CHECK_THROWS_AS(max_problem_from_json(json::parse(
                      R"({"objective":{"kind":"poisson_interval","a":-1,"b":1},"feasible":{"kind":"box","lo":[-2,-1],"hi":[2,3]}})")),
                  InputError);
}

TEST_CASE("report serializers") {
  ConcavityReport rep;
  rep.verdict = Verdict::violation;
  rep.worst_margin = -0.25;
  rep.witness.x0 = {0.0};
  rep.witness.x1 = {1.0};
  rep.witness.lambda = 0.5;
  rep.reason = "because";
  const auto j = concavity_report_to_json(rep);
  CHECK(j.at("verdict") == "violation");
  CHECK(j.at("worst_margin").get<double>() == -0.25);
  CHECK(j.at("reason") == "because");
  const auto c = convolution_result_to_json({0.5, 1e-9});
  CHECK(c.at("value").get<double>() == 0.5);
  CHECK(c.at("est_error").get<double>() == 1e-9);
}
