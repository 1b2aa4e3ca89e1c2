#include "powconc/descriptors.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "powconc/errors.hpp"

namespace powconc {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object()) throw InputError("descriptor must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("descriptor is missing '") + key + "'");
  return *it;
}

double get_number(const json& j, const char* key) { return number_from_json(require(j, key)); }

double get_number(const json& j, const char* key, double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : number_from_json(*it);
}

int get_int(const json& j, const char* key, int fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) throw InputError(std::string("'") + key + "' must be an integer");
  return it->get<int>();
}

Vec get_vec(const json& j, const char* key) {
  const json& a = require(j, key);
  if (!a.is_array()) throw InputError(std::string("'") + key + "' must be an array");
  Vec out;
  for (const auto& v : a) out.push_back(number_from_json(v));
  return out;
}

std::string kind_of(const json& j) {
  const json& k = require(j, "kind");
  if (!k.is_string()) throw InputError("'kind' must be a string");
  return k.get<std::string>();
}

RadialProfile profile_from_json(const json& j) {
  const std::string kind = kind_of(j);
  if (kind == "exp_power") return RadialProfile::exp_power(get_number(j, "s", 1.0), get_number(j, "beta", 1.0));
  if (kind == "power") return RadialProfile::power(get_number(j, "gamma"));
  if (kind == "constant") return RadialProfile::constant(get_number(j, "c"));
  throw InputError("unknown radial profile '" + kind + "'");
}

json witness_to_json(const Witness& w) {
  json j;
  j["x0"] = w.x0;
  j["x1"] = w.x1;
  j["t0"] = w.t0 ? json(*w.t0) : json(nullptr);
  j["t1"] = w.t1 ? json(*w.t1) : json(nullptr);
  j["lambda"] = w.lambda;
  return j;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw InputError("expected a number, got " + j.dump());
}

ExtExponent ext_from_json(const json& j) {
  if (j.is_number()) return ExtExponent::from_double(j.get<double>());
  if (j.is_string()) return ExtExponent::parse(j.get<std::string>());
  throw InputError("expected an exponent (number, \"inf\" or \"-inf\"), got " + j.dump());
}

json ext_to_json(const ExtExponent& p) {
  if (p.is_finite()) return p.value();
  return p.to_string();
}

ConvexBody body_from_json(const json& j) {
  const std::string kind = kind_of(j);
  if (kind == "interval") return ConvexBody::interval(get_number(j, "a"), get_number(j, "b"));
  if (kind == "box") return ConvexBody::box(get_vec(j, "lo"), get_vec(j, "hi"));
  if (kind == "ball") return ConvexBody::ball(get_vec(j, "center"), get_number(j, "radius"));
  if (kind == "polytope") {
    const json& verts = require(j, "vertices");
    if (!verts.is_array()) throw InputError("'vertices' must be an array of points");
    std::vector<Vec> out;
    for (const auto& v : verts) {
      if (!v.is_array()) throw InputError("each vertex must be an array");
      Vec p;
      for (const auto& c : v) p.push_back(number_from_json(c));
      out.push_back(std::move(p));
    }
    return ConvexBody::polytope(std::move(out));
  }
  throw InputError("unknown body kind '" + kind + "'");
}

json body_to_json(const ConvexBody& body) {
  json j;
  j["kind"] = body.kind_name();
  if (const auto* s = std::get_if<ConvexBody::Interval>(&body.shape())) {
    j["a"] = s->a;
    j["b"] = s->b;
  } else if (const auto* s = std::get_if<ConvexBody::Box>(&body.shape())) {
    j["lo"] = s->lo;
    j["hi"] = s->hi;
  } else if (const auto* s = std::get_if<ConvexBody::Ball>(&body.shape())) {
    j["center"] = s->center;
    j["radius"] = s->radius;
  } else if (const auto* s = std::get_if<ConvexBody::Polytope>(&body.shape())) {
    j["vertices"] = s->vertices;
  }
  return j;
}

AnyField field_from_json(const json& j) {
  const std::string kind = kind_of(j);
  const int n = get_int(j, "n", 1);
  try {
    // Scalar families.
    if (kind == "indicator") return make_indicator(body_from_json(require(j, "body")), get_number(j, "height", 1.0));
    if (kind == "tent") return make_tent(body_from_json(require(j, "body")), get_number(j, "height", 1.0));
    if (kind == "gaussian") return make_gaussian(n, get_number(j, "t"));
    if (kind == "poisson_slice") return make_poisson_slice(n, get_number(j, "t"));
    if (kind == "radial") return radialize(n, profile_from_json(require(j, "profile")));
    if (kind == "constant") return make_constant(n, get_number(j, "c"));
    if (kind == "custom_grid") {
      std::vector<int> counts;
      for (const auto& c : require(j, "counts")) counts.push_back(c.get<int>());
      return ScalarFieldPtr(std::make_shared<CustomGridField>(get_vec(j, "lo"), get_vec(j, "hi"), std::move(counts),
                                                              get_vec(j, "values")));
    }
    if (kind == "product") {
      std::vector<ScalarFieldPtr> factors;
      for (const auto& f : require(j, "factors")) factors.push_back(scalar_field_from_json(f));
      return make_product(std::move(factors));
    }
    if (kind == "translated") return make_translated(scalar_field_from_json(require(j, "field")), get_vec(j, "shift"));
    if (kind == "slice") return make_slice(space_time_field_from_json(require(j, "field")), get_number(j, "t"));
    if (kind == "power_kappa_slice") {
      return power_kappa_slice(n, get_number(j, "a"), get_number(j, "b"), get_number(j, "c"), get_number(j, "t"));
    }

    // Space-time families.
    if (kind == "gauss_weierstrass") return make_gauss_weierstrass(n);
    if (kind == "poisson_kernel") return make_poisson_kernel(n);
    if (kind == "kappa_exp") return make_kappa_exp(n, get_number(j, "a"), get_number(j, "b"), get_number(j, "c"));
    if (kind == "kappa_power") return make_kappa_power(n, get_number(j, "a"), get_number(j, "b"), get_number(j, "c"));
    if (kind == "lift") {
      return lift(scalar_field_from_json(require(j, "field")), ext_from_json(require(j, "p")), get_number(j, "alpha"));
    }
    if (kind == "conjugate0") return conjugate0(space_time_field_from_json(require(j, "field")));
    if (kind == "conjugate0_inverse") return conjugate0_inverse(space_time_field_from_json(require(j, "field")));
    if (kind == "shifted") return SpaceTimeFieldPtr(shifted(space_time_field_from_json(require(j, "field"))));
    if (kind == "rescaled") {
      return rescaled(space_time_field_from_json(require(j, "field")), get_number(j, "c", 1.0),
                      get_number(j, "s", 1.0), get_number(j, "tau", 1.0));
    }
    if (kind == "convolution") {
      auto kernel = space_time_field_from_json(require(j, "kernel"));
      auto data = scalar_field_from_json(require(j, "data"));
      std::optional<ConvexBody> support;
      if (j.contains("support")) {
        support = body_from_json(j["support"]);
      } else {
        support = data->support();
      }
      if (!support) throw InputError("convolution: data has no compact support; give 'support'");
      auto quad = QuadratureSpec::defaults_for(*support);
      if (j.contains("scheme")) {
        const auto scheme = j["scheme"].get<std::string>();
        if (scheme == "monte_carlo") {
          quad.scheme = QuadratureSpec::Scheme::monte_carlo;
        } else if (scheme == "tensor_grid") {
          quad.scheme = QuadratureSpec::Scheme::tensor_grid;
        } else {
          throw InputError("unknown quadrature scheme '" + scheme + "'");
        }
      }
      quad.points_per_axis = get_int(j, "points_per_axis", quad.points_per_axis);
      quad.mc_samples = static_cast<std::size_t>(get_int(j, "mc_samples", static_cast<int>(quad.mc_samples)));
      quad.seed = static_cast<std::uint64_t>(get_int(j, "seed", 1));
      return make_convolution(std::move(kernel), std::move(data), std::move(quad));
    }
    if (kind == "weierstrass_interval") return make_w_interval(get_number(j, "a"), get_number(j, "b"));
    if (kind == "poisson_interval") return make_p_interval(get_number(j, "a"), get_number(j, "b"));
  } catch (const json::exception& e) {
    throw InputError("malformed '" + kind + "' descriptor: " + e.what());
  }
  throw InputError("unknown field kind '" + kind + "'");
}

ScalarFieldPtr scalar_field_from_json(const json& j) {
  auto f = field_from_json(j);
  if (auto* s = std::get_if<ScalarFieldPtr>(&f)) return *s;
  throw InputError("expected a function of x only, got '" + kind_of(j) + "'");
}

SpaceTimeFieldPtr space_time_field_from_json(const json& j) {
  auto f = field_from_json(j);
  if (auto* s = std::get_if<SpaceTimeFieldPtr>(&f)) return *s;
  throw InputError("expected a function of (x, t), got '" + kind_of(j) + "'");
}

BBLInstance bbl_instance_from_json(const json& j) {
  BBLInstance inst;
  inst.n = get_int(j, "n", 1);
  inst.f0 = scalar_field_from_json(require(j, "f0"));
  inst.f1 = scalar_field_from_json(require(j, "f1"));
  inst.ell = ext_from_json(require(j, "ell"));
  inst.lambda = get_number(j, "lambda");
  inst.grid = get_int(j, "grid", 0);
  inst.validate();
  return inst;
}

json bbl_report_to_json(const BBLReport& r) {
  json j;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["tolerance"] = r.tolerance;
  j["h"] = r.h;
  j["mass0"] = r.mass0;
  j["mass1"] = r.mass1;
  j["lambda"] = r.lambda_used;
  j["exponent"] = ext_to_json(r.exponent);
  j["pass"] = r.pass();
  return j;
}

json concavity_report_to_json(const ConcavityReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["worst_margin"] = number_to_json(r.worst_margin);
  j["witness"] = witness_to_json(r.witness);
  j["witness_lhs"] = r.witness_lhs;
  j["witness_rhs"] = r.witness_rhs;
  j["samples"] = r.samples_used;
  j["seed"] = r.seed;
  j["tolerance"] = r.tolerance;
  j["strict_samples"] = r.strict_samples;
  j["certified"] = r.certified;
  j["equalities"] = r.equalities;
  j["ray_equalities"] = r.ray_equalities;
  j["zero_samples"] = r.zero_samples;
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

json convolution_result_to_json(const ConvolutionResult& r) {
  json j;
  j["value"] = r.value;
  j["est_error"] = r.est_error;
  return j;
}

MaxProblem max_problem_from_json(const json& j) {
  MaxProblem prob;
  prob.feasible = body_from_json(require(j, "feasible"));
  prob.tolerance = get_number(j, "tolerance", prob.tolerance);
  prob.multistart = get_int(j, "multistart", prob.multistart);
  prob.seed = static_cast<std::uint64_t>(get_int(j, "seed", 1));
  auto f = field_from_json(require(j, "objective"));
  if (auto* s = std::get_if<ScalarFieldPtr>(&f)) {
    ScalarFieldPtr field = *s;
    if (field->dim() != prob.feasible.dim()) throw InputError("maximize: feasible set and objective dimensions differ");
    prob.objective = [field](std::span<const double> x) { return field->eval(x); };
    prob.noise = [field](std::span<const double> x) { return field->eval_with_noise(x).noise; };
  } else {
    SpaceTimeFieldPtr field = std::get<SpaceTimeFieldPtr>(f);
    if (field->dim() + 1 != prob.feasible.dim()) {
      throw InputError("maximize: a space-time objective needs a feasible set in R^(n+1)");
    }
    const auto [lo, hi] = prob.feasible.bounding_box();
    if (!field->in_time_domain(lo.back()) || !field->in_time_domain(hi.back())) {
      throw InputError("maximize: feasible times leave the objective's time domain");
    }
    prob.objective = [field](std::span<const double> z) { return field->eval(z.first(z.size() - 1), z.back()); };
    prob.noise = [field](std::span<const double> z) {
      return field->eval_with_noise(z.first(z.size() - 1), z.back()).noise;
    };
  }
  prob.validate();
  return prob;
}

json max_result_to_json(const MaxResult& r) {
  json j;
  j["argmax"] = r.argmax;
  j["value"] = r.value;
  j["starts_converged"] = r.starts_converged;
  j["max_pairwise_spread"] = r.max_pairwise_spread;
  j["certificate_ok"] = r.certificate_ok;
  j["end_points"] = r.end_points;
  return j;
}

}  // namespace powconc
