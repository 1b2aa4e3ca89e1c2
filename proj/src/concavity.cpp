#include "powconc/concavity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "powconc/errors.hpp"
#include "powconc/parallel.hpp"
#include "powconc/rng.hpp"

namespace powconc {

namespace {

constexpr int kMaxTries = 1000;
constexpr double kNearDiagonal = 1e-4;

struct Sample {
  Vec x0, x1;
  double t0 = 0.0, t1 = 0.0;
  double lambda = 0.5;
};

struct Outcome {
  bool used = false;
  bool zero = false;
  bool eligible = false;
  bool violation = false;
  bool equality = false;
  bool ray_equality = false;
  bool certified = false;
  double margin = 0.0;      // raw
  double normalized = kInf; // margin / scale
  double lhs = 0.0, rhs = 0.0;
};

double time_weight(double alpha, double t) { return alpha == 0.0 ? std::log(t) : std::pow(t, alpha); }

bool draw_in(const ConvexBody& body, CounterRng& rng, Vec& x) {
  const auto [lo, hi] = body.bounding_box();
  for (int k = 0; k < kMaxTries; ++k) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(lo[i], hi[i]);
    if (body.contains(x)) return true;
  }
  return false;
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Relative noise of M_p(f0, f1): the mean is monotone and homogeneous, so a
// common relative perturbation of both arguments moves it by the same factor.
double mean_noise(const Evaluated& e0, const Evaluated& e1, double rhs) {
  double rel = 0.0;
  if (e0.value > 0.0) rel = std::max(rel, e0.noise / e0.value);
  if (e1.value > 0.0) rel = std::max(rel, e1.noise / e1.value);
  return rel * rhs;
}

struct Judge {
  const CheckConfig& cfg;
  StrictMode mode;
  ExtExponent p;

  // on_ray: equality is tolerated (almost-strict mode only).
  Outcome judge(const Evaluated& e0, const Evaluated& e1, const Evaluated& el, double lambda, bool separated,
                bool on_ray) const {
    Outcome out;
    out.used = true;
    out.lhs = el.value;
    out.rhs = mean_p(p, e0.value, e1.value, lambda);
    out.margin = out.lhs - out.rhs;
    const double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
    const double noise = el.noise + mean_noise(e0, e1, out.rhs);
    if (scale == 0.0) {
      out.zero = true;
      out.normalized = 0.0;
    } else {
      out.normalized = out.margin / scale;
    }
    if (out.margin < -(cfg.tol * scale + 3.0 * noise)) out.violation = true;

    if (mode == StrictMode::plain || !separated) return out;
    const bool positive_ends = e0.value > 0.0 && e1.value > 0.0;
    if (!positive_ends) {
      // A strictly p-concave function is positive on its domain; a zero
      // value at x_l between separated points is an equality case.
      if (out.zero) {
        if (mode == StrictMode::almost_strict && on_ray) {
          out.ray_equality = true;
        } else {
          out.eligible = true;
          out.equality = true;
        }
      }
      return out;
    }
    const bool equal = out.margin <= std::max(cfg.eps_eq * scale, 3.0 * noise);
    if (mode == StrictMode::almost_strict && on_ray) {
      if (equal) out.ray_equality = true;
      return out;
    }
    out.eligible = true;
    if (equal && !out.violation) out.equality = true;
    if (out.margin > cfg.eps_strict * scale) out.certified = true;
    return out;
  }
};

ConcavityReport merge(const std::vector<Outcome>& outcomes, const std::vector<Sample>& samples,
                      const CheckConfig& cfg, bool has_time) {
  ConcavityReport r;
  r.tolerance = cfg.tol;
  r.seed = cfg.seed;
  std::optional<std::size_t> worst, worst_violation, first_equality;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (!o.used) continue;
    ++r.samples_used;
    if (cfg.keep_margins) r.margins.push_back(o.margin);
    if (o.zero) ++r.zero_samples;
    if (o.eligible) ++r.strict_samples;
    if (o.certified) ++r.certified;
    if (o.equality) {
      ++r.equalities;
      if (!first_equality) first_equality = i;
    }
    if (o.ray_equality) ++r.ray_equalities;
    if (!o.zero && (!worst || o.normalized < outcomes[*worst].normalized)) worst = i;
    if (o.violation && (!worst_violation || o.normalized < outcomes[*worst_violation].normalized)) {
      worst_violation = i;
    }
  }
  if (worst) r.worst_margin = outcomes[*worst].normalized;

  std::optional<std::size_t> pick = worst;
  if (worst_violation) {
    r.verdict = Verdict::violation;
    r.reason = "concavity inequality fails beyond tolerance";
    pick = worst_violation;
  } else if (first_equality) {
    r.verdict = Verdict::equality_off_spec;
    r.reason = "equality at separated points where strict inequality is required";
    pick = first_equality;
  }
  if (pick) {
    const auto& s = samples[*pick];
    r.witness.x0 = s.x0;
    r.witness.x1 = s.x1;
    r.witness.lambda = s.lambda;
    if (has_time) {
      r.witness.t0 = s.t0;
      r.witness.t1 = s.t1;
    }
    r.witness_lhs = outcomes[*pick].lhs;
    r.witness_rhs = outcomes[*pick].rhs;
  }
  return r;
}

ConvexBody resolve_domain(const CheckConfig& cfg, const std::optional<ConvexBody>& fallback, int dim) {
  std::optional<ConvexBody> d = cfg.domain ? cfg.domain : fallback;
  if (!d) throw InputError("concavity check: no sampling domain and the field has no compact support");
  if (d->dim() != dim) throw DomainError("concavity check: domain dimension does not match the field");
  return *d;
}

// Space pair: uniform, near-diagonal, or collinear with the origin.
bool draw_space_pair(const ConvexBody& domain, const CheckConfig& cfg, CounterRng& rng, Sample& s) {
  const double u = rng.uniform();
  if (!draw_in(domain, rng, s.x0)) return false;
  const double diam = domain.diameter();
  if (u < cfg.diagonal_fraction) {
    for (int k = 0; k < kMaxTries; ++k) {
      for (std::size_t i = 0; i < s.x1.size(); ++i) s.x1[i] = s.x0[i] + kNearDiagonal * diam * rng.normal();
      if (domain.contains(s.x1)) return true;
    }
  } else if (u < cfg.diagonal_fraction + cfg.ray_fraction) {
    for (int k = 0; k < kMaxTries; ++k) {
      const double c = rng.uniform(-2.0, 2.0);
      for (std::size_t i = 0; i < s.x1.size(); ++i) s.x1[i] = c * s.x0[i];
      if (domain.contains(s.x1)) return true;
    }
  }
  return draw_in(domain, rng, s.x1);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::violation:
      return "violation";
    case Verdict::equality_off_spec:
      return "equality_off_spec";
  }
  return "pass";
}

std::string to_string(StrictMode m) {
  switch (m) {
    case StrictMode::plain:
      return "plain";
    case StrictMode::strict:
      return "strict";
    case StrictMode::almost_strict:
      return "almost-strict";
  }
  return "plain";
}

StrictMode parse_mode(const std::string& text) {
  if (text == "plain") return StrictMode::plain;
  if (text == "strict") return StrictMode::strict;
  if (text == "almost-strict" || text == "almost_strict") return StrictMode::almost_strict;
  throw InputError("unknown mode '" + text + "' (expected plain, strict or almost-strict)");
}

void CheckConfig::validate() const {
  if (samples == 0) throw InputError("check: samples must be positive");
  if (!(tol >= 0.0)) throw InputError("check: tol must be nonnegative");
  if (!(eps_eq > 0.0 && eps_strict > 0.0 && eps_eq < eps_strict)) {
    throw InputError("check: requires 0 < eps_eq < eps_strict");
  }
  if (!(diagonal_fraction >= 0.0 && ray_fraction >= 0.0 && diagonal_fraction + ray_fraction <= 1.0)) {
    throw InputError("check: sampling fractions must be nonnegative with sum <= 1");
  }
  if (!(separation >= 0.0)) throw InputError("check: separation must be nonnegative");
}

bool on_parabolic_ray(double alpha, std::span<const double> x0, double t0, std::span<const double> x1, double t1,
                      double rel_tol) {
  if (x0.size() != x1.size()) throw DomainError("on_parabolic_ray: dimension mismatch");
  if (alpha == 0.0 && !(t0 > 1.0 && t1 > 1.0)) throw DomainError("on_parabolic_ray: alpha = 0 needs t > 1");
  const double w0 = time_weight(alpha, t0), w1 = time_weight(alpha, t1);
  double diff = 0.0, size = 0.0;
  for (std::size_t i = 0; i < x0.size(); ++i) {
    const double a = x0[i] / w0, b = x1[i] / w1;
    diff = std::max(diff, std::abs(a - b));
    size = std::max({size, std::abs(a), std::abs(b)});
  }
  return diff <= rel_tol * std::max(size, 1.0);
}

EqualityClass classify_equality(const SpaceTimeField& phi, double alpha, const ExtExponent& p,
                                std::span<const double> x0, double t0, std::span<const double> x1, double t1,
                                double lambda, double eps_eq) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("classify_equality: lambda must lie in [0,1]");
  EqualityClass c;
  c.on_ray = on_parabolic_ray(alpha, x0, t0, x1, t1);
  Vec xl(x0.size());
  for (std::size_t i = 0; i < xl.size(); ++i) xl[i] = (1.0 - lambda) * x0[i] + lambda * x1[i];
  const double tl = time_mean(alpha, t0, t1, lambda);
  c.lhs = phi.eval(xl, tl);
  c.rhs = mean_p(p, phi.eval(x0, t0), phi.eval(x1, t1), lambda);
  c.margin = c.lhs - c.rhs;
  const double scale = std::max(std::abs(c.lhs), std::abs(c.rhs));
  c.equal = std::abs(c.margin) <= eps_eq * scale;
  return c;
}

ConcavityReport check_p_concavity(const ScalarField& f, const ExtExponent& p, const CheckConfig& cfg,
                                  bool strict) {
  cfg.validate();
  const ConvexBody domain = resolve_domain(cfg, f.support(), f.dim());
  const double sep = cfg.separation_abs ? *cfg.separation_abs : cfg.separation * domain.diameter();
  const Judge judge{cfg, strict ? StrictMode::strict : StrictMode::plain, p};
  const auto n = static_cast<std::size_t>(f.dim());

  std::vector<Sample> samples(cfg.samples);
  std::vector<Outcome> outcomes(cfg.samples);
  parallel_for(cfg.samples, cfg.threads, [&](std::size_t begin, std::size_t end) {
    Vec xl(n);
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(cfg.seed, i);
      Sample& s = samples[i];
      s.x0.assign(n, 0.0);
      s.x1.assign(n, 0.0);
      if (!draw_space_pair(domain, cfg, rng, s)) continue;
      s.lambda = rng.uniform_open();
      for (std::size_t k = 0; k < n; ++k) xl[k] = (1.0 - s.lambda) * s.x0[k] + s.lambda * s.x1[k];
      const auto e0 = f.eval_with_noise(s.x0);
      const auto e1 = f.eval_with_noise(s.x1);
      const auto el = f.eval_with_noise(xl);
      outcomes[i] = judge.judge(e0, e1, el, s.lambda, distance(s.x0, s.x1) >= sep, false);
    }
  });

  auto report = merge(outcomes, samples, cfg, false);
  if (report.samples_used == 0) throw SamplingError("check_p_concavity: no samples drawn from the domain");
  if (strict && report.zero_samples == report.samples_used) {
    throw SamplingError("check_p_concavity: strict check found no point with f > 0");
  }
  return report;
}

ConcavityReport check_quasi_concavity_superlevel(const ScalarField& f, const CheckConfig& cfg) {
  cfg.validate();
  const ConvexBody domain = resolve_domain(cfg, f.support(), f.dim());
  const auto n = static_cast<std::size_t>(f.dim());

  // Estimate the maximum to pick levels below it.
  double fmax = 0.0;
  {
    CounterRng rng(cfg.seed, ~std::uint64_t{0});
    Vec x(n);
    for (int k = 0; k < 256; ++k) {
      if (draw_in(domain, rng, x)) fmax = std::max(fmax, f.eval(x));
    }
  }
  if (!(fmax > 0.0)) throw SamplingError("check_quasi_concavity_superlevel: field vanishes on sampled points");

  const Judge judge{cfg, StrictMode::plain, ExtExponent::minus_inf()};
  std::vector<Sample> samples(cfg.samples);
  std::vector<Outcome> outcomes(cfg.samples);
  parallel_for(cfg.samples, cfg.threads, [&](std::size_t begin, std::size_t end) {
    Vec xl(n);
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(cfg.seed, i);
      Sample& s = samples[i];
      s.x0.assign(n, 0.0);
      s.x1.assign(n, 0.0);
      const double level = rng.uniform_open() * fmax;
      auto draw_above = [&](Vec& x) {
        for (int k = 0; k < 200; ++k) {
          if (draw_in(domain, rng, x) && f.eval(x) > level) return true;
        }
        return false;
      };
      if (!draw_above(s.x0) || !draw_above(s.x1)) continue;
      s.lambda = rng.uniform_open();
      for (std::size_t k = 0; k < n; ++k) xl[k] = (1.0 - s.lambda) * s.x0[k] + s.lambda * s.x1[k];
      const auto e0 = f.eval_with_noise(s.x0);
      const auto e1 = f.eval_with_noise(s.x1);
      const auto el = f.eval_with_noise(xl);
      Outcome o = judge.judge(e0, e1, el, s.lambda, false, false);
      // Super-level membership of x_l, with the same relative tolerance.
      if (el.value <= level - (cfg.tol * level + 3.0 * el.noise)) o.violation = true;
      outcomes[i] = o;
    }
  });
  auto report = merge(outcomes, samples, cfg, false);
  if (report.samples_used == 0) throw SamplingError("check_quasi_concavity_superlevel: no level-set pairs found");
  return report;
}

ConcavityReport check_parabolic_p_concavity(const SpaceTimeField& phi, double alpha, const ExtExponent& p,
                                            const CheckConfig& cfg, StrictMode mode) {
  cfg.validate();
  if (!std::isfinite(alpha)) throw DomainError("parabolic check: alpha must be finite");
  if (!(cfg.t_lo > 0.0 && cfg.t_lo < cfg.t_hi)) throw InputError("parabolic check: need 0 < t_lo < t_hi");
  if (cfg.t_lo < phi.t_lo() || cfg.t_hi > phi.t_hi()) {
    throw DomainError("parabolic check: time window outside the field's interval");
  }
  if (alpha == 0.0 && cfg.t_lo < 1.0) throw DomainError("parabolic check: alpha = 0 needs t_lo >= 1");
  const ConvexBody domain = resolve_domain(cfg, std::nullopt, phi.dim());
  const double diam = std::hypot(domain.diameter(), cfg.t_hi - cfg.t_lo);
  const double sep = cfg.separation_abs ? *cfg.separation_abs : cfg.separation * diam;
  const bool log_time = cfg.log_time || alpha == 0.0;
  const Judge judge{cfg, mode, p};
  const auto n = static_cast<std::size_t>(phi.dim());

  auto draw_time = [&](CounterRng& rng) {
    const double u = rng.uniform_open();
    if (log_time) {
      const double a = std::log(cfg.t_lo), b = std::log(cfg.t_hi);
      return std::clamp(std::exp(a + u * (b - a)), std::nextafter(cfg.t_lo, kInf), cfg.t_hi);
    }
    return cfg.t_lo + u * (cfg.t_hi - cfg.t_lo);
  };

  std::vector<Sample> samples(cfg.samples);
  std::vector<Outcome> outcomes(cfg.samples);
  parallel_for(cfg.samples, cfg.threads, [&](std::size_t begin, std::size_t end) {
    Vec xl(n), z0(n + 1), z1(n + 1);
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(cfg.seed, i);
      Sample& s = samples[i];
      s.x0.assign(n, 0.0);
      s.x1.assign(n, 0.0);
      const double u = rng.uniform();
      if (!draw_in(domain, rng, s.x0)) continue;
      s.t0 = draw_time(rng);
      bool drawn = false;
      if (u < cfg.diagonal_fraction) {
        for (int k = 0; k < kMaxTries && !drawn; ++k) {
          for (std::size_t j = 0; j < n; ++j) s.x1[j] = s.x0[j] + kNearDiagonal * diam * rng.normal();
          s.t1 = s.t0 + kNearDiagonal * diam * rng.normal();
          drawn = domain.contains(s.x1) && s.t1 > cfg.t_lo && s.t1 <= cfg.t_hi;
        }
      } else if (u < cfg.diagonal_fraction + cfg.ray_fraction) {
        // Same ray: x1 / T(t1) = x0 / T(t0).
        for (int k = 0; k < kMaxTries && !drawn; ++k) {
          s.t1 = draw_time(rng);
          const double ratio = time_weight(alpha, s.t1) / time_weight(alpha, s.t0);
          for (std::size_t j = 0; j < n; ++j) s.x1[j] = s.x0[j] * ratio;
          drawn = domain.contains(s.x1);
        }
      }
      if (!drawn) {
        if (!draw_in(domain, rng, s.x1)) continue;
        s.t1 = draw_time(rng);
      }
      s.lambda = rng.uniform_open();
      for (std::size_t k = 0; k < n; ++k) xl[k] = (1.0 - s.lambda) * s.x0[k] + s.lambda * s.x1[k];
      const double tl = time_mean(alpha, s.t0, s.t1, s.lambda);
      const auto e0 = phi.eval_with_noise(s.x0, s.t0);
      const auto e1 = phi.eval_with_noise(s.x1, s.t1);
      const auto el = phi.eval_with_noise(xl, tl);
      for (std::size_t k = 0; k < n; ++k) {
        z0[k] = s.x0[k];
        z1[k] = s.x1[k];
      }
      z0[n] = s.t0;
      z1[n] = s.t1;
      const bool separated = distance(z0, z1) >= sep;
      // Margins vanish quadratically in the ray offset, so pairs within the
      // separation band of a ray are treated as on it.
      const bool ray =
          mode == StrictMode::almost_strict && on_parabolic_ray(alpha, s.x0, s.t0, s.x1, s.t1, cfg.separation);
      outcomes[i] = judge.judge(e0, e1, el, s.lambda, separated, ray);
    }
  });

  auto report = merge(outcomes, samples, cfg, true);
  if (report.samples_used == 0) throw SamplingError("parabolic check: no samples drawn from the domain");
  if (mode != StrictMode::plain && report.zero_samples == report.samples_used) {
    throw SamplingError("parabolic check: strict check found no point with phi > 0");
  }
  return report;
}

}  // namespace powconc
