#include "powconc/convolve.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "powconc/errors.hpp"
#include "powconc/parallel.hpp"
#include "powconc/rng.hpp"

namespace powconc {

namespace {

constexpr double kOracleNoise = 16.0 * std::numeric_limits<double>::epsilon();

struct GridSum {
  double value = 0.0;
  double boundary = 0.0;  // sum of |integrand| * cell volume over boundary cells
};

GridSum tensor_sum(const SpaceTimeField& phi, const ScalarField& psi, std::span<const double> x, double t,
                   const ConvexBody& support, int per_axis, bool want_boundary, int threads) {
  const auto n = static_cast<std::size_t>(support.dim());
  const auto [lo, hi] = support.bounding_box();
  Vec h(n);
  double cell = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = (hi[i] - lo[i]) / per_axis;
    cell *= h[i];
  }
  const double half_diag = 0.5 * norm(h);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(per_axis);

  std::vector<double> contrib(total, 0.0), edge(want_boundary ? total : 0, 0.0);
  parallel_for(total, threads, [&](std::size_t begin, std::size_t end) {
    Vec y(n), d(n);
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::size_t rem = idx;
      for (std::size_t i = n; i-- > 0;) {
        const std::size_t k = rem % static_cast<std::size_t>(per_axis);
        rem /= static_cast<std::size_t>(per_axis);
        y[i] = lo[i] + (static_cast<double>(k) + 0.5) * h[i];
      }
      const bool inside = support.contains(y);
      bool boundary = false;
      if (want_boundary) boundary = support.contains(y, half_diag) && !support.contains(y, -half_diag);
      if (!inside && !boundary) continue;
      const double g = psi.eval(y);
      if (g == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - y[i];
      const double v = phi.eval(d, t) * g * cell;
      if (inside) contrib[idx] = v;
      if (boundary) edge[idx] = std::abs(v);
    }
  });
  GridSum out;
  out.value = pairwise_sum(contrib);
  if (want_boundary) out.boundary = pairwise_sum(edge);
  return out;
}

ConvolutionResult monte_carlo(const SpaceTimeField& phi, const ScalarField& psi, std::span<const double> x, double t,
                              const QuadratureSpec& quad) {
  const auto n = static_cast<std::size_t>(quad.support.dim());
  const auto [lo, hi] = quad.support.bounding_box();
  double vol = 1.0;
  for (std::size_t i = 0; i < n; ++i) vol *= hi[i] - lo[i];
  std::vector<double> vals(quad.mc_samples, 0.0), squares(quad.mc_samples, 0.0);
  parallel_for(quad.mc_samples, quad.threads, [&](std::size_t begin, std::size_t end) {
    Vec y(n), d(n);
    for (std::size_t s = begin; s < end; ++s) {
      CounterRng rng(quad.seed, s);
      for (std::size_t i = 0; i < n; ++i) y[i] = rng.uniform(lo[i], hi[i]);
      if (!quad.support.contains(y)) continue;
      for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - y[i];
      const double v = phi.eval(d, t) * psi.eval(y);
      vals[s] = v;
      squares[s] = v * v;
    }
  });
  const double count = static_cast<double>(quad.mc_samples);
  const double mean = pairwise_sum(vals) / count;
  const double var = std::max(0.0, pairwise_sum(squares) / count - mean * mean);
  return {vol * mean, 3.0 * vol * std::sqrt(var / count)};
}

}  // namespace

QuadratureSpec QuadratureSpec::defaults_for(ConvexBody support) {
  QuadratureSpec q;
  const int n = support.dim();
  q.support = std::move(support);
  if (n == 1) {
    q.points_per_axis = 256;
  } else if (n == 2) {
    q.points_per_axis = 96;
  } else {
    q.scheme = Scheme::monte_carlo;
  }
  return q;
}

void QuadratureSpec::validate() const {
  if (scheme == Scheme::tensor_grid && points_per_axis < 8) throw InputError("quadrature: points_per_axis must be >= 8");
  if (scheme == Scheme::monte_carlo && mc_samples < 2) throw InputError("quadrature: too few Monte Carlo samples");
}

ConvolutionResult convolve_at(const SpaceTimeField& phi, const ScalarField& psi, std::span<const double> x, double t,
                              const QuadratureSpec& quad) {
  quad.validate();
  if (phi.dim() != psi.dim() || psi.dim() != quad.support.dim()) {
    throw DomainError("convolve_at: kernel, data and support dimensions differ");
  }
  if (static_cast<int>(x.size()) != phi.dim()) throw DomainError("convolve_at: point has the wrong dimension");
  if (!phi.in_time_domain(t)) throw DomainError("convolve_at: time outside the kernel's interval");

  ConvolutionResult r;
  if (quad.scheme == QuadratureSpec::Scheme::monte_carlo) {
    r = monte_carlo(phi, psi, x, t, quad);
  } else {
    // Masking is exact for axis-aligned supports, whose edges fall on cell faces.
    const bool aligned = std::holds_alternative<ConvexBody::Interval>(quad.support.shape()) ||
                         std::holds_alternative<ConvexBody::Box>(quad.support.shape());
    const auto fine = tensor_sum(phi, psi, x, t, quad.support, quad.points_per_axis, !aligned, quad.threads);
    const auto coarse = tensor_sum(phi, psi, x, t, quad.support, std::max(4, quad.points_per_axis / 2), false,
                                   quad.threads);
    r.value = std::max(0.0, fine.value);
    r.est_error = std::abs(fine.value - coarse.value) + fine.boundary;
  }
  if (quad.error_budget && r.est_error > *quad.error_budget) {
    throw ResolutionError("convolve_at: estimated error exceeds the budget");
  }
  return r;
}

ConvolutionResult gauss_weierstrass_integral(const ScalarField& g, std::span<const double> x, double t,
                                             const QuadratureSpec& quad) {
  const GaussWeierstrassKernel kernel(g.dim());
  return convolve_at(kernel, g, x, t, quad);
}

ConvolutionResult poisson_integral(const ScalarField& g, std::span<const double> x, double t,
                                   const QuadratureSpec& quad) {
  const PoissonKernel kernel(g.dim());
  return convolve_at(kernel, g, x, t, quad);
}

double oracle_W_interval(double a, double b, double x, double t) {
  if (!(a < b)) throw DomainError("oracle_W_interval: requires a < b");
  if (!(t > 0.0)) throw DomainError("oracle_W_interval: requires t > 0");
  const double s = 2.0 * std::sqrt(t);
  const double lo = (a - x) / s, hi = (b - x) / s;
  // Use complementary forms when both arguments lie on one side of 0.
  if (lo >= 0.0) return 0.5 * (std::erfc(lo) - std::erfc(hi));
  if (hi <= 0.0) return 0.5 * (std::erfc(-hi) - std::erfc(-lo));
  return 0.5 * (std::erf(hi) - std::erf(lo));
}

double oracle_P_interval(double a, double b, double x, double t) {
  if (!(a < b)) throw DomainError("oracle_P_interval: requires a < b");
  if (!(t > 0.0)) throw DomainError("oracle_P_interval: requires t > 0");
  const double lo = (a - x) / t, hi = (b - x) / t;
  if (lo * hi > 0.0) return std::atan((hi - lo) / (1.0 + lo * hi)) / std::numbers::pi;
  return (std::atan(hi) - std::atan(lo)) / std::numbers::pi;
}

double kernel_mass(const std::string& kernel, int n, double t) {
  if (!(t > 0.0)) throw DomainError("kernel_mass: requires t > 0");
  if (n < 1) throw DomainError("kernel_mass: n must be positive");
  // Area of the unit sphere in R^n (S^(n-1)); 2 for n = 1.
  const double shell = n == 1 ? 2.0 : sphere_area(n - 1);
  using boost::math::quadrature::gauss_kronrod;
  if (kernel == "gw") {
    const double radius = 8.0 * std::sqrt(2.0 * t);
    auto f = [&](double r) {
      return std::pow(4.0 * std::numbers::pi * t, -0.5 * n) * std::exp(-r * r / (4.0 * t)) * std::pow(r, n - 1);
    };
    return shell * gauss_kronrod<double, 61>::integrate(f, 0.0, radius, 15, 1e-15);
  }
  if (kernel == "poisson") {
    if (n > 2) throw NotRepresentable("kernel_mass: analytic Poisson tail only for n <= 2");
    const double radius = 50.0 * t;
    const double c = 2.0 * t / sphere_area(n);
    auto f = [&](double r) { return c * std::pow(r * r + t * t, -0.5 * (n + 1)) * std::pow(r, n - 1); };
    const double core = shell * gauss_kronrod<double, 61>::integrate(f, 0.0, radius, 15, 1e-15);
    // Exact mass beyond the radius.
    const double tail = n == 1 ? 1.0 - 2.0 * std::atan(radius / t) / std::numbers::pi
                               : t / std::sqrt(radius * radius + t * t);
    return core + tail;
  }
  throw InputError("kernel_mass: unknown kernel '" + kernel + "'");
}

ConvolutionField::ConvolutionField(SpaceTimeFieldPtr phi, ScalarFieldPtr psi, QuadratureSpec quad)
    : SpaceTimeField(phi ? phi->dim() : 1, phi ? phi->t_lo() : 0.0, phi ? phi->t_hi() : kInf),
      phi_(std::move(phi)),
      psi_(std::move(psi)),
      quad_(std::move(quad)) {
  if (!phi_ || !psi_) throw DomainError("convolution: null kernel or data");
  if (psi_->dim() != dim_ || quad_.support.dim() != dim_) throw DomainError("convolution: dimension mismatch");
  quad_.validate();
  const auto& kc = phi_->claim();
  const auto& dc = psi_->claim();
  if (kc.p && dc.p && kc.alpha) {
    try {
      claim_.p = bbl_exponent(ell_exponent(*kc.p, *dc.p), dim_);
      claim_.alpha = kc.alpha;
      claim_.strict = kc.almost_strict || kc.strict;
    } catch (const DomainError&) {
      claim_ = {};
    }
  }
}

double ConvolutionField::value(std::span<const double> x, double t) const {
  return convolve_at(*phi_, *psi_, x, t, quad_).value;
}

Evaluated ConvolutionField::value_with_noise(std::span<const double> x, double t) const {
  const auto r = convolve_at(*phi_, *psi_, x, t, quad_);
  return {r.value, r.est_error};
}

WIntervalOracle::WIntervalOracle(double a, double b) : SpaceTimeField(1, 0.0, kInf), a_(a), b_(b) {
  if (!(a < b)) throw DomainError("weierstrass_interval: requires a < b");
  claim_.p = ExtExponent::minus_inf();
  claim_.alpha = 0.5;
  claim_.strict = true;
}

double WIntervalOracle::value(std::span<const double> x, double t) const { return oracle_W_interval(a_, b_, x[0], t); }

Evaluated WIntervalOracle::value_with_noise(std::span<const double> x, double t) const {
  const double v = value(x, t);
  return {v, kOracleNoise * v};
}

PIntervalOracle::PIntervalOracle(double a, double b) : SpaceTimeField(1, 0.0, kInf), a_(a), b_(b) {
  if (!(a < b)) throw DomainError("poisson_interval: requires a < b");
  claim_.p = ExtExponent::minus_inf();
  claim_.alpha = 1.0;
  claim_.strict = true;
}

double PIntervalOracle::value(std::span<const double> x, double t) const { return oracle_P_interval(a_, b_, x[0], t); }

Evaluated PIntervalOracle::value_with_noise(std::span<const double> x, double t) const {
  const double v = value(x, t);
  return {v, kOracleNoise * v};
}

SpaceTimeFieldPtr make_convolution(SpaceTimeFieldPtr phi, ScalarFieldPtr psi, QuadratureSpec quad) {
  return std::make_shared<ConvolutionField>(std::move(phi), std::move(psi), std::move(quad));
}
SpaceTimeFieldPtr make_w_interval(double a, double b) { return std::make_shared<WIntervalOracle>(a, b); }
SpaceTimeFieldPtr make_p_interval(double a, double b) { return std::make_shared<PIntervalOracle>(a, b); }

}  // namespace powconc
