#include "powconc/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "powconc/errors.hpp"

namespace powconc {

namespace {

constexpr double kUlpNoise = 8.0 * std::numeric_limits<double>::epsilon();

double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

}  // namespace

ScalarField::ScalarField(int dim) : dim_(dim) {
  if (dim < 1) throw DomainError("field dimension must be positive");
}

void ScalarField::check_dim(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw DomainError(family() + ": point has the wrong dimension");
}

Evaluated ScalarField::eval_with_noise(std::span<const double> x) const {
  const double v = eval(x);
  return {v, kUlpNoise * std::abs(v)};
}

SpaceTimeField::SpaceTimeField(int dim, double t_lo, double t_hi) : dim_(dim), t_lo_(t_lo), t_hi_(t_hi) {
  if (dim < 1) throw DomainError("field dimension must be positive");
  if (!(t_lo >= 0.0 && t_lo < t_hi)) throw DomainError("field time domain must satisfy 0 <= t_lo < t_hi");
}

double SpaceTimeField::eval(std::span<const double> x, double t) const {
  if (static_cast<int>(x.size()) != dim_) throw DomainError(family() + ": point has the wrong dimension");
  if (!in_time_domain(t)) throw DomainError(family() + ": time outside the field's interval");
  return value(x, t);
}

Evaluated SpaceTimeField::eval_with_noise(std::span<const double> x, double t) const {
  if (static_cast<int>(x.size()) != dim_) throw DomainError(family() + ": point has the wrong dimension");
  if (!in_time_domain(t)) throw DomainError(family() + ": time outside the field's interval");
  return value_with_noise(x, t);
}

Evaluated SpaceTimeField::value_with_noise(std::span<const double> x, double t) const {
  const double v = value(x, t);
  return {v, kUlpNoise * std::abs(v)};
}

double sphere_area(int n) {
  if (n < 1) throw DomainError("sphere_area: n must be positive");
  // Exact for the small cases used most.
  if (n == 1) return 2.0 * std::numbers::pi;
  if (n == 2) return 4.0 * std::numbers::pi;
  if (n == 3) return 2.0 * std::numbers::pi * std::numbers::pi;
  const double h = 0.5 * (n + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

// ---- radial profiles -------------------------------------------------------

RadialProfile RadialProfile::exp_power(double s, double beta) {
  require_positive(s, "exp_power scale");
  if (!(beta >= 1.0)) throw DomainError("exp_power: beta must be >= 1");
  RadialProfile p;
  p.k = [s, beta](double r) { return std::exp(-s * std::pow(r, beta)); };
  p.strictly_decreasing = true;
  p.name = "exp_power";
  p.params = {s, beta};
  p.sup = 1.0;
  if (beta == 1.0) {
    p.lipschitz = s;
  } else {
    // max of s beta r^(beta-1) exp(-s r^beta), attained at r^beta = (beta-1)/(s beta)
    const double rb = (beta - 1.0) / (s * beta);
    p.lipschitz = s * beta * std::pow(rb, (beta - 1.0) / beta) * std::exp(-s * rb);
  }
  return p;
}

RadialProfile RadialProfile::power(double gamma) {
  require_positive(gamma, "power exponent");
  RadialProfile p;
  p.k = [gamma](double r) { return std::pow(1.0 + r * r, -gamma); };
  p.strictly_decreasing = true;
  p.name = "power";
  p.params = {gamma};
  p.sup = 1.0;
  const double r = 1.0 / std::sqrt(2.0 * gamma + 1.0);
  p.lipschitz = 2.0 * gamma * r * std::pow(1.0 + r * r, -gamma - 1.0);
  return p;
}

RadialProfile RadialProfile::constant(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("constant profile must be nonnegative");
  RadialProfile p;
  p.k = [c](double) { return c; };
  p.name = "constant";
  p.params = {c};
  p.sup = c;
  p.lipschitz = 0.0;
  return p;
}

void RadialProfile::validate() const {
  if (!k) throw DomainError("radial profile has no function");
  double prev = k(0.0);
  if (!(prev >= 0.0)) throw DomainError("radial profile must be nonnegative");
  for (int i = 1; i <= 256; ++i) {
    const double r = 10.0 * i / 256.0;
    const double v = k(r);
    if (!(v >= 0.0)) throw DomainError("radial profile must be nonnegative");
    if (strictly_decreasing && prev > 0.0 && !(v < prev)) {
      throw DomainError("radial profile flagged strictly decreasing is not");
    }
    prev = v;
  }
}

// ---- scalar families -------------------------------------------------------

IndicatorField::IndicatorField(ConvexBody body, double height)
    : ScalarField(body.dim()), body_(std::move(body)), height_(height) {
  if (!(height >= 0.0) || !std::isfinite(height)) throw DomainError("indicator height must be nonnegative");
  claim_.p = ExtExponent::plus_inf();
}

double IndicatorField::eval(std::span<const double> x) const {
  check_dim(x);
  return body_.contains(x) ? height_ : 0.0;
}

TentField::TentField(ConvexBody body, double height)
    : ScalarField(body.dim()), body_(std::move(body)), height_(height) {
  if (!(height >= 0.0) || !std::isfinite(height)) throw DomainError("tent height must be nonnegative");
  claim_.p = ExtExponent::finite(1.0);
}

double TentField::eval(std::span<const double> x) const {
  check_dim(x);
  return height_ * std::max(0.0, 1.0 - body_.gauge(x));
}

double TentField::lipschitz_bound() const { return height_ / body_.inradius(); }

GaussianSliceField::GaussianSliceField(int dim, double t) : ScalarField(dim), t_(t) {
  require_positive(t, "gaussian time");
  claim_.p = ExtExponent::finite(0.0);
  claim_.strict = true;
}

double GaussianSliceField::eval(std::span<const double> x) const {
  check_dim(x);
  return std::pow(4.0 * std::numbers::pi * t_, -0.5 * dim_) * std::exp(-squared_norm(x) / (4.0 * t_));
}

double GaussianSliceField::sup_bound() const { return std::pow(4.0 * std::numbers::pi * t_, -0.5 * dim_); }

double GaussianSliceField::lipschitz_bound() const {
  return sup_bound() * std::exp(-0.5) / std::sqrt(2.0 * t_);
}

PoissonSliceField::PoissonSliceField(int dim, double t) : ScalarField(dim), t_(t) {
  require_positive(t, "poisson time");
  claim_.p = ExtExponent::finite(-1.0 / (dim + 1));
  claim_.strict = true;
}

double PoissonSliceField::eval(std::span<const double> x) const {
  check_dim(x);
  return 2.0 * t_ / sphere_area(dim_) * std::pow(squared_norm(x) + t_ * t_, -0.5 * (dim_ + 1));
}

double PoissonSliceField::sup_bound() const {
  return 2.0 * t_ / sphere_area(dim_) * std::pow(t_, -(dim_ + 1.0));
}

double PoissonSliceField::lipschitz_bound() const {
  const double r = t_ / std::sqrt(dim_ + 2.0);
  return 2.0 * t_ / sphere_area(dim_) * (dim_ + 1.0) * r * std::pow(r * r + t_ * t_, -0.5 * (dim_ + 3));
}

RadialField::RadialField(int dim, RadialProfile profile) : ScalarField(dim), profile_(std::move(profile)) {
  profile_.validate();
  claim_.p = ExtExponent::minus_inf();
  claim_.strict = profile_.strictly_decreasing;
}

double RadialField::eval(std::span<const double> x) const {
  check_dim(x);
  return profile_.k(std::sqrt(squared_norm(x)));
}

ConstantField::ConstantField(int dim, double c) : ScalarField(dim), c_(c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("constant field must be nonnegative");
  claim_.p = ExtExponent::plus_inf();
}

double ConstantField::eval(std::span<const double> x) const {
  check_dim(x);
  return c_;
}

ProductField::ProductField(std::vector<ScalarFieldPtr> factors)
    : ScalarField(factors.empty() || !factors.front() ? 1 : factors.front()->dim()), factors_(std::move(factors)) {
  if (factors_.empty()) throw DomainError("product: no factors");
  for (const auto& f : factors_) {
    if (!f) throw DomainError("product: null factor");
    if (f->dim() != dim_) throw DomainError("product: factor dimension mismatch");
  }
}

double ProductField::eval(std::span<const double> x) const {
  check_dim(x);
  double v = 1.0;
  for (const auto& f : factors_) {
    v *= f->eval(x);
    if (v == 0.0) return 0.0;
  }
  return v;
}

Evaluated ProductField::eval_with_noise(std::span<const double> x) const {
  check_dim(x);
  double v = 1.0, rel = 0.0;
  for (const auto& f : factors_) {
    const auto e = f->eval_with_noise(x);
    v *= e.value;
    if (e.value == 0.0) return {0.0, 0.0};
    rel += e.noise / e.value;
  }
  return {v, (rel + kUlpNoise) * v};
}

std::optional<ConvexBody> ProductField::support() const {
  std::optional<ConvexBody> best;
  for (const auto& f : factors_) {
    auto s = f->support();
    if (!s) continue;
    if (!best || s->volume() < best->volume()) best = std::move(s);
  }
  return best;
}

double ProductField::sup_bound() const {
  double s = 1.0;
  for (const auto& f : factors_) s *= f->sup_bound();
  return s;
}

double ProductField::lipschitz_bound() const {
  double total = 0.0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    double term = factors_[i]->lipschitz_bound();
    if (term == 0.0) continue;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      if (j != i) term *= factors_[j]->sup_bound();
    }
    total += term;
  }
  return total;
}

CustomGridField::CustomGridField(Vec lo, Vec hi, std::vector<int> counts, std::vector<double> values)
    : ScalarField(static_cast<int>(lo.size())),
      lo_(std::move(lo)),
      hi_(std::move(hi)),
      counts_(std::move(counts)),
      values_(std::move(values)) {
  if (hi_.size() != lo_.size() || counts_.size() != lo_.size()) {
    throw DomainError("custom_grid: lo, hi and counts must have the same length");
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (!(lo_[i] < hi_[i])) throw DomainError("custom_grid: requires lo < hi");
    if (counts_[i] < 2) throw DomainError("custom_grid: at least two nodes per axis");
    total *= static_cast<std::size_t>(counts_[i]);
  }
  if (values_.size() != total) throw DomainError("custom_grid: value count does not match the grid");
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("custom_grid: values must be nonnegative and finite");
  }
}

double CustomGridField::eval(std::span<const double> x) const {
  check_dim(x);
  const std::size_t n = lo_.size();
  std::vector<std::size_t> base(n);
  std::vector<double> frac(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < lo_[i] || x[i] > hi_[i]) return 0.0;
    const double h = (hi_[i] - lo_[i]) / (counts_[i] - 1);
    double pos = (x[i] - lo_[i]) / h;
    auto k = static_cast<std::size_t>(std::floor(pos));
    if (k >= static_cast<std::size_t>(counts_[i] - 1)) k = static_cast<std::size_t>(counts_[i] - 2);
    base[i] = k;
    frac[i] = pos - static_cast<double>(k);
  }
  double total = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double w = 1.0;
    std::size_t index = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool up = (mask >> i) & 1u;
      w *= up ? frac[i] : 1.0 - frac[i];
      index = index * static_cast<std::size_t>(counts_[i]) + base[i] + (up ? 1 : 0);
    }
    if (w != 0.0) total += w * values_[index];
  }
  return total;
}

std::optional<ConvexBody> CustomGridField::support() const {
  if (lo_.size() == 1) return ConvexBody::interval(lo_[0], hi_[0]);
  return ConvexBody::box(lo_, hi_);
}

double CustomGridField::sup_bound() const { return *std::max_element(values_.begin(), values_.end()); }

double CustomGridField::lipschitz_bound() const {
  // Each axis slope is bounded by the largest node difference along it.
  const std::size_t n = lo_.size();
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t i = n - 1; i > 0; --i) stride[i - 1] = stride[i] * static_cast<std::size_t>(counts_[i]);
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = (hi_[i] - lo_[i]) / (counts_[i] - 1);
    double slope = 0.0;
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
      const std::size_t coord = (idx / stride[i]) % static_cast<std::size_t>(counts_[i]);
      if (coord + 1 < static_cast<std::size_t>(counts_[i])) {
        slope = std::max(slope, std::abs(values_[idx + stride[i]] - values_[idx]) / h);
      }
    }
    sum_sq += slope * slope;
  }
  return std::sqrt(sum_sq);
}

TranslatedField::TranslatedField(ScalarFieldPtr inner, Vec shift)
    : ScalarField(inner ? inner->dim() : 1), inner_(std::move(inner)), shift_(std::move(shift)) {
  if (!inner_) throw DomainError("translated: null field");
  if (static_cast<int>(shift_.size()) != dim_) throw DomainError("translated: shift dimension mismatch");
  claim_ = inner_->claim();
}

double TranslatedField::eval(std::span<const double> x) const {
  check_dim(x);
  Vec y(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= shift_[i];
  return inner_->eval(y);
}

Evaluated TranslatedField::eval_with_noise(std::span<const double> x) const {
  check_dim(x);
  Vec y(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= shift_[i];
  return inner_->eval_with_noise(y);
}

std::optional<ConvexBody> TranslatedField::support() const {
  auto s = inner_->support();
  if (!s) return s;
  return s->scaled_translated(1.0, shift_);
}

SliceField::SliceField(SpaceTimeFieldPtr phi, double t)
    : ScalarField(phi ? phi->dim() : 1), phi_(std::move(phi)), t_(t) {
  if (!phi_) throw DomainError("slice: null field");
  if (!phi_->in_time_domain(t)) throw DomainError("slice: time outside the field's interval");
  claim_.p = phi_->claim().p;
  claim_.strict = phi_->claim().strict;
}

double SliceField::eval(std::span<const double> x) const { return phi_->eval(x, t_); }

Evaluated SliceField::eval_with_noise(std::span<const double> x) const { return phi_->eval_with_noise(x, t_); }

// ---- space-time families ---------------------------------------------------

GaussWeierstrassKernel::GaussWeierstrassKernel(int dim) : SpaceTimeField(dim, 0.0, kInf) {
  claim_.p = ExtExponent::finite(-1.0 / dim);
  claim_.alpha = 0.5;
  claim_.almost_strict = true;
}

double GaussWeierstrassKernel::value(std::span<const double> x, double t) const {
  return std::pow(4.0 * std::numbers::pi * t, -0.5 * dim_) * std::exp(-squared_norm(x) / (4.0 * t));
}

PoissonKernel::PoissonKernel(int dim) : SpaceTimeField(dim, 0.0, kInf), norm_(2.0 / sphere_area(dim)) {
  claim_.p = ExtExponent::finite(-1.0 / dim);
  claim_.alpha = 1.0;
  claim_.almost_strict = true;
}

double PoissonKernel::value(std::span<const double> x, double t) const {
  return norm_ * t * std::pow(squared_norm(x) + t * t, -0.5 * (dim_ + 1));
}

KappaExpKernel::KappaExpKernel(int dim, double a, double b, double c)
    : SpaceTimeField(dim, 0.0, kInf), a_(a), b_(b), c_(c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) throw DomainError("kappa_exp: parameters must be finite");
  if (a == 0.0) throw DomainError("kappa_exp: requires a != 0");
  if (!(b >= 1.0)) throw DomainError("kappa_exp: requires b >= 1");
  if (!(c / a < 0.0)) throw DomainError("kappa_exp: requires c/a < 0");
  claim_.p = ExtExponent::finite(c / (a * b));
  claim_.alpha = c / b;
  claim_.almost_strict = true;
}

double KappaExpKernel::value(std::span<const double> x, double t) const {
  const double r = std::sqrt(squared_norm(x));
  return std::pow(t, a_) * std::exp(-std::pow(r, b_) / std::pow(t, c_));
}

KappaPowerKernel::KappaPowerKernel(int dim, double a, double b, double c)
    : SpaceTimeField(dim, 0.0, kInf), a_(a), b_(b), c_(c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) throw DomainError("kappa_power: parameters must be finite");
  if (!(a >= 0.0)) throw DomainError("kappa_power: requires a >= 0");
  if (!(b >= 1.0)) throw DomainError("kappa_power: requires b >= 1");
  if (!(c < 0.0)) throw DomainError("kappa_power: requires c < 0");
  if (a == 0.0 && b == 1.0) throw DomainError("kappa_power: requires (a,b) != (0,1)");
  if (!(c < -a)) throw DomainError("kappa_power: requires c < -a");
  claim_.p = ExtExponent::finite(1.0 / (a + c));
  claim_.alpha = 1.0;
  claim_.almost_strict = true;
}

double KappaPowerKernel::value(std::span<const double> x, double t) const {
  const double r = std::sqrt(squared_norm(x));
  return std::pow(t, a_) * std::pow(std::pow(r, b_) + std::pow(t, b_), c_ / b_);
}

LiftedField::LiftedField(ScalarFieldPtr f, ExtExponent p, double alpha)
    : SpaceTimeField(f ? f->dim() : 1, 0.0, kInf), f_(std::move(f)), p_(p), alpha_(alpha) {
  if (!f_) throw DomainError("lift: null field");
  if (!p_.is_finite()) throw DomainError("lift: exponent must be finite");
  if (alpha == 0.0 || !std::isfinite(alpha)) throw DomainError("lift: alpha must be finite and nonzero");
  claim_.p = p_;
  claim_.alpha = alpha;
  claim_.strict = false;
}

double LiftedField::lift(double fv, double t) const {
  const double ta = std::pow(t, alpha_);
  if (p_.is_zero()) {
    if (fv <= 0.0) return 0.0;
    return std::exp(ta * std::log(fv));
  }
  if (fv <= 0.0) return 0.0;
  return std::pow(t, alpha_ / p_.value()) * fv;
}

double LiftedField::value(std::span<const double> x, double t) const {
  const double ta = std::pow(t, alpha_);
  Vec y(x.begin(), x.end());
  for (auto& c : y) c /= ta;
  return lift(f_->eval(y), t);
}

Evaluated LiftedField::value_with_noise(std::span<const double> x, double t) const {
  const double ta = std::pow(t, alpha_);
  Vec y(x.begin(), x.end());
  for (auto& c : y) c /= ta;
  const auto e = f_->eval_with_noise(y);
  const double v = lift(e.value, t);
  if (v == 0.0 || e.value == 0.0) return {v, 0.0};
  // exp(ta log f) amplifies relative error by ta.
  const double rel = e.noise / e.value * (p_.is_zero() ? ta : 1.0);
  return {v, (rel + kUlpNoise) * v};
}

Conjugate0Field::Conjugate0Field(SpaceTimeFieldPtr phi)
    : SpaceTimeField(phi ? phi->dim() : 1, 1.0, kInf), phi_(std::move(phi)) {
  if (!phi_) throw DomainError("conjugate0: null field");
  if (phi_->t_lo() > 0.0) throw DomainError("conjugate0: inner field must be defined on (0, inf)");
  t_hi_ = std::isfinite(phi_->t_hi()) ? std::exp(phi_->t_hi()) : kInf;
  claim_ = phi_->claim();
  if (claim_.alpha) claim_.alpha = 0.0;
}

double Conjugate0Field::value(std::span<const double> x, double t) const { return phi_->eval(x, std::log(t)); }

Evaluated Conjugate0Field::value_with_noise(std::span<const double> x, double t) const {
  return phi_->eval_with_noise(x, std::log(t));
}

Conjugate0InverseField::Conjugate0InverseField(SpaceTimeFieldPtr phi)
    : SpaceTimeField(phi ? phi->dim() : 1, 0.0, kInf), phi_(std::move(phi)) {
  if (!phi_) throw DomainError("conjugate0_inverse: null field");
  if (phi_->t_lo() > 1.0) throw DomainError("conjugate0_inverse: inner field must be defined on (1, inf)");
  t_hi_ = std::isfinite(phi_->t_hi()) ? std::log(phi_->t_hi()) : kInf;
  claim_ = phi_->claim();
  if (claim_.alpha) claim_.alpha = 1.0;
}

double Conjugate0InverseField::value(std::span<const double> x, double t) const {
  return phi_->eval(x, std::exp(t));
}

Evaluated Conjugate0InverseField::value_with_noise(std::span<const double> x, double t) const {
  return phi_->eval_with_noise(x, std::exp(t));
}

ShiftedField::ShiftedField(SpaceTimeFieldPtr phi)
    : SpaceTimeField(phi ? 2 * phi->dim() : 2, phi ? phi->t_lo() : 0.0, phi ? phi->t_hi() : kInf),
      phi_(std::move(phi)) {
  if (!phi_) throw DomainError("shifted: null field");
  claim_ = phi_->claim();
  claim_.strict = false;
  claim_.almost_strict = false;
}

double ShiftedField::eval3(std::span<const double> x, std::span<const double> y, double t) const {
  if (x.size() != y.size() || static_cast<int>(x.size()) != phi_->dim()) {
    throw DomainError("shifted: point has the wrong dimension");
  }
  Vec d(x.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = x[i] - y[i];
  return phi_->eval(d, t);
}

double ShiftedField::value(std::span<const double> z, double t) const {
  const std::size_t n = z.size() / 2;
  return eval3(z.first(n), z.subspan(n), t);
}

Evaluated ShiftedField::value_with_noise(std::span<const double> z, double t) const {
  const std::size_t n = z.size() / 2;
  Vec d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = z[i] - z[n + i];
  return phi_->eval_with_noise(d, t);
}

RescaledField::RescaledField(SpaceTimeFieldPtr phi, double c, double s, double tau)
    : SpaceTimeField(phi ? phi->dim() : 1, phi ? phi->t_lo() / tau : 0.0, phi ? phi->t_hi() / tau : kInf),
      phi_(std::move(phi)),
      c_(c),
      s_(s),
      tau_(tau) {
  if (!phi_) throw DomainError("rescaled: null field");
  require_positive(c, "rescaled c");
  require_positive(tau, "rescaled tau");
  if (s == 0.0 || !std::isfinite(s)) throw DomainError("rescaled: s must be nonzero");
  claim_ = phi_->claim();
}

double RescaledField::value(std::span<const double> x, double t) const {
  Vec y(x.begin(), x.end());
  for (auto& v : y) v *= s_;
  return c_ * phi_->eval(y, tau_ * t);
}

Evaluated RescaledField::value_with_noise(std::span<const double> x, double t) const {
  Vec y(x.begin(), x.end());
  for (auto& v : y) v *= s_;
  auto e = phi_->eval_with_noise(y, tau_ * t);
  return {c_ * e.value, c_ * e.noise + kUlpNoise * c_ * e.value};
}

FunctionField::FunctionField(int dim, double t_lo, double t_hi, Fn fn, std::string name, ConcavityClaim claim)
    : SpaceTimeField(dim, t_lo, t_hi), fn_(std::move(fn)), name_(std::move(name)) {
  if (!fn_) throw DomainError("function field: empty callable");
  claim_ = std::move(claim);
}

// ---- constructors ----------------------------------------------------------

ScalarFieldPtr make_indicator(ConvexBody body, double height) {
  return std::make_shared<IndicatorField>(std::move(body), height);
}
ScalarFieldPtr make_tent(ConvexBody body, double height) {
  return std::make_shared<TentField>(std::move(body), height);
}
ScalarFieldPtr make_gaussian(int dim, double t) { return std::make_shared<GaussianSliceField>(dim, t); }
ScalarFieldPtr make_poisson_slice(int dim, double t) { return std::make_shared<PoissonSliceField>(dim, t); }
ScalarFieldPtr radialize(int dim, RadialProfile profile) {
  return std::make_shared<RadialField>(dim, std::move(profile));
}
ScalarFieldPtr make_constant(int dim, double c) { return std::make_shared<ConstantField>(dim, c); }
ScalarFieldPtr make_product(std::vector<ScalarFieldPtr> factors) {
  return std::make_shared<ProductField>(std::move(factors));
}
ScalarFieldPtr make_translated(ScalarFieldPtr f, Vec shift) {
  return std::make_shared<TranslatedField>(std::move(f), std::move(shift));
}
ScalarFieldPtr make_slice(SpaceTimeFieldPtr phi, double t) { return std::make_shared<SliceField>(std::move(phi), t); }
ScalarFieldPtr power_kappa_slice(int dim, double a, double b, double c, double t) {
  return make_slice(make_kappa_power(dim, a, b, c), t);
}

SpaceTimeFieldPtr make_gauss_weierstrass(int dim) { return std::make_shared<GaussWeierstrassKernel>(dim); }
SpaceTimeFieldPtr make_poisson_kernel(int dim) { return std::make_shared<PoissonKernel>(dim); }
SpaceTimeFieldPtr make_kappa_exp(int dim, double a, double b, double c) {
  return std::make_shared<KappaExpKernel>(dim, a, b, c);
}
SpaceTimeFieldPtr make_kappa_power(int dim, double a, double b, double c) {
  return std::make_shared<KappaPowerKernel>(dim, a, b, c);
}
SpaceTimeFieldPtr lift(ScalarFieldPtr f, ExtExponent p, double alpha) {
  return std::make_shared<LiftedField>(std::move(f), p, alpha);
}
SpaceTimeFieldPtr conjugate0(SpaceTimeFieldPtr phi) {
  if (auto inv = std::dynamic_pointer_cast<const Conjugate0InverseField>(phi)) return inv->inner();
  return std::make_shared<Conjugate0Field>(std::move(phi));
}
SpaceTimeFieldPtr conjugate0_inverse(SpaceTimeFieldPtr phi) {
  if (auto c = std::dynamic_pointer_cast<const Conjugate0Field>(phi)) return c->inner();
  return std::make_shared<Conjugate0InverseField>(std::move(phi));
}
std::shared_ptr<const ShiftedField> shifted(SpaceTimeFieldPtr phi) {
  return std::make_shared<ShiftedField>(std::move(phi));
}
SpaceTimeFieldPtr rescaled(SpaceTimeFieldPtr phi, double c, double s, double tau) {
  return std::make_shared<RescaledField>(std::move(phi), c, s, tau);
}

}  // namespace powconc
