#pragma once

// Nonnegative functions on R^n (ScalarField) and on R^n x I (SpaceTimeField).
// Fields are immutable and shared through shared_ptr<const ...>.

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "powconc/extmeans.hpp"
#include "powconc/geometry.hpp"

namespace powconc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Declared concavity of a field. Advisory; the concavity module verifies it.
struct ConcavityClaim {
  std::optional<ExtExponent> p;
  std::optional<double> alpha;  // set for parabolic claims
  bool strict = false;
  bool almost_strict = false;
};

/// A value with an absolute error estimate.
struct Evaluated {
  double value = 0.0;
  double noise = 0.0;
};

class ScalarField {
 public:
  explicit ScalarField(int dim);
  virtual ~ScalarField() = default;

  int dim() const { return dim_; }
  virtual std::string family() const = 0;
  virtual double eval(std::span<const double> x) const = 0;
  /// Default noise is a few ulp of the value.
  virtual Evaluated eval_with_noise(std::span<const double> x) const;

  /// A body outside which the field vanishes, if any.
  virtual std::optional<ConvexBody> support() const { return std::nullopt; }
  /// Upper bound on values; +inf when unknown.
  virtual double sup_bound() const { return kInf; }
  /// Lipschitz bound on the interior of the support; +inf when unknown.
  virtual double lipschitz_bound() const { return kInf; }

  const ConcavityClaim& claim() const { return claim_; }

 protected:
  void check_dim(std::span<const double> x) const;
  int dim_;
  ConcavityClaim claim_;
};

using ScalarFieldPtr = std::shared_ptr<const ScalarField>;

class SpaceTimeField {
 public:
  /// Time domain is t_lo < t <= t_hi.
  SpaceTimeField(int dim, double t_lo, double t_hi);
  virtual ~SpaceTimeField() = default;

  int dim() const { return dim_; }
  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }
  bool in_time_domain(double t) const { return t > t_lo_ && t <= t_hi_; }

  virtual std::string family() const = 0;
  /// Throws DomainError for t outside the time domain.
  double eval(std::span<const double> x, double t) const;
  Evaluated eval_with_noise(std::span<const double> x, double t) const;

  const ConcavityClaim& claim() const { return claim_; }

 protected:
  virtual double value(std::span<const double> x, double t) const = 0;
  virtual Evaluated value_with_noise(std::span<const double> x, double t) const;

  int dim_;
  double t_lo_, t_hi_;
  ConcavityClaim claim_;
};

using SpaceTimeFieldPtr = std::shared_ptr<const SpaceTimeField>;

/// sigma_n(S^n) = 2 pi^((n+1)/2) / Gamma((n+1)/2), the area of the unit n-sphere.
double sphere_area(int n);

// ---- radial profiles -------------------------------------------------------

struct RadialProfile {
  std::function<double(double)> k;
  bool strictly_decreasing = false;
  std::string name = "custom";
  std::vector<double> params;
  double sup = kInf;
  double lipschitz = kInf;

  /// exp(-s r^beta), s > 0, beta >= 1.
  static RadialProfile exp_power(double s, double beta);
  /// (1 + r^2)^(-gamma), gamma > 0.
  static RadialProfile power(double gamma);
  static RadialProfile constant(double c);
  /// Checks nonnegativity and, if flagged, strict decrease on sampled radii.
  void validate() const;
};

// ---- scalar families -------------------------------------------------------

class IndicatorField : public ScalarField {
 public:
  IndicatorField(ConvexBody body, double height);
  std::string family() const override { return "indicator"; }
  double eval(std::span<const double> x) const override;
  std::optional<ConvexBody> support() const override { return body_; }
  double sup_bound() const override { return height_; }
  double lipschitz_bound() const override { return 0.0; }
  const ConvexBody& body() const { return body_; }
  double height() const { return height_; }

 private:
  ConvexBody body_;
  double height_;
};

/// c (1 - gauge_K(x)) on K, 0 outside: an affine cap over the body.
class TentField : public ScalarField {
 public:
  TentField(ConvexBody body, double height);
  std::string family() const override { return "tent"; }
  double eval(std::span<const double> x) const override;
  std::optional<ConvexBody> support() const override { return body_; }
  double sup_bound() const override { return height_; }
  double lipschitz_bound() const override;
  const ConvexBody& body() const { return body_; }
  double height() const { return height_; }

 private:
  ConvexBody body_;
  double height_;
};

/// Gauss-Weierstrass kernel at a fixed time.
class GaussianSliceField : public ScalarField {
 public:
  GaussianSliceField(int dim, double t);
  std::string family() const override { return "gaussian"; }
  double eval(std::span<const double> x) const override;
  double sup_bound() const override;
  double lipschitz_bound() const override;
  double time() const { return t_; }

 private:
  double t_;
};

/// Poisson kernel at a fixed time.
class PoissonSliceField : public ScalarField {
 public:
  PoissonSliceField(int dim, double t);
  std::string family() const override { return "poisson_slice"; }
  double eval(std::span<const double> x) const override;
  double sup_bound() const override;
  double lipschitz_bound() const override;
  double time() const { return t_; }

 private:
  double t_;
};

/// k(|x|).
class RadialField : public ScalarField {
 public:
  RadialField(int dim, RadialProfile profile);
  std::string family() const override { return "radial"; }
  double eval(std::span<const double> x) const override;
  double sup_bound() const override { return profile_.sup; }
  double lipschitz_bound() const override { return profile_.lipschitz; }
  const RadialProfile& profile() const { return profile_; }

 private:
  RadialProfile profile_;
};

class ConstantField : public ScalarField {
 public:
  ConstantField(int dim, double c);
  std::string family() const override { return "constant"; }
  double eval(std::span<const double> x) const override;
  double sup_bound() const override { return c_; }
  double lipschitz_bound() const override { return 0.0; }
  double value() const { return c_; }

 private:
  double c_;
};

class ProductField : public ScalarField {
 public:
  explicit ProductField(std::vector<ScalarFieldPtr> factors);
  std::string family() const override { return "product"; }
  double eval(std::span<const double> x) const override;
  Evaluated eval_with_noise(std::span<const double> x) const override;
  /// Smallest-volume compact support among the factors.
  std::optional<ConvexBody> support() const override;
  double sup_bound() const override;
  double lipschitz_bound() const override;
  const std::vector<ScalarFieldPtr>& factors() const { return factors_; }

 private:
  std::vector<ScalarFieldPtr> factors_;
};

/// Multilinear interpolation of node values on a regular grid over the box
/// [lo, hi]; 0 outside. Values are row-major with the last axis fastest.
class CustomGridField : public ScalarField {
 public:
  CustomGridField(Vec lo, Vec hi, std::vector<int> counts, std::vector<double> values);
  std::string family() const override { return "custom_grid"; }
  double eval(std::span<const double> x) const override;
  std::optional<ConvexBody> support() const override;
  double sup_bound() const override;
  double lipschitz_bound() const override;
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }
  const std::vector<int>& counts() const { return counts_; }
  const std::vector<double>& values() const { return values_; }

 private:
  Vec lo_, hi_;
  std::vector<int> counts_;
  std::vector<double> values_;
};

/// f(x - shift).
class TranslatedField : public ScalarField {
 public:
  TranslatedField(ScalarFieldPtr inner, Vec shift);
  std::string family() const override { return "translated"; }
  double eval(std::span<const double> x) const override;
  Evaluated eval_with_noise(std::span<const double> x) const override;
  std::optional<ConvexBody> support() const override;
  double sup_bound() const override { return inner_->sup_bound(); }
  double lipschitz_bound() const override { return inner_->lipschitz_bound(); }
  const ScalarFieldPtr& inner() const { return inner_; }
  const Vec& shift() const { return shift_; }

 private:
  ScalarFieldPtr inner_;
  Vec shift_;
};

/// x -> phi(x, t) at a fixed time.
class SliceField : public ScalarField {
 public:
  SliceField(SpaceTimeFieldPtr phi, double t);
  std::string family() const override { return "slice"; }
  double eval(std::span<const double> x) const override;
  Evaluated eval_with_noise(std::span<const double> x) const override;
  const SpaceTimeFieldPtr& inner() const { return phi_; }
  double time() const { return t_; }

 private:
  SpaceTimeFieldPtr phi_;
  double t_;
};

// ---- space-time families ---------------------------------------------------

class GaussWeierstrassKernel : public SpaceTimeField {
 public:
  explicit GaussWeierstrassKernel(int dim);
  std::string family() const override { return "gauss_weierstrass"; }

 protected:
  double value(std::span<const double> x, double t) const override;
};

class PoissonKernel : public SpaceTimeField {
 public:
  explicit PoissonKernel(int dim);
  std::string family() const override { return "poisson_kernel"; }

 protected:
  double value(std::span<const double> x, double t) const override;

 private:
  double norm_;
};

/// t^a exp(-|x|^b / t^c); needs a != 0, b >= 1, c/a < 0.
class KappaExpKernel : public SpaceTimeField {
 public:
  KappaExpKernel(int dim, double a, double b, double c);
  std::string family() const override { return "kappa_exp"; }
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

 protected:
  double value(std::span<const double> x, double t) const override;

 private:
  double a_, b_, c_;
};

/// t^a (|x|^b + t^b)^(c/b); needs a >= 0, b >= 1, c < 0, (a,b) != (0,1), c < -a.
class KappaPowerKernel : public SpaceTimeField {
 public:
  KappaPowerKernel(int dim, double a, double b, double c);
  std::string family() const override { return "kappa_power"; }
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

 protected:
  double value(std::span<const double> x, double t) const override;

 private:
  double a_, b_, c_;
};

/// t^(alpha/p) f(x/t^alpha) for p != 0, exp(t^alpha log f(x/t^alpha)) for
/// p = 0 (0 where f vanishes).
class LiftedField : public SpaceTimeField {
 public:
  LiftedField(ScalarFieldPtr f, ExtExponent p, double alpha);
  std::string family() const override { return "lift"; }
  const ScalarFieldPtr& inner() const { return f_; }
  const ExtExponent& exponent() const { return p_; }
  double alpha() const { return alpha_; }

 protected:
  double value(std::span<const double> x, double t) const override;
  Evaluated value_with_noise(std::span<const double> x, double t) const override;

 private:
  double lift(double fv, double t) const;
  ScalarFieldPtr f_;
  ExtExponent p_;
  double alpha_;
};

/// phi(x, log t) on (1, inf).
class Conjugate0Field : public SpaceTimeField {
 public:
  explicit Conjugate0Field(SpaceTimeFieldPtr phi);
  std::string family() const override { return "conjugate0"; }
  const SpaceTimeFieldPtr& inner() const { return phi_; }

 protected:
  double value(std::span<const double> x, double t) const override;
  Evaluated value_with_noise(std::span<const double> x, double t) const override;

 private:
  SpaceTimeFieldPtr phi_;
};

/// phi(x, e^t); inverse of Conjugate0Field.
class Conjugate0InverseField : public SpaceTimeField {
 public:
  explicit Conjugate0InverseField(SpaceTimeFieldPtr phi);
  std::string family() const override { return "conjugate0_inverse"; }
  const SpaceTimeFieldPtr& inner() const { return phi_; }

 protected:
  double value(std::span<const double> x, double t) const override;
  Evaluated value_with_noise(std::span<const double> x, double t) const override;

 private:
  SpaceTimeFieldPtr phi_;
};

/// Phi(x, y, t) = phi(x - y, t) as a field on R^(2n) x I, z = (x, y).
class ShiftedField : public SpaceTimeField {
 public:
  explicit ShiftedField(SpaceTimeFieldPtr phi);
  std::string family() const override { return "shifted"; }
  const SpaceTimeFieldPtr& inner() const { return phi_; }
  double eval3(std::span<const double> x, std::span<const double> y, double t) const;

 protected:
  double value(std::span<const double> z, double t) const override;
  Evaluated value_with_noise(std::span<const double> z, double t) const override;

 private:
  SpaceTimeFieldPtr phi_;
};

/// c phi(s x, tau t).
class RescaledField : public SpaceTimeField {
 public:
  RescaledField(SpaceTimeFieldPtr phi, double c, double s, double tau);
  std::string family() const override { return "rescaled"; }
  const SpaceTimeFieldPtr& inner() const { return phi_; }
  double c() const { return c_; }
  double s() const { return s_; }
  double tau() const { return tau_; }

 protected:
  double value(std::span<const double> x, double t) const override;
  Evaluated value_with_noise(std::span<const double> x, double t) const override;

 private:
  SpaceTimeFieldPtr phi_;
  double c_, s_, tau_;
};

/// Wraps an arbitrary callable.
class FunctionField : public SpaceTimeField {
 public:
  using Fn = std::function<double(std::span<const double>, double)>;
  FunctionField(int dim, double t_lo, double t_hi, Fn fn, std::string name = "function",
                ConcavityClaim claim = {});
  std::string family() const override { return name_; }

 protected:
  double value(std::span<const double> x, double t) const override { return fn_(x, t); }

 private:
  Fn fn_;
  std::string name_;
};

// ---- constructors ----------------------------------------------------------

ScalarFieldPtr make_indicator(ConvexBody body, double height = 1.0);
ScalarFieldPtr make_tent(ConvexBody body, double height = 1.0);
ScalarFieldPtr make_gaussian(int dim, double t);
ScalarFieldPtr make_poisson_slice(int dim, double t);
ScalarFieldPtr radialize(int dim, RadialProfile profile);
ScalarFieldPtr make_constant(int dim, double c);
ScalarFieldPtr make_product(std::vector<ScalarFieldPtr> factors);
ScalarFieldPtr make_translated(ScalarFieldPtr f, Vec shift);
ScalarFieldPtr make_slice(SpaceTimeFieldPtr phi, double t);
/// kappa_power(a,b,c)(|x|, t) at a fixed t.
ScalarFieldPtr power_kappa_slice(int dim, double a, double b, double c, double t);

SpaceTimeFieldPtr make_gauss_weierstrass(int dim);
SpaceTimeFieldPtr make_poisson_kernel(int dim);
SpaceTimeFieldPtr make_kappa_exp(int dim, double a, double b, double c);
SpaceTimeFieldPtr make_kappa_power(int dim, double a, double b, double c);
SpaceTimeFieldPtr lift(ScalarFieldPtr f, ExtExponent p, double alpha);
SpaceTimeFieldPtr conjugate0(SpaceTimeFieldPtr phi);
/// Unwraps a Conjugate0Field instead of stacking a second wrapper.
SpaceTimeFieldPtr conjugate0_inverse(SpaceTimeFieldPtr phi);
std::shared_ptr<const ShiftedField> shifted(SpaceTimeFieldPtr phi);
SpaceTimeFieldPtr rescaled(SpaceTimeFieldPtr phi, double c, double s, double tau);

}  // namespace powconc
