#pragma once

// Gamma(x,t) = int phi(x - y, t) psi(y) dy over a compact support, with
// closed forms for interval data in one dimension.

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "powconc/fields.hpp"
#include "powconc/geometry.hpp"

namespace powconc {

struct QuadratureSpec {
  enum class Scheme { tensor_grid, monte_carlo };

  Scheme scheme = Scheme::tensor_grid;
  int points_per_axis = 256;
  std::size_t mc_samples = 200000;
  std::uint64_t seed = 1;
  ConvexBody support = ConvexBody::interval(-1.0, 1.0);
  /// ResolutionError when est_error exceeds this.
  std::optional<double> error_budget;
  int threads = 1;

  /// 256 points per axis for n = 1, 96 for n = 2, Monte Carlo beyond.
  static QuadratureSpec defaults_for(ConvexBody support);
  void validate() const;
};

struct ConvolutionResult {
  double value = 0.0;
  double est_error = 0.0;
};

ConvolutionResult convolve_at(const SpaceTimeField& phi, const ScalarField& psi, std::span<const double> x, double t,
                              const QuadratureSpec& quad);

ConvolutionResult gauss_weierstrass_integral(const ScalarField& g, std::span<const double> x, double t,
                                             const QuadratureSpec& quad);
ConvolutionResult poisson_integral(const ScalarField& g, std::span<const double> x, double t,
                                   const QuadratureSpec& quad);

/// W chi_[a,b](x, t) in closed form.
double oracle_W_interval(double a, double b, double x, double t);
/// P chi_[a,b](x, t) in closed form: the viewing angle of [a,b] from (x,t) over pi.
double oracle_P_interval(double a, double b, double x, double t);

/// Integral of the kernel over R^n at time t by radial quadrature;
/// kernel is "gw" or "poisson". Poisson tails are added analytically (n <= 2).
double kernel_mass(const std::string& kernel, int n, double t);

/// Gamma as a space-time field; eval noise is the quadrature error estimate.
class ConvolutionField : public SpaceTimeField {
 public:
  ConvolutionField(SpaceTimeFieldPtr phi, ScalarFieldPtr psi, QuadratureSpec quad);
  std::string family() const override { return "convolution"; }
  const SpaceTimeFieldPtr& kernel() const { return phi_; }
  const ScalarFieldPtr& data() const { return psi_; }
  const QuadratureSpec& quadrature() const { return quad_; }

 protected:
  double value(std::span<const double> x, double t) const override;
  Evaluated value_with_noise(std::span<const double> x, double t) const override;

 private:
  SpaceTimeFieldPtr phi_;
  ScalarFieldPtr psi_;
  QuadratureSpec quad_;
};

/// Closed-form W chi_[a,b] on R x (0, inf).
class WIntervalOracle : public SpaceTimeField {
 public:
  WIntervalOracle(double a, double b);
  std::string family() const override { return "weierstrass_interval"; }
  double a() const { return a_; }
  double b() const { return b_; }

 protected:
  double value(std::span<const double> x, double t) const override;
  Evaluated value_with_noise(std::span<const double> x, double t) const override;

 private:
  double a_, b_;
};

/// Closed-form P chi_[a,b] on R x (0, inf).
class PIntervalOracle : public SpaceTimeField {
 public:
  PIntervalOracle(double a, double b);
  std::string family() const override { return "poisson_interval"; }
  double a() const { return a_; }
  double b() const { return b_; }

 protected:
  double value(std::span<const double> x, double t) const override;
  Evaluated value_with_noise(std::span<const double> x, double t) const override;

 private:
  double a_, b_;
};

SpaceTimeFieldPtr make_convolution(SpaceTimeFieldPtr phi, ScalarFieldPtr psi, QuadratureSpec quad);
SpaceTimeFieldPtr make_w_interval(double a, double b);
SpaceTimeFieldPtr make_p_interval(double a, double b);

}  // namespace powconc
