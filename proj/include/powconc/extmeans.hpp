#pragma once

// Extended-real exponents and the weighted power mean of two nonnegative
// numbers. Everything here is a pure function of its arguments.

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace powconc {

/// An exponent in R u {+inf, -inf}. Infinities are tags, never large floats.
class ExtExponent {
 public:
  enum class Kind { finite, plus_inf, minus_inf };

  constexpr ExtExponent() = default;

  /// Throws DomainError for NaN or IEEE infinities; use plus_inf()/minus_inf().
  static ExtExponent finite(double r);
  static constexpr ExtExponent plus_inf() { return ExtExponent(Kind::plus_inf, 0.0); }
  static constexpr ExtExponent minus_inf() { return ExtExponent(Kind::minus_inf, 0.0); }

  /// Maps IEEE +-inf onto the tags; NaN is rejected.
  static ExtExponent from_double(double r);

  /// Accepts "inf", "+inf", "infinity", "-inf", or a decimal number.
  static ExtExponent parse(std::string_view text);

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::finite; }
  constexpr bool is_plus_inf() const { return kind_ == Kind::plus_inf; }
  constexpr bool is_minus_inf() const { return kind_ == Kind::minus_inf; }
  bool is_zero() const { return is_finite() && value_ == 0.0; }

  /// Finite value; throws DomainError on an infinite exponent.
  double value() const;

  /// IEEE view: +-infinity for the tags.
  double as_double() const;

  /// "inf", "-inf", or the shortest round-trip decimal.
  std::string to_string() const;

  friend std::weak_ordering operator<=>(const ExtExponent& a, const ExtExponent& b);
  friend bool operator==(const ExtExponent& a, const ExtExponent& b) {
    return (a <=> b) == std::weak_ordering::equivalent;
  }

 private:
  constexpr ExtExponent(Kind k, double v) : kind_(k), value_(v) {}

  Kind kind_ = Kind::finite;
  double value_ = 0.0;
};

/// Arguments of M_p(a, b; lambda).
struct MeanQuery {
  double a = 0.0;
  double b = 0.0;
  double lambda = 0.0;

  /// Throws DomainError unless a, b >= 0 and 0 <= lambda <= 1.
  void validate() const;
};

/// Weighted p-th mean: 0 when ab = 0; ((1-l)a^p + l b^p)^(1/p) for finite
/// p != 0; a^(1-l) b^l for p = 0; max / min for p = +inf / -inf.
double mean_p(const ExtExponent& p, const MeanQuery& q);
inline double mean_p(const ExtExponent& p, double a, double b, double lambda) {
  return mean_p(p, MeanQuery{a, b, lambda});
}

/// Sum under the convention (+inf) + (-inf) = 0.
ExtExponent ext_sum(const ExtExponent& p, const ExtExponent& q);

/// Exponent of the product inequality M_p(a,b) M_q(c,d) >= M_l(ac, bd):
/// pq/(p+q), -inf when p+q = 0 and (p,q) != (0,0), 0 at (0,0). One infinite
/// operand is resolved by the limit of pq/(p+q). Requires p + q >= 0.
ExtExponent ell_exponent(const ExtExponent& p, const ExtExponent& q);

/// l/(1 + n l), with -inf at l = -1/n and 1/n at l = +inf. Requires l >= -1/n.
ExtExponent bbl_exponent(const ExtExponent& ell, int n);

/// Margin of the product inequality:
/// M_p(a,b;l) M_q(c,d;l) - M_ell(ac, bd; l), ell = ell_exponent(p, q).
struct ProductMargin {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  ExtExponent ell;
};

ProductMargin check_product_inequality(const ExtExponent& p, const ExtExponent& q, double a,
                                       double b, double c, double d, double lambda);

/// Weighted mean of two times used in parabolic combinations; alias of
/// mean_p with a finite exponent.
inline double time_mean(double alpha, double t0, double t1, double lambda) {
  return mean_p(ExtExponent::finite(alpha), t0, t1, lambda);
}

}  // namespace powconc
