#include "powconc/extmeans.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>

#include "powconc/errors.hpp"

namespace powconc {

namespace {

// Below this |p| the mean is evaluated as the geometric mean in log form.
constexpr double kGeometricCutoff = 1e-12;

int rank(ExtExponent::Kind k) {
  switch (k) {
    case ExtExponent::Kind::minus_inf:
      return 0;
    case ExtExponent::Kind::finite:
      return 1;
    case ExtExponent::Kind::plus_inf:
      return 2;
  }
  return 1;
}

std::string lowercase_trim(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = text.find_last_not_of(" \t\r\n");
  std::string out(text.substr(first, last - first + 1));
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

double geometric_log_form(double a, double b, double lambda) {
  return std::exp((1.0 - lambda) * std::log(a) + lambda * std::log(b));
}

// ((1-l) a^r + l b^r)^(1/r) for 0 < |r| < 1 via a shifted log-sum-exp.
// With c the dominant argument (c^r >= the other) the bracket equals
// c^r (1 + w expm1(r ln(other/c))), w the other's weight. The log of the
// ratio keeps nearly equal arguments accurate.
double small_power_mean(double r, double a, double b, double lambda) {
  const bool a_dominates = r * std::log(a) >= r * std::log(b);
  const double c = a_dominates ? a : b;
  const double other = a_dominates ? b : a;
  const double w = a_dominates ? lambda : 1.0 - lambda;
  const double ratio = other / c;
  const double log_ratio = std::isnormal(ratio) ? std::log(ratio) : std::log(other) - std::log(c);
  const double s = std::log1p(w * std::expm1(r * log_ratio));
  return c * std::exp(s / r);
}

// Direct form, normalised so both ratios raised to r are <= 1.
double large_power_mean(double r, double a, double b, double lambda) {
  const double c = r > 0.0 ? std::max(a, b) : std::min(a, b);
  const double sum = (1.0 - lambda) * std::pow(a / c, r) + lambda * std::pow(b / c, r);
  return c * std::pow(sum, 1.0 / r);
}

}  // namespace

ExtExponent ExtExponent::finite(double r) {
  if (!std::isfinite(r)) {
    throw DomainError("ExtExponent::finite: value must be a finite real");
  }
  return ExtExponent(Kind::finite, r);
}

ExtExponent ExtExponent::from_double(double r) {
  if (std::isnan(r)) throw DomainError("ExtExponent: NaN is not an exponent");
  if (std::isinf(r)) return r > 0 ? plus_inf() : minus_inf();
  return ExtExponent(Kind::finite, r);
}

ExtExponent ExtExponent::parse(std::string_view text) {
  const std::string s = lowercase_trim(text);
  if (s == "inf" || s == "+inf" || s == "infinity" || s == "+infinity") return plus_inf();
  if (s == "-inf" || s == "-infinity") return minus_inf();
  if (s.empty()) throw InputError("empty exponent");
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (*begin == '+') ++begin;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw InputError("cannot parse exponent '" + std::string(text) + "'");
  }
  return ExtExponent(Kind::finite, value);
}

double ExtExponent::value() const {
  if (!is_finite()) throw DomainError("ExtExponent::value on an infinite exponent");
  return value_;
}

double ExtExponent::as_double() const {
  switch (kind_) {
    case Kind::plus_inf:
      return std::numeric_limits<double>::infinity();
    case Kind::minus_inf:
      return -std::numeric_limits<double>::infinity();
    case Kind::finite:
      break;
  }
  return value_;
}

std::string ExtExponent::to_string() const {
  switch (kind_) {
    case Kind::plus_inf:
      return "inf";
    case Kind::minus_inf:
      return "-inf";
    case Kind::finite:
      break;
  }
  return fmt::format("{}", value_);
}

std::weak_ordering operator<=>(const ExtExponent& a, const ExtExponent& b) {
  const int ra = rank(a.kind_);
  const int rb = rank(b.kind_);
  if (ra != rb) return ra <=> rb;
  if (!a.is_finite()) return std::weak_ordering::equivalent;
  if (a.value_ < b.value_) return std::weak_ordering::less;
  if (a.value_ > b.value_) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

void MeanQuery::validate() const {
  if (!(a >= 0.0) || !(b >= 0.0)) throw DomainError("mean_p: arguments must be nonnegative");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("mean_p: lambda must lie in [0,1]");
}

double mean_p(const ExtExponent& p, const MeanQuery& q) {
  q.validate();
  const double a = q.a;
  const double b = q.b;
  const double lambda = q.lambda;
  if (a == 0.0 || b == 0.0) return 0.0;
  if (lambda == 0.0) return a;
  if (lambda == 1.0) return b;
  if (a == b) return a;

  if (p.is_plus_inf()) return std::max(a, b);
  if (p.is_minus_inf()) return std::min(a, b);

  const double r = p.value();
  if (r == 0.0) return std::pow(a, 1.0 - lambda) * std::pow(b, lambda);
  if (std::abs(r) < kGeometricCutoff) return geometric_log_form(a, b, lambda);
  if (std::abs(r) < 1.0) return small_power_mean(r, a, b, lambda);
  return large_power_mean(r, a, b, lambda);
}

ExtExponent ext_sum(const ExtExponent& p, const ExtExponent& q) {
  if (p.is_finite() && q.is_finite()) return ExtExponent::from_double(p.value() + q.value());
  if (p.is_finite()) return q;
  if (q.is_finite()) return p;
  if (p.kind() == q.kind()) return p;
  return ExtExponent::finite(0.0);
}

ExtExponent ell_exponent(const ExtExponent& p, const ExtExponent& q) {
  const ExtExponent sum = ext_sum(p, q);
  if (sum < ExtExponent::finite(0.0)) {
    throw DomainError("ell_exponent: requires p + q >= 0, got p = " + p.to_string() +
                      ", q = " + q.to_string());
  }
  if (p.is_finite() && q.is_finite()) {
    const double s = p.value() + q.value();
    if (s == 0.0) {
      return (p.value() == 0.0 && q.value() == 0.0) ? ExtExponent::finite(0.0)
                                                    : ExtExponent::minus_inf();
    }
    return ExtExponent::from_double(p.value() * q.value() / s);
  }
  // At least one operand is infinite and the sum is >= 0.
  if (p.is_plus_inf() && q.is_plus_inf()) return ExtExponent::plus_inf();
  if (!p.is_finite() && !q.is_finite()) return ExtExponent::minus_inf();  // +inf + -inf := 0
  // Exactly one is +inf: lim_{s->inf} f s / (f + s) = f.
  return p.is_finite() ? p : q;
}

ExtExponent bbl_exponent(const ExtExponent& ell, int n) {
  if (n < 1) throw DomainError("bbl_exponent: dimension must be positive");
  if (ell.is_plus_inf()) return ExtExponent::finite(1.0 / n);
  if (ell.is_minus_inf()) throw DomainError("bbl_exponent: requires ell >= -1/n");
  const double l = ell.value();
  const double denom = 1.0 + n * l;
  constexpr double boundary = 8.0 * std::numeric_limits<double>::epsilon();
  if (std::abs(denom) <= boundary) return ExtExponent::minus_inf();
  if (denom < 0.0) {
    throw DomainError("bbl_exponent: requires ell >= -1/n, got " + ell.to_string());
  }
  return ExtExponent::finite(l / denom);
}

ProductMargin check_product_inequality(const ExtExponent& p, const ExtExponent& q, double a,
                                       double b, double c, double d, double lambda) {
  ProductMargin out;
  out.ell = ell_exponent(p, q);
  out.lhs = mean_p(p, a, b, lambda) * mean_p(q, c, d, lambda);
  out.rhs = mean_p(out.ell, a * c, b * d, lambda);
  out.margin = out.lhs - out.rhs;
  return out;
}

}  // namespace powconc
