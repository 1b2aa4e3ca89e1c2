#pragma once

// Convex bodies, support functions, Minkowski algebra and alpha-parabolic
// regions in R^n x (0, inf).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace powconc {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// { y : y . u <= h } with |u| = 1.
class HalfSpace {
 public:
  HalfSpace(double h, Vec u);
  double offset() const { return h_; }
  const Vec& normal() const { return u_; }
  bool contains(std::span<const double> y, double slack = 0.0) const;

 private:
  double h_;
  Vec u_;
};

/// Compact convex set with nonempty interior. Immutable after construction.
class ConvexBody {
 public:
  struct Interval {
    double a, b;
  };
  struct Box {
    Vec lo, hi;
  };
  struct Ball {
    Vec center;
    double radius;
  };
  struct Polytope {
    std::vector<Vec> vertices;
    std::vector<HalfSpace> facets;  // derived from the vertices
  };
  using Shape = std::variant<Interval, Box, Ball, Polytope>;

  static ConvexBody interval(double a, double b);
  static ConvexBody box(Vec lo, Vec hi);
  static ConvexBody ball(Vec center, double radius);
  /// Convex hull of the vertices; they must affinely span R^n.
  static ConvexBody polytope(std::vector<Vec> vertices);

  int dim() const { return dim_; }
  const Shape& shape() const { return shape_; }
  std::string kind_name() const;

  bool contains(std::span<const double> x) const;
  /// Membership with an absolute slack added to every defining inequality.
  bool contains(std::span<const double> x, double slack) const;

  /// h_K(u) = max over K of x . u. u need not be normalised.
  double support(std::span<const double> u) const;
  /// A point of K attaining the support value in direction u.
  Vec support_point(std::span<const double> u) const;

  /// Centre used for gauges and interior constructions.
  Vec interior_point() const;
  /// Radius of a ball about interior_point() contained in K.
  double inradius() const;
  /// Minkowski gauge about interior_point(): <= 1 exactly on K.
  double gauge(std::span<const double> x) const;

  std::pair<Vec, Vec> bounding_box() const;
  double diameter() const;
  /// Closed-form volume (interval, box, ball; polytopes in n <= 2).
  double volume() const;
  /// (n-1)-dimensional boundary measure; count of endpoints when n = 1.
  double surface_measure() const;

  /// c K + shift. c != 0; negative c reflects.
  ConvexBody scaled_translated(double c, std::span<const double> shift) const;

 private:
  ConvexBody(int dim, Shape shape) : dim_(dim), shape_(std::move(shape)) {}

  int dim_;
  Shape shape_;
};

/// mu X + nu Y. Throws NotRepresentable when the shape family is not closed
/// under the combination (e.g. ball + polytope), DegenerateInput when
/// mu = nu = 0.
ConvexBody minkowski_combine(double mu, const ConvexBody& x, double nu, const ConvexBody& y);
/// mu X + nu {y}. Requires mu != 0.
ConvexBody minkowski_combine(double mu, const ConvexBody& x, double nu, std::span<const double> y);

/// The intersection of two scaled translates of K built from a pair of
/// space-time points; represented lazily by its two factors.
struct KPrime {
  ConvexBody first;   // t1^a ((l/t0^a + (1-l)/t1^a) K - l d)
  ConvexBody second;  // t0^a ((l/t0^a + (1-l)/t1^a) K + (1-l) d)
  double scale_factor = 0.0;  // l/t0^a + (1-l)/t1^a
  Vec offset;                 // d = x0/t0^a - x1/t1^a

  bool contains(std::span<const double> y) const { return first.contains(y) && second.contains(y); }
  /// Exact [lo, hi] per axis when both factors are intervals or boxes;
  /// nullopt otherwise or when the intersection is empty.
  std::optional<std::pair<Vec, Vec>> box_bounds() const;
};

/// alpha != 0 uses t^alpha; alpha = 0 uses log t and needs t0, t1 > 1.
KPrime kprime(const ConvexBody& k, std::span<const double> x0, std::span<const double> x1,
              double t0, double t1, double alpha, double lambda);

/// A point of int(Omega) outside s K - mu v, with K the closure of Omega.
/// Requires s in (0,1], mu >= 0, (s, mu) != (1, 0), |v| = 1.
Vec interior_witness_outside(const ConvexBody& omega, double s, double mu, std::span<const double> v);

/// Interior test with margin delta: y +- delta e_i all lie in the body.
bool is_interior(const ConvexBody& body, std::span<const double> y, double delta);

/// Intersection of half-spaces through the origin { x : x . u_i <= 0 }.
/// No normals means all of R^n.
struct ConeDescriptor {
  int dim = 1;
  std::vector<Vec> normals;

  static ConeDescriptor whole_space(int n) { return ConeDescriptor{n, {}}; }
  /// signs[i] = +1 keeps x_i >= 0, -1 keeps x_i <= 0, 0 leaves axis free.
  static ConeDescriptor orthant(const std::vector<int>& signs);
  bool contains(std::span<const double> x) const;
};

using BaseSet = std::variant<ConvexBody, ConeDescriptor>;

/// Subset of R^n x (0, inf) with a membership test and a sampling box.
class ParabolicRegion {
 public:
  enum class Kind { hat, cylinder, predicate };
  using Predicate = std::function<bool(std::span<const double>, double)>;

  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  Kind kind() const { return kind_; }
  bool contains(std::span<const double> x, double t) const;

  const Vec& x_lo() const { return x_lo_; }
  const Vec& x_hi() const { return x_hi_; }
  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }

  /// Custom region; lo/hi/t_lo/t_hi bound the part used for sampling.
  static ParabolicRegion from_predicate(int dim, double alpha, Predicate member, Vec x_lo,
                                        Vec x_hi, double t_lo, double t_hi);
  /// A x [t_lo, t_hi].
  static ParabolicRegion cylinder(const ConvexBody& base, double alpha, double t_lo, double t_hi);

 private:
  friend ParabolicRegion hat_region(const BaseSet& a, double alpha, double t_lo, double t_hi,
                                    std::optional<std::pair<Vec, Vec>> x_box);
  ParabolicRegion() = default;

  int dim_ = 1;
  double alpha_ = 1.0;
  Kind kind_ = Kind::predicate;
  Predicate member_;
  Vec x_lo_, x_hi_;
  double t_lo_ = 0.0, t_hi_ = 0.0;
};

/// { (x,t) : x / t^alpha in A } (alpha != 0) or { t > 1 : x / log t in A }
/// (alpha = 0). [t_lo, t_hi] and x_box only bound the sampling window;
/// x_box defaults to the image of A's bounding box for bodies and [-1,1]^n
/// for cones.
ParabolicRegion hat_region(const BaseSet& a, double alpha, double t_lo, double t_hi,
                           std::optional<std::pair<Vec, Vec>> x_box = std::nullopt);

/// (x / t^alpha, 1 / t^alpha), or (x / log t, 1 / log t) when alpha = 0.
Vec omega_chart(double alpha, std::span<const double> x, double t);
inline Vec omega_chart(const ParabolicRegion& e, std::span<const double> x, double t) {
  return omega_chart(e.alpha(), x, t);
}
/// Inverse of omega_chart: chart point (y, s) back to (x, t).
std::pair<Vec, double> omega_chart_inverse(double alpha, std::span<const double> ys);

struct ConvexityReport {
  bool direct_pass = true;
  bool chart_pass = true;
  bool chart_checked = false;
  std::size_t samples_used = 0;
  // Witness of the first violation found (direct test preferred).
  Vec x0, x1;
  double t0 = 0.0, t1 = 0.0, lambda = 0.0;

  bool pass() const { return direct_pass && (!chart_checked || chart_pass); }
};

/// Samples member pairs and lambda; fails if (x_l, M_alpha(t0,t1;l)) leaves
/// E. Also tests convexity of the omega chart image on the same pairs.
ConvexityReport check_parabolic_convexity(const ParabolicRegion& e, std::size_t samples,
                                          std::uint64_t seed);

}  // namespace powconc
