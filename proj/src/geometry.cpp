#include "powconc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "powconc/errors.hpp"
#include "powconc/extmeans.hpp"
#include "powconc/rng.hpp"

namespace powconc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_dim(std::span<const double> x, int n, const char* what) {
  if (static_cast<int>(x.size()) != n) {
    throw DomainError(std::string(what) + ": dimension mismatch");
  }
}

// Enumerates supporting hyperplanes through n vertices that leave every
// vertex on one side. Exponential in n, fine for the small polytopes used
// here.
std::vector<HalfSpace> polytope_facets(const std::vector<Vec>& vertices, int n) {
  if (n == 1) {
    double lo = vertices.front()[0], hi = lo;
    for (const auto& v : vertices) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return {HalfSpace(hi, {1.0}), HalfSpace(-lo, {-1.0})};
  }

  const std::size_t count = vertices.size();
  double scale = 0.0;
  for (const auto& v : vertices) {
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) d2 += (v[i] - vertices[0][i]) * (v[i] - vertices[0][i]);
    scale = std::max(scale, std::sqrt(d2));
  }
  const double tol = 1e-10 * std::max(scale, 1.0);

  std::vector<HalfSpace> facets;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);

  auto consider = [&] {
    Eigen::MatrixXd diffs(n - 1, n);
    for (int r = 1; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        diffs(r - 1, c) = vertices[idx[static_cast<std::size_t>(r)]][static_cast<std::size_t>(c)] -
                          vertices[idx[0]][static_cast<std::size_t>(c)];
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(diffs);
    lu.setThreshold(1e-12);
    if (lu.rank() != n - 1) return;
    Eigen::VectorXd kernel = lu.kernel().col(0);
    kernel.normalize();
    Vec u(kernel.data(), kernel.data() + n);
    const double b = dot(u, vertices[idx[0]]);
    double above = -std::numeric_limits<double>::infinity();
    double below = std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) {
      const double s = dot(u, v) - b;
      above = std::max(above, s);
      below = std::min(below, s);
    }
    double h = b;
    if (above <= tol) {
      // all on the negative side
    } else if (below >= -tol) {
      for (auto& c : u) c = -c;
      h = -b;
    } else {
      return;
    }
    for (const auto& f : facets) {
      double du = 0.0;
      for (int i = 0; i < n; ++i) du += std::abs(f.normal()[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i)]);
      if (du < 1e-9 && std::abs(f.offset() - h) < tol) return;
    }
    facets.emplace_back(h, std::move(u));
  };

  // Lexicographic n-subsets of [0, count).
  while (true) {
    consider();
    int k = n - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == count - static_cast<std::size_t>(n - k)) --k;
    if (k < 0) break;
    ++idx[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < n; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return facets;
}

std::vector<Vec> corner_vertices(const Vec& lo, const Vec& hi) {
  const std::size_t n = lo.size();
  std::vector<Vec> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1u ? hi[i] : lo[i];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vec> as_vertices(const ConvexBody& body) {
  return std::visit(
      Overloaded{[](const ConvexBody::Interval& s) { return std::vector<Vec>{{s.a}, {s.b}}; },
                 [](const ConvexBody::Box& s) { return corner_vertices(s.lo, s.hi); },
                 [](const ConvexBody::Ball&) -> std::vector<Vec> {
                   throw NotRepresentable("a ball has no vertex representation");
                 },
                 [](const ConvexBody::Polytope& s) { return s.vertices; }},
      body.shape());
}

// Planar convex hull, counter-clockwise (monotone chain).
std::vector<Vec> planar_hull(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end());
  auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Vec> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

HalfSpace::HalfSpace(double h, Vec u) : h_(h), u_(std::move(u)) {
  if (std::abs(norm(u_) - 1.0) > 1e-12) throw DomainError("HalfSpace: normal must be a unit vector");
}

bool HalfSpace::contains(std::span<const double> y, double slack) const {
  return dot(y, u_) <= h_ + slack;
}

ConvexBody ConvexBody::interval(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("interval: requires finite a < b");
  }
  return ConvexBody(1, Interval{a, b});
}

ConvexBody ConvexBody::box(Vec lo, Vec hi) {
  if (lo.empty() || lo.size() != hi.size()) throw DomainError("box: lo/hi dimension mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i])) {
      throw DomainError("box: requires finite lo < hi componentwise");
    }
  }
  const int n = static_cast<int>(lo.size());
  return ConvexBody(n, Box{std::move(lo), std::move(hi)});
}

ConvexBody ConvexBody::ball(Vec center, double radius) {
  if (center.empty()) throw DomainError("ball: empty centre");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("ball: radius must be positive");
  const int n = static_cast<int>(center.size());
  return ConvexBody(n, Ball{std::move(center), radius});
}

ConvexBody ConvexBody::polytope(std::vector<Vec> vertices) {
  if (vertices.empty() || vertices.front().empty()) throw DomainError("polytope: no vertices");
  const std::size_t n = vertices.front().size();
  for (const auto& v : vertices) {
    if (v.size() != n) throw DomainError("polytope: vertex dimension mismatch");
  }
  if (vertices.size() < n + 1) throw DomainError("polytope: vertices must affinely span R^n");
  Eigen::MatrixXd diffs(static_cast<Eigen::Index>(vertices.size() - 1), static_cast<Eigen::Index>(n));
  for (std::size_t r = 1; r < vertices.size(); ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      diffs(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(c)) = vertices[r][c] - vertices[0][c];
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(diffs);
  lu.setThreshold(1e-12);
  if (lu.rank() != static_cast<Eigen::Index>(n)) {
    throw DomainError("polytope: vertices must affinely span R^n");
  }
  auto facets = polytope_facets(vertices, static_cast<int>(n));
  return ConvexBody(static_cast<int>(n), Polytope{std::move(vertices), std::move(facets)});
}

std::string ConvexBody::kind_name() const {
  return std::visit(Overloaded{[](const Interval&) { return std::string("interval"); },
                               [](const Box&) { return std::string("box"); },
                               [](const Ball&) { return std::string("ball"); },
                               [](const Polytope&) { return std::string("polytope"); }},
                    shape_);
}

bool ConvexBody::contains(std::span<const double> x) const {
  // Polytope facets are computed in floating point; allow rounding-level slack.
  if (std::holds_alternative<Polytope>(shape_)) return contains(x, 1e-12 * std::max(1.0, diameter()));
  return contains(x, 0.0);
}

bool ConvexBody::contains(std::span<const double> x, double slack) const {
  require_dim(x, dim_, "ConvexBody::contains");
  return std::visit(
      Overloaded{[&](const Interval& s) { return x[0] >= s.a - slack && x[0] <= s.b + slack; },
                 [&](const Box& s) {
                   for (std::size_t i = 0; i < s.lo.size(); ++i) {
                     if (x[i] < s.lo[i] - slack || x[i] > s.hi[i] + slack) return false;
                   }
                   return true;
                 },
                 [&](const Ball& s) {
                   double d2 = 0.0;
                   for (std::size_t i = 0; i < s.center.size(); ++i) {
                     d2 += (x[i] - s.center[i]) * (x[i] - s.center[i]);
                   }
                   return std::sqrt(d2) <= s.radius + slack;
                 },
                 [&](const Polytope& s) {
                   for (const auto& f : s.facets) {
                     if (!f.contains(x, slack)) return false;
                   }
                   return true;
                 }},
      shape_);
}

double ConvexBody::support(std::span<const double> u) const {
  require_dim(u, dim_, "ConvexBody::support");
  return std::visit(
      Overloaded{[&](const Interval& s) { return std::max(s.a * u[0], s.b * u[0]); },
                 [&](const Box& s) {
                   double h = 0.0;
                   for (std::size_t i = 0; i < s.lo.size(); ++i) h += std::max(s.lo[i] * u[i], s.hi[i] * u[i]);
                   return h;
                 },
                 [&](const Ball& s) { return dot(s.center, u) + s.radius * norm(u); },
                 [&](const Polytope& s) {
                   double h = -std::numeric_limits<double>::infinity();
                   for (const auto& v : s.vertices) h = std::max(h, dot(v, u));
                   return h;
                 }},
      shape_);
}

Vec ConvexBody::support_point(std::span<const double> u) const {
  require_dim(u, dim_, "ConvexBody::support_point");
  return std::visit(
      Overloaded{[&](const Interval& s) { return Vec{u[0] >= 0.0 ? s.b : s.a}; },
                 [&](const Box& s) {
                   Vec p(s.lo.size());
                   for (std::size_t i = 0; i < p.size(); ++i) {
                     p[i] = u[i] > 0.0 ? s.hi[i] : (u[i] < 0.0 ? s.lo[i] : 0.5 * (s.lo[i] + s.hi[i]));
                   }
                   return p;
                 },
                 [&](const Ball& s) {
                   const double len = norm(u);
                   Vec p = s.center;
                   if (len > 0.0) {
                     for (std::size_t i = 0; i < p.size(); ++i) p[i] += s.radius * u[i] / len;
                   }
                   return p;
                 },
                 [&](const Polytope& s) {
                   std::size_t best = 0;
                   for (std::size_t k = 1; k < s.vertices.size(); ++k) {
                     if (dot(s.vertices[k], u) > dot(s.vertices[best], u)) best = k;
                   }
                   return s.vertices[best];
                 }},
      shape_);
}

Vec ConvexBody::interior_point() const {
  return std::visit(Overloaded{[](const Interval& s) { return Vec{0.5 * (s.a + s.b)}; },
                               [](const Box& s) {
                                 Vec c(s.lo.size());
                                 for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (s.lo[i] + s.hi[i]);
                                 return c;
                               },
                               [](const Ball& s) { return s.center; },
                               [](const Polytope& s) {
                                 Vec c(s.vertices.front().size(), 0.0);
                                 for (const auto& v : s.vertices) {
                                   for (std::size_t i = 0; i < c.size(); ++i) c[i] += v[i];
                                 }
                                 for (auto& ci : c) ci /= static_cast<double>(s.vertices.size());
                                 return c;
                               }},
                    shape_);
}

double ConvexBody::inradius() const {
  return std::visit(Overloaded{[](const Interval& s) { return 0.5 * (s.b - s.a); },
                               [](const Box& s) {
                                 double r = std::numeric_limits<double>::infinity();
                                 for (std::size_t i = 0; i < s.lo.size(); ++i) r = std::min(r, 0.5 * (s.hi[i] - s.lo[i]));
                                 return r;
                               },
                               [](const Ball& s) { return s.radius; },
                               [this](const Polytope& s) {
                                 const Vec c = interior_point();
                                 double r = std::numeric_limits<double>::infinity();
                                 for (const auto& f : s.facets) r = std::min(r, f.offset() - dot(f.normal(), c));
                                 return r;
                               }},
                    shape_);
}

double ConvexBody::gauge(std::span<const double> x) const {
  require_dim(x, dim_, "ConvexBody::gauge");
  return std::visit(
      Overloaded{[&](const Interval& s) { return std::abs(x[0] - 0.5 * (s.a + s.b)) / (0.5 * (s.b - s.a)); },
                 [&](const Box& s) {
                   double g = 0.0;
                   for (std::size_t i = 0; i < s.lo.size(); ++i) {
                     g = std::max(g, std::abs(x[i] - 0.5 * (s.lo[i] + s.hi[i])) / (0.5 * (s.hi[i] - s.lo[i])));
                   }
                   return g;
                 },
                 [&](const Ball& s) {
                   double d2 = 0.0;
                   for (std::size_t i = 0; i < s.center.size(); ++i) d2 += (x[i] - s.center[i]) * (x[i] - s.center[i]);
                   return std::sqrt(d2) / s.radius;
                 },
                 [&](const Polytope& s) {
                   const Vec c = interior_point();
                   Vec rel(x.begin(), x.end());
                   for (std::size_t i = 0; i < rel.size(); ++i) rel[i] -= c[i];
                   double g = 0.0;
                   for (const auto& f : s.facets) {
                     g = std::max(g, dot(f.normal(), rel) / (f.offset() - dot(f.normal(), c)));
                   }
                   return g;
                 }},
      shape_);
}

std::pair<Vec, Vec> ConvexBody::bounding_box() const {
  return std::visit(Overloaded{[](const Interval& s) { return std::pair<Vec, Vec>{{s.a}, {s.b}}; },
                               [](const Box& s) { return std::pair<Vec, Vec>{s.lo, s.hi}; },
                               [](const Ball& s) {
                                 Vec lo = s.center, hi = s.center;
                                 for (std::size_t i = 0; i < lo.size(); ++i) {
                                   lo[i] -= s.radius;
                                   hi[i] += s.radius;
                                 }
                                 return std::pair<Vec, Vec>{lo, hi};
                               },
                               [](const Polytope& s) {
                                 Vec lo = s.vertices.front(), hi = lo;
                                 for (const auto& v : s.vertices) {
                                   for (std::size_t i = 0; i < lo.size(); ++i) {
                                     lo[i] = std::min(lo[i], v[i]);
                                     hi[i] = std::max(hi[i], v[i]);
                                   }
                                 }
                                 return std::pair<Vec, Vec>{lo, hi};
                               }},
                    shape_);
}

double ConvexBody::diameter() const {
  return std::visit(Overloaded{[](const Interval& s) { return s.b - s.a; },
                               [](const Box& s) {
                                 double d2 = 0.0;
                                 for (std::size_t i = 0; i < s.lo.size(); ++i) d2 += (s.hi[i] - s.lo[i]) * (s.hi[i] - s.lo[i]);
                                 return std::sqrt(d2);
                               },
                               [](const Ball& s) { return 2.0 * s.radius; },
                               [](const Polytope& s) {
                                 double d = 0.0;
                                 for (const auto& a : s.vertices) {
                                   for (const auto& b : s.vertices) {
                                     double d2 = 0.0;
                                     for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
                                     d = std::max(d, std::sqrt(d2));
                                   }
                                 }
                                 return d;
                               }},
                    shape_);
}

double ConvexBody::volume() const {
  return std::visit(
      Overloaded{[](const Interval& s) { return s.b - s.a; },
                 [](const Box& s) {
                   double v = 1.0;
                   for (std::size_t i = 0; i < s.lo.size(); ++i) v *= s.hi[i] - s.lo[i];
                   return v;
                 },
                 [](const Ball& s) {
                   const double n = static_cast<double>(s.center.size());
                   return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0) * std::pow(s.radius, n);
                 },
                 [this](const Polytope& s) {
                   if (dim_ == 1) return diameter();
                   if (dim_ != 2) throw NotRepresentable("polytope volume is only available for n <= 2");
                   const auto hull = planar_hull(s.vertices);
                   double area = 0.0;
                   for (std::size_t i = 0; i < hull.size(); ++i) {
                     const auto& p = hull[i];
                     const auto& q = hull[(i + 1) % hull.size()];
                     area += p[0] * q[1] - q[0] * p[1];
                   }
                   return 0.5 * std::abs(area);
                 }},
      shape_);
}

double ConvexBody::surface_measure() const {
  return std::visit(
      Overloaded{[](const Interval&) { return 2.0; },
                 [](const Box& s) {
                   const std::size_t n = s.lo.size();
                   if (n == 1) return 2.0;
                   double total = 0.0;
                   for (std::size_t i = 0; i < n; ++i) {
                     double face = 1.0;
                     for (std::size_t j = 0; j < n; ++j) {
                       if (j != i) face *= s.hi[j] - s.lo[j];
                     }
                     total += 2.0 * face;
                   }
                   return total;
                 },
                 [this](const Ball& s) {
                   if (dim_ == 1) return 2.0;
                   return static_cast<double>(dim_) * volume() / s.radius;
                 },
                 [this](const Polytope& s) {
                   if (dim_ == 1) return 2.0;
                   if (dim_ != 2) throw NotRepresentable("polytope surface is only available for n <= 2");
                   const auto hull = planar_hull(s.vertices);
                   double per = 0.0;
                   for (std::size_t i = 0; i < hull.size(); ++i) {
                     const auto& p = hull[i];
                     const auto& q = hull[(i + 1) % hull.size()];
                     per += std::hypot(q[0] - p[0], q[1] - p[1]);
                   }
                   return per;
                 }},
      shape_);
}

ConvexBody ConvexBody::scaled_translated(double c, std::span<const double> shift) const {
  require_dim(shift, dim_, "ConvexBody::scaled_translated");
  if (c == 0.0 || !std::isfinite(c)) throw DegenerateInput("scaled_translated: scale must be nonzero");
  return std::visit(
      Overloaded{[&](const Interval& s) {
                   const double p = c * s.a + shift[0], q = c * s.b + shift[0];
                   return ConvexBody::interval(std::min(p, q), std::max(p, q));
                 },
                 [&](const Box& s) {
                   Vec lo(s.lo.size()), hi(s.lo.size());
                   for (std::size_t i = 0; i < lo.size(); ++i) {
                     const double p = c * s.lo[i] + shift[i], q = c * s.hi[i] + shift[i];
                     lo[i] = std::min(p, q);
                     hi[i] = std::max(p, q);
                   }
                   return ConvexBody::box(std::move(lo), std::move(hi));
                 },
                 [&](const Ball& s) {
                   Vec m(s.center.size());
                   for (std::size_t i = 0; i < m.size(); ++i) m[i] = c * s.center[i] + shift[i];
                   return ConvexBody::ball(std::move(m), std::abs(c) * s.radius);
                 },
                 [&](const Polytope& s) {
                   std::vector<Vec> verts = s.vertices;
                   for (auto& v : verts) {
                     for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * v[i] + shift[i];
                   }
                   return ConvexBody::polytope(std::move(verts));
                 }},
      shape_);
}

ConvexBody minkowski_combine(double mu, const ConvexBody& x, double nu, const ConvexBody& y) {
  if (x.dim() != y.dim()) throw DomainError("minkowski_combine: dimension mismatch");
  const Vec zero(static_cast<std::size_t>(x.dim()), 0.0);
  if (mu == 0.0 && nu == 0.0) throw DegenerateInput("minkowski_combine: mu and nu are both zero");
  if (mu == 0.0) return y.scaled_translated(nu, zero);
  if (nu == 0.0) return x.scaled_translated(mu, zero);

  const ConvexBody a = x.scaled_translated(mu, zero);
  const ConvexBody b = y.scaled_translated(nu, zero);
  const bool a_ball = std::holds_alternative<ConvexBody::Ball>(a.shape());
  const bool b_ball = std::holds_alternative<ConvexBody::Ball>(b.shape());
  if (a_ball && b_ball) {
    const auto& p = std::get<ConvexBody::Ball>(a.shape());
    const auto& q = std::get<ConvexBody::Ball>(b.shape());
    Vec c(p.center.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.center[i] + q.center[i];
    return ConvexBody::ball(std::move(c), p.radius + q.radius);
  }
  if (a_ball || b_ball) {
    throw NotRepresentable("minkowski_combine: " + a.kind_name() + " + " + b.kind_name() +
                           " has no closed representation; use support functions");
  }
  const bool a_axis = !std::holds_alternative<ConvexBody::Polytope>(a.shape());
  const bool b_axis = !std::holds_alternative<ConvexBody::Polytope>(b.shape());
  if (a_axis && b_axis) {
    auto [alo, ahi] = a.bounding_box();
    auto [blo, bhi] = b.bounding_box();
    for (std::size_t i = 0; i < alo.size(); ++i) {
      alo[i] += blo[i];
      ahi[i] += bhi[i];
    }
    if (std::holds_alternative<ConvexBody::Interval>(a.shape()) &&
        std::holds_alternative<ConvexBody::Interval>(b.shape())) {
      return ConvexBody::interval(alo[0], ahi[0]);
    }
    return ConvexBody::box(std::move(alo), std::move(ahi));
  }
  const auto va = as_vertices(a);
  const auto vb = as_vertices(b);
  std::vector<Vec> sums;
  sums.reserve(va.size() * vb.size());
  for (const auto& p : va) {
    for (const auto& q : vb) {
      Vec s(p.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = p[i] + q[i];
      sums.push_back(std::move(s));
    }
  }
  if (x.dim() == 2) sums = planar_hull(std::move(sums));
  return ConvexBody::polytope(std::move(sums));
}

ConvexBody minkowski_combine(double mu, const ConvexBody& x, double nu, std::span<const double> y) {
  require_dim(y, x.dim(), "minkowski_combine");
  if (mu == 0.0) throw DegenerateInput("minkowski_combine: mu = 0 leaves a single point");
  Vec shift(y.begin(), y.end());
  for (auto& s : shift) s *= nu;
  return x.scaled_translated(mu, shift);
}

std::optional<std::pair<Vec, Vec>> KPrime::box_bounds() const {
  auto axis_aligned = [](const ConvexBody& b) {
    return std::holds_alternative<ConvexBody::Interval>(b.shape()) ||
           std::holds_alternative<ConvexBody::Box>(b.shape());
  };
  if (!axis_aligned(first) || !axis_aligned(second)) return std::nullopt;
  auto [lo, hi] = first.bounding_box();
  const auto [lo2, hi2] = second.bounding_box();
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = std::max(lo[i], lo2[i]);
    hi[i] = std::min(hi[i], hi2[i]);
    if (lo[i] > hi[i]) return std::nullopt;
  }
  return std::pair<Vec, Vec>{lo, hi};
}

KPrime kprime(const ConvexBody& k, std::span<const double> x0, std::span<const double> x1,
              double t0, double t1, double alpha, double lambda) {
  require_dim(x0, k.dim(), "kprime");
  require_dim(x1, k.dim(), "kprime");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("kprime: lambda must lie in (0,1)");
  if (!(t0 > 0.0 && t1 > 0.0)) throw DomainError("kprime: times must be positive");
  if (alpha == 0.0 && !(t0 > 1.0 && t1 > 1.0)) throw DomainError("kprime: alpha = 0 needs t0, t1 > 1");
  bool same = t0 == t1;
  for (std::size_t i = 0; same && i < x0.size(); ++i) same = x0[i] == x1[i];
  if (same) throw DegenerateInput("kprime: (x0,t0) and (x1,t1) coincide");

  const double w0 = alpha == 0.0 ? std::log(t0) : std::pow(t0, alpha);
  const double w1 = alpha == 0.0 ? std::log(t1) : std::pow(t1, alpha);
  const double s = lambda / w0 + (1.0 - lambda) / w1;
  Vec d(x0.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = x0[i] / w0 - x1[i] / w1;

  Vec shift_first(d.size()), shift_second(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    shift_first[i] = -w1 * lambda * d[i];
    shift_second[i] = w0 * (1.0 - lambda) * d[i];
  }
  return KPrime{k.scaled_translated(w1 * s, shift_first), k.scaled_translated(w0 * s, shift_second), s, d};
}

bool is_interior(const ConvexBody& body, std::span<const double> y, double delta) {
  if (!body.contains(y, 0.0)) return false;
  Vec probe(y.begin(), y.end());
  for (std::size_t i = 0; i < probe.size(); ++i) {
    for (double sgn : {-1.0, 1.0}) {
      probe[i] = y[i] + sgn * delta;
      if (!body.contains(probe, 0.0)) return false;
    }
    probe[i] = y[i];
  }
  return true;
}

Vec interior_witness_outside(const ConvexBody& omega, double s, double mu, std::span<const double> v) {
  require_dim(v, omega.dim(), "interior_witness_outside");
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("interior_witness_outside: s must lie in (0,1]");
  if (!(mu >= 0.0)) throw DomainError("interior_witness_outside: mu must be nonnegative");
  if (s == 1.0 && mu == 0.0) throw DegenerateInput("interior_witness_outside: (s, mu) = (1, 0)");
  if (std::abs(norm(v) - 1.0) > 1e-12) throw DomainError("interior_witness_outside: v must be a unit vector");

  // Separate along v when the shrunken-shifted body falls short of K in
  // direction v; otherwise along -v, where the gap is at least
  // (1 - s) * width(K) > 0.
  Vec dir(v.begin(), v.end());
  double h = omega.support(dir);
  double h_shifted = s * h - mu;
  if (h - h_shifted <= 0.0) {
    for (auto& c : dir) c = -c;
    h = omega.support(dir);
    h_shifted = s * h + mu;
  }
  const double gap = h - h_shifted;

  const Vec x = omega.support_point(dir);
  const Vec c = omega.interior_point();
  Vec to_centre(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) to_centre[i] = c[i] - x[i];
  const double dist = norm(to_centre);
  const double theta = dist > 0.0 ? std::min(0.5, gap / (4.0 * dist)) : 0.5;
  Vec y(x.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + theta * to_centre[i];

  const double delta = 1e-9 * omega.diameter();
  if (theta * omega.inradius() < 2.0 * delta) {
    throw ResolutionError("interior_witness_outside: support gap is below the interior margin");
  }
  if (!is_interior(omega, y, delta)) {
    throw std::logic_error("interior_witness_outside: constructed point is not interior");
  }
  Vec pre(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) pre[i] = (y[i] + mu * v[i]) / s;
  if (omega.contains(pre, 0.0)) {
    throw std::logic_error("interior_witness_outside: constructed point lies in sK - mu v");
  }
  return y;
}

ConeDescriptor ConeDescriptor::orthant(const std::vector<int>& signs) {
  ConeDescriptor cone;
  cone.dim = static_cast<int>(signs.size());
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == 0) continue;
    Vec u(signs.size(), 0.0);
    u[i] = signs[i] > 0 ? -1.0 : 1.0;
    cone.normals.push_back(std::move(u));
  }
  return cone;
}

bool ConeDescriptor::contains(std::span<const double> x) const {
  require_dim(x, dim, "ConeDescriptor::contains");
  for (const auto& u : normals) {
    if (dot(x, u) > 0.0) return false;
  }
  return true;
}

bool ParabolicRegion::contains(std::span<const double> x, double t) const {
  require_dim(x, dim_, "ParabolicRegion::contains");
  if (!(t > 0.0)) return false;
  return member_(x, t);
}

ParabolicRegion ParabolicRegion::from_predicate(int dim, double alpha, Predicate member, Vec x_lo,
                                                Vec x_hi, double t_lo, double t_hi) {
  if (static_cast<int>(x_lo.size()) != dim || static_cast<int>(x_hi.size()) != dim) {
    throw DomainError("ParabolicRegion: bounding box dimension mismatch");
  }
  if (!(t_lo > 0.0 && t_lo < t_hi)) throw DomainError("ParabolicRegion: need 0 < t_lo < t_hi");
  ParabolicRegion e;
  e.dim_ = dim;
  e.alpha_ = alpha;
  e.kind_ = Kind::predicate;
  e.member_ = std::move(member);
  e.x_lo_ = std::move(x_lo);
  e.x_hi_ = std::move(x_hi);
  e.t_lo_ = t_lo;
  e.t_hi_ = t_hi;
  return e;
}

ParabolicRegion ParabolicRegion::cylinder(const ConvexBody& base, double alpha, double t_lo, double t_hi) {
  auto [lo, hi] = base.bounding_box();
  ParabolicRegion e = from_predicate(
      base.dim(), alpha,
      [base, t_lo, t_hi](std::span<const double> x, double t) {
        return t >= t_lo && t <= t_hi && base.contains(x);
      },
      std::move(lo), std::move(hi), t_lo, t_hi);
  e.kind_ = Kind::cylinder;
  return e;
}

ParabolicRegion hat_region(const BaseSet& a, double alpha, double t_lo, double t_hi,
                           std::optional<std::pair<Vec, Vec>> x_box) {
  if (!(t_lo > 0.0 && t_lo < t_hi)) throw DomainError("hat_region: need 0 < t_lo < t_hi");
  if (alpha == 0.0 && !(t_lo > 1.0)) throw DomainError("hat_region: alpha = 0 needs t_lo > 1");
  const int n = std::visit(Overloaded{[](const ConvexBody& b) { return b.dim(); },
                                      [](const ConeDescriptor& c) { return c.dim; }},
                           a);
  auto factor = [alpha](double t) { return alpha == 0.0 ? std::log(t) : std::pow(t, alpha); };

  if (!x_box) {
    if (const auto* body = std::get_if<ConvexBody>(&a)) {
      auto [lo, hi] = body->bounding_box();
      const double f0 = factor(t_lo), f1 = factor(t_hi);
      Vec blo(lo.size()), bhi(lo.size());
      for (std::size_t i = 0; i < lo.size(); ++i) {
        blo[i] = std::min({lo[i] * f0, lo[i] * f1});
        bhi[i] = std::max({hi[i] * f0, hi[i] * f1});
      }
      x_box = std::pair<Vec, Vec>{blo, bhi};
    } else {
      x_box = std::pair<Vec, Vec>{Vec(static_cast<std::size_t>(n), -1.0), Vec(static_cast<std::size_t>(n), 1.0)};
    }
  }

  ParabolicRegion::Predicate member = [a, alpha, factor](std::span<const double> x, double t) {
    if (alpha == 0.0 && !(t > 1.0)) return false;
    const double f = factor(t);
    Vec y(x.begin(), x.end());
    for (auto& c : y) c /= f;
    return std::visit(Overloaded{[&](const ConvexBody& b) { return b.contains(y); },
                                 [&](const ConeDescriptor& c) { return c.contains(y); }},
                      a);
  };
  ParabolicRegion e = ParabolicRegion::from_predicate(n, alpha, std::move(member), std::move(x_box->first),
                                                      std::move(x_box->second), t_lo, t_hi);
  e.kind_ = ParabolicRegion::Kind::hat;
  return e;
}

Vec omega_chart(double alpha, std::span<const double> x, double t) {
  if (!(t > 0.0)) throw DomainError("omega_chart: t must be positive");
  if (alpha == 0.0 && !(t > 1.0)) throw DomainError("omega_chart: alpha = 0 needs t > 1");
  const double w = alpha == 0.0 ? std::log(t) : std::pow(t, alpha);
  Vec out(x.size() + 1);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / w;
  out.back() = 1.0 / w;
  return out;
}

std::pair<Vec, double> omega_chart_inverse(double alpha, std::span<const double> ys) {
  if (ys.size() < 2) throw DomainError("omega_chart_inverse: need (y, s)");
  const double s = ys.back();
  if (!(s > 0.0)) throw DomainError("omega_chart_inverse: s must be positive");
  Vec x(ys.begin(), ys.end() - 1);
  for (auto& c : x) c /= s;
  const double t = alpha == 0.0 ? std::exp(1.0 / s) : std::pow(s, -1.0 / alpha);
  return {x, t};
}

ConvexityReport check_parabolic_convexity(const ParabolicRegion& e, std::size_t samples, std::uint64_t seed) {
  ConvexityReport report;
  report.chart_checked = true;
  const auto n = static_cast<std::size_t>(e.dim());
  constexpr int kMaxTries = 2000;
  bool found_any = false;

  auto draw_member = [&](CounterRng& rng, Vec& x, double& t) {
    for (int attempt = 0; attempt < kMaxTries; ++attempt) {
      for (std::size_t i = 0; i < n; ++i) x[i] = rng.uniform(e.x_lo()[i], e.x_hi()[i]);
      t = rng.uniform(e.t_lo(), e.t_hi());
      if (e.contains(x, t)) return true;
    }
    return false;
  };

  Vec x0(n), x1(n), xl(n), combo_chart(n + 1);
  for (std::size_t i = 0; i < samples; ++i) {
    CounterRng rng(seed, i);
    double t0 = 0.0, t1 = 0.0;
    if (!draw_member(rng, x0, t0) || !draw_member(rng, x1, t1)) continue;
    found_any = true;
    ++report.samples_used;
    const double lambda = rng.uniform_open();

    for (std::size_t k = 0; k < n; ++k) xl[k] = (1.0 - lambda) * x0[k] + lambda * x1[k];
    const double tl = time_mean(e.alpha(), t0, t1, lambda);
    const bool direct_ok = e.contains(xl, tl);

    const Vec w0 = omega_chart(e.alpha(), x0, t0);
    const Vec w1 = omega_chart(e.alpha(), x1, t1);
    for (std::size_t k = 0; k <= n; ++k) combo_chart[k] = (1.0 - lambda) * w0[k] + lambda * w1[k];
    const auto [xc, tc] = omega_chart_inverse(e.alpha(), combo_chart);
    const bool chart_ok = e.contains(xc, tc);

    if ((!direct_ok && report.direct_pass) || (!chart_ok && report.direct_pass && report.chart_pass)) {
      report.x0 = x0;
      report.x1 = x1;
      report.t0 = t0;
      report.t1 = t1;
      report.lambda = lambda;
    }
    report.direct_pass = report.direct_pass && direct_ok;
    report.chart_pass = report.chart_pass && chart_ok;
  }
  if (!found_any) throw SamplingError("check_parabolic_convexity: no member points in the bounding data");
  return report;
}

}  // namespace powconc
