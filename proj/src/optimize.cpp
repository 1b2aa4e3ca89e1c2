#include "powconc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "powconc/convolve.hpp"
#include "powconc/errors.hpp"
#include "powconc/parallel.hpp"
#include "powconc/rng.hpp"

namespace powconc {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
  }
  return r;
}

struct Point {
  Vec x;
  double f;
};

class Ascent {
 public:
  Ascent(const MaxProblem& prob) : prob_(prob), diam_(prob.feasible.diameter()) {}

  double noise_at(std::span<const double> x, double f) const {
    if (prob_.noise) return prob_.noise(x);
    return 4.0 * std::numeric_limits<double>::epsilon() * std::abs(f);
  }

  // Largest s >= 0 with x + s d feasible, by bisection to 1e-12 relative.
  double reach(const Vec& x, const Vec& d) const {
    const double len = norm(d);
    double lo = 0.0, hi = 1.01 * diam_ / len;
    Vec y(x.size());
    auto inside = [&](double s) {
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + s * d[i];
      return prob_.feasible.contains(y);
    };
    while ((hi - lo) * len > 1e-12 * diam_) {
      const double mid = 0.5 * (lo + hi);
      (inside(mid) ? lo : hi) = mid;
    }
    return lo;
  }

  // Golden-section maximization of f(x + s d) over s in [lo, hi].
  Point line_search(const Point& start, const Vec& d) const {
    const double len = norm(d);
    Vec dm(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) dm[i] = -d[i];
    double lo = -reach(start.x, dm);
    double hi = reach(start.x, d);
    Vec y(start.x.size());
    auto at = [&](double s) {
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = start.x[i] + s * d[i];
      return prob_.objective(y);
    };
    Point best = start;
    double best_s = 0.0;
    auto offer = [&](double s, double f) {
      if (f > best.f) {
        best.f = f;
        best_s = s;
      }
    };
    if (hi - lo <= 0.0) return best;
    offer(lo, at(lo));
    offer(hi, at(hi));

    double c = hi - kInvPhi * (hi - lo), e = lo + kInvPhi * (hi - lo);
    double fc = at(c), fe = at(e);
    int ties = 0;
    while ((hi - lo) * len > prob_.tolerance) {
      offer(c, fc);
      offer(e, fe);
      const double floor = 5.0 * std::max(noise_at(y, fc), noise_at(y, fe));
      if (std::abs(fc - fe) <= floor) {
        // For a quasi-concave restriction the maximum lies between two
        // points of (nearly) equal value.
        if (++ties >= 3) break;
        lo = c;
        hi = e;
        c = hi - kInvPhi * (hi - lo);
        e = lo + kInvPhi * (hi - lo);
        fc = at(c);
        fe = at(e);
        continue;
      }
      ties = 0;
      if (fc > fe) {
        hi = e;
        e = c;
        fe = fc;
        c = hi - kInvPhi * (hi - lo);
        fc = at(c);
      } else {
        lo = c;
        c = e;
        fc = fe;
        e = lo + kInvPhi * (hi - lo);
        fe = at(e);
      }
    }
    offer(c, fc);
    offer(e, fe);
    const double mid = 0.5 * (lo + hi);
    offer(mid, at(mid));
    for (std::size_t i = 0; i < y.size(); ++i) best.x[i] = start.x[i] + best_s * d[i];
    return best;
  }

  // Returns the end point and whether the cycle displacement fell below tolerance.
  std::pair<Point, bool> run(Vec x0) const {
    const std::size_t n = x0.size();
    Point cur{x0, prob_.objective(x0)};
    for (int cycle = 0; cycle < prob_.max_cycles; ++cycle) {
      const Vec before = cur.x;
      for (std::size_t i = 0; i < n; ++i) {
        Vec d(n, 0.0);
        d[i] = 1.0;
        cur = line_search(cur, d);
      }
      Vec pattern(n);
      for (std::size_t i = 0; i < n; ++i) pattern[i] = cur.x[i] - before[i];
      const double moved = norm(pattern);
      if (moved > 0.0 && n > 1) cur = line_search(cur, pattern);
      if (moved <= prob_.tolerance) return {cur, true};
    }
    return {cur, false};
  }

 private:
  const MaxProblem& prob_;
  double diam_;
};

bool lex_less(const Vec& a, const Vec& b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); }

}  // namespace

void MaxProblem::validate() const {
  if (!objective) throw InputError("maximize: no objective");
  if (!(tolerance > 0.0)) throw InputError("maximize: tolerance must be positive");
  if (multistart < 1) throw InputError("maximize: multistart must be >= 1");
  if (max_cycles < 1) throw InputError("maximize: max_cycles must be >= 1");
}

std::vector<Vec> halton_starts(const ConvexBody& body, int count, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(body.dim());
  if (n > std::size(kPrimes)) throw DomainError("halton_starts: dimension too large");
  const auto [lo, hi] = body.bounding_box();
  CounterRng rng(seed, 0);
  Vec shift(n);
  for (auto& s : shift) s = rng.uniform();
  std::vector<Vec> out;
  for (std::uint64_t i = 1; static_cast<int>(out.size()) < count && i < 100000; ++i) {
    Vec x(n);
    for (std::size_t k = 0; k < n; ++k) {
      double u = radical_inverse(i, kPrimes[k]) + shift[k];
      u -= std::floor(u);
      x[k] = lo[k] + u * (hi[k] - lo[k]);
    }
    if (body.contains(x)) out.push_back(std::move(x));
  }
  if (static_cast<int>(out.size()) < count) throw SamplingError("halton_starts: body too thin for its bounding box");
  return out;
}

MaxResult maximize(const MaxProblem& prob) {
  prob.validate();
  const auto starts = halton_starts(prob.feasible, prob.multistart, prob.seed);
  const Ascent ascent(prob);
  std::vector<std::optional<std::pair<Point, bool>>> runs(starts.size());
  parallel_for(starts.size(), prob.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) runs[i] = ascent.run(starts[i]);
  });

  MaxResult r;
  r.start_points = starts;
  std::vector<Vec> converged;
  std::optional<Point> best;
  for (const auto& run : runs) {
    const auto& [pt, ok] = *run;
    r.end_points.push_back(pt.x);
    if (!ok) continue;
    converged.push_back(pt.x);
    if (!best || pt.f > best->f || (pt.f == best->f && lex_less(pt.x, best->x))) best = pt;
  }
  if (!best) throw ConvergenceError("maximize: no start converged within the cycle cap");
  r.argmax = best->x;
  r.value = best->f;
  r.starts_converged = static_cast<int>(converged.size());
  for (std::size_t i = 0; i < converged.size(); ++i) {
    for (std::size_t j = i + 1; j < converged.size(); ++j) {
      Vec d(converged[i].size());
      for (std::size_t k = 0; k < d.size(); ++k) d[k] = converged[i][k] - converged[j][k];
      r.max_pairwise_spread = std::max(r.max_pairwise_spread, norm(d));
    }
  }
  r.certificate_ok = r.max_pairwise_spread <= 1e3 * prob.tolerance;
  return r;
}

namespace {

void check_picture(double a, double b) {
  if (!(std::isfinite(a) && std::isfinite(b) && 0.0 < a && a < b)) {
    throw DomainError("regiomontanus: requires 0 < a < b");
  }
  if (b - a <= 1e-9 * b) throw DegenerateInput("regiomontanus: picture [a,b] is degenerate");
}

}  // namespace

MaxResult regiomontanus(double a, double b, const ConvexBody& constraint, int multistart, std::uint64_t seed) {
  check_picture(a, b);
  if (constraint.dim() != 2) throw DomainError("regiomontanus: constraint must lie in the (x,t) plane");
  if (!(constraint.bounding_box().first[1] > 0.0)) throw DomainError("regiomontanus: constraint must have t > 0");
  MaxProblem prob;
  prob.objective = [a, b](std::span<const double> z) { return oracle_P_interval(a, b, z[0], z[1]); };
  prob.feasible = constraint;
  prob.multistart = multistart;
  prob.seed = seed;
  return maximize(prob);
}

MaxResult regiomontanus_segment(double a, double b, std::span<const double> from, std::span<const double> to,
                                int multistart, std::uint64_t seed) {
  check_picture(a, b);
  if (from.size() != 2 || to.size() != 2) throw DomainError("regiomontanus: segment ends must be (x,t) pairs");
  if (!(from[1] > 0.0 && to[1] > 0.0)) throw DomainError("regiomontanus: constraint must have t > 0");
  const Vec p0(from.begin(), from.end()), p1(to.begin(), to.end());
  const double len = std::hypot(p1[0] - p0[0], p1[1] - p0[1]);
  if (!(len > 0.0)) throw DegenerateInput("regiomontanus: segment has zero length");
  auto point = [p0, p1](double s) { return Vec{p0[0] + s * (p1[0] - p0[0]), p0[1] + s * (p1[1] - p0[1])}; };
  MaxProblem prob;
  prob.objective = [a, b, point](std::span<const double> s) {
    const Vec z = point(s[0]);
    return oracle_P_interval(a, b, z[0], z[1]);
  };
  prob.feasible = ConvexBody::interval(0.0, 1.0);
  prob.tolerance = 1e-9 / len;
  prob.multistart = multistart;
  prob.seed = seed;
  MaxResult r = maximize(prob);
  r.argmax = point(r.argmax[0]);
  r.max_pairwise_spread *= len;
  for (auto& v : r.start_points) v = point(v[0]);
  for (auto& v : r.end_points) v = point(v[0]);
  return r;
}

}  // namespace powconc
