#pragma once

// Multistart coordinate/pattern ascent with golden-section line searches for
// strictly quasi-concave objectives on convex bodies.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "powconc/geometry.hpp"

namespace powconc {

using Objective = std::function<double(std::span<const double>)>;

struct MaxProblem {
  Objective objective;
  /// Absolute noise of the objective at a point; defaults to a few ulp.
  Objective noise;
  ConvexBody feasible = ConvexBody::interval(0.0, 1.0);
  /// Line searches stop when the bracket is shorter than this.
  double tolerance = 1e-9;
  int multistart = 10;
  std::uint64_t seed = 1;
  int max_cycles = 2000;
  int threads = 1;

  void validate() const;
};

struct MaxResult {
  Vec argmax;
  double value = 0.0;
  int starts_converged = 0;
  double max_pairwise_spread = 0.0;
  /// Spread within 1e3 * tolerance.
  bool certificate_ok = true;
  std::vector<Vec> start_points;
  std::vector<Vec> end_points;
};

MaxResult maximize(const MaxProblem& prob);

/// Maximizes the viewing angle P chi_[a,b](x,t) over a 2-D constraint in the
/// (x,t) half-plane.
MaxResult regiomontanus(double a, double b, const ConvexBody& constraint, int multistart = 10,
                        std::uint64_t seed = 1);
/// Same over the segment from `from` to `to`, parametrized by [0,1].
MaxResult regiomontanus_segment(double a, double b, std::span<const double> from, std::span<const double> to,
                                int multistart = 10, std::uint64_t seed = 1);

/// Points of a scrambled Halton sequence in the body's bounding box that lie
/// in the body.
std::vector<Vec> halton_starts(const ConvexBody& body, int count, std::uint64_t seed);

}  // namespace powconc
