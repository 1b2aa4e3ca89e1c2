#include "powconc/bbl.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "powconc/errors.hpp"
#include "powconc/parallel.hpp"

namespace powconc {

namespace {

struct Box {
  Vec lo, hi;
};

Box support_box(const ScalarField& f, const char* which) {
  auto s = f.support();
  if (!s) throw InputError(std::string("bbl: ") + which + " needs a compact support");
  auto [lo, hi] = s->bounding_box();
  return {lo, hi};
}

ConvexBody as_body(const Box& b) {
  if (b.lo.size() == 1) return ConvexBody::interval(b.lo[0], b.hi[0]);
  return ConvexBody::box(b.lo, b.hi);
}

double box_volume(const Box& b) {
  double v = 1.0;
  for (std::size_t i = 0; i < b.lo.size(); ++i) v *= b.hi[i] - b.lo[i];
  return v;
}

// Midpoint value of cell idx of an N^n grid on the box.
void cell_center(const Box& b, int per_axis, std::size_t idx, Vec& y) {
  for (std::size_t i = y.size(); i-- > 0;) {
    const std::size_t k = idx % static_cast<std::size_t>(per_axis);
    idx /= static_cast<std::size_t>(per_axis);
    y[i] = b.lo[i] + (static_cast<double>(k) + 0.5) * (b.hi[i] - b.lo[i]) / per_axis;
  }
}

std::size_t cell_count(std::size_t n, int per_axis) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(per_axis);
  return total;
}

double grid_mass(const ScalarField& f, const Box& b, int per_axis, int threads) {
  const std::size_t n = b.lo.size();
  const std::size_t total = cell_count(n, per_axis);
  const double cell = box_volume(b) / static_cast<double>(total);
  std::vector<double> vals(total);
  parallel_for(total, threads, [&](std::size_t begin, std::size_t end) {
    Vec y(n);
    for (std::size_t idx = begin; idx < end; ++idx) {
      cell_center(b, per_axis, idx, y);
      vals[idx] = f.eval(y) * cell;
    }
  });
  return pairwise_sum(vals);
}

double sup_on_grid(const BBLInstance& inst, const Box& b0, const Box& b1, double lambda, int per_axis,
                   std::span<const double> y) {
  const std::size_t n = y.size();
  // Feasible y0: inside B0 with (y - (1-l) y0)/l inside B1.
  Box c{Vec(n), Vec(n)};
  for (std::size_t i = 0; i < n; ++i) {
    c.lo[i] = std::max(b0.lo[i], (y[i] - lambda * b1.hi[i]) / (1.0 - lambda));
    c.hi[i] = std::min(b0.hi[i], (y[i] - lambda * b1.lo[i]) / (1.0 - lambda));
    if (c.lo[i] > c.hi[i]) return 0.0;
  }
  const std::size_t total = cell_count(n, per_axis);
  Vec y0(n), y1(n);
  double best = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    cell_center(c, per_axis, idx, y0);
    for (std::size_t i = 0; i < n; ++i) y1[i] = (y[i] - (1.0 - lambda) * y0[i]) / lambda;
    const double a = inst.f0->eval(y0);
    if (a == 0.0) continue;
    const double b = inst.f1->eval(y1);
    if (b == 0.0) continue;
    best = std::max(best, mean_p(inst.ell, a, b, lambda));
  }
  return best;
}

}  // namespace

void BBLInstance::validate() const {
  if (n < 1) throw DomainError("bbl: n must be positive");
  if (!f0 || !f1) throw InputError("bbl: missing f0 or f1");
  if (f0->dim() != n || f1->dim() != n) throw DomainError("bbl: field dimension does not match n");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("bbl: lambda must lie in (0,1)");
  if (grid != 0 && grid < 8) throw InputError("bbl: grid must be >= 8 points per axis");
  bbl_exponent(ell, n);  // rejects ell < -1/n
}

int BBLInstance::resolved_grid() const {
  if (grid > 0) return grid;
  return n == 1 ? 512 : 40;
}

double BBLInstance::effective_lambda() const { return std::clamp(lambda, 0.1, 0.9); }

double sup_convolution(const BBLInstance& inst, std::span<const double> y) {
  inst.validate();
  if (static_cast<int>(y.size()) != inst.n) throw DomainError("sup_convolution: point has the wrong dimension");
  const Box b0 = support_box(*inst.f0, "f0");
  const Box b1 = support_box(*inst.f1, "f1");
  return sup_on_grid(inst, b0, b1, inst.effective_lambda(), inst.resolved_grid(), y);
}

BBLReport verify_bbl(const BBLInstance& inst) {
  inst.validate();
  const auto n = static_cast<std::size_t>(inst.n);
  const int per_axis = inst.resolved_grid();
  const double lambda = inst.effective_lambda();
  const Box b0 = support_box(*inst.f0, "f0");
  const Box b1 = support_box(*inst.f1, "f1");
  Box b{Vec(n), Vec(n)};
  for (std::size_t i = 0; i < n; ++i) {
    b.lo[i] = (1.0 - lambda) * b0.lo[i] + lambda * b1.lo[i];
    b.hi[i] = (1.0 - lambda) * b0.hi[i] + lambda * b1.hi[i];
  }

  BBLReport r;
  r.lambda_used = lambda;
  r.exponent = bbl_exponent(inst.ell, inst.n);
  r.mass0 = grid_mass(*inst.f0, b0, per_axis, inst.threads);
  r.mass1 = grid_mass(*inst.f1, b1, per_axis, inst.threads);
  if (!(r.mass0 > 0.0 && r.mass1 > 0.0)) throw DomainError("bbl: both masses must be positive");

  const std::size_t total = cell_count(n, per_axis);
  const double cell = box_volume(b) / static_cast<double>(total);
  std::vector<double> vals(total);
  parallel_for(total, inst.threads, [&](std::size_t begin, std::size_t end) {
    Vec y(n);
    for (std::size_t idx = begin; idx < end; ++idx) {
      cell_center(b, per_axis, idx, y);
      vals[idx] = sup_on_grid(inst, b0, b1, lambda, per_axis, y) * cell;
    }
  });
  r.lhs = pairwise_sum(vals);
  if (r.lhs == 0.0) throw ResolutionError("bbl: grid too coarse, no positive value of S was found");
  r.rhs = mean_p(r.exponent, r.mass0, r.mass1, lambda);
  r.margin = r.lhs - r.rhs;

  // Discretization model: boundary layers of width ~h on the three boxes
  // plus Lipschitz variation inside cells, with the 1/lambda stretch of y1.
  for (std::size_t i = 0; i < n; ++i) {
    r.h = std::max({r.h, (b.hi[i] - b.lo[i]) / per_axis, (b0.hi[i] - b0.lo[i]) / per_axis,
                    (b1.hi[i] - b1.lo[i]) / per_axis});
  }
  const double sup0 = inst.f0->sup_bound(), sup1 = inst.f1->sup_bound();
  const double smax = std::max(sup0, sup1);
  const double lip = std::max(inst.f0->lipschitz_bound(), inst.f1->lipschitz_bound());
  const double stretch = 1.0 + std::max((1.0 - lambda) / lambda, lambda / (1.0 - lambda));
  r.tolerance = r.h * (smax * as_body(b).surface_measure() +
                       0.5 * std::sqrt(static_cast<double>(n)) * lip * stretch * box_volume(b) +
                       sup0 * as_body(b0).surface_measure() + sup1 * as_body(b1).surface_measure());
  if (!std::isfinite(r.tolerance)) throw InputError("bbl: fields need finite sup and Lipschitz bounds");
  return r;
}

}  // namespace powconc
