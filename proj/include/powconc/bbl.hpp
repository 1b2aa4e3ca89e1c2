#pragma once

// Grid verifier for the Borell-Brascamp-Lieb inequality
//   int S(y) dy >= M_{l/(1+nl)}(int f0, int f1; lambda),
//   S(y) = sup { M_l(f0(y0), f1(y1); lambda) : (1-lambda) y0 + lambda y1 = y }.

#include <span>

#include "powconc/extmeans.hpp"
#include "powconc/fields.hpp"

namespace powconc {

struct BBLInstance {
  int n = 1;
  ScalarFieldPtr f0, f1;  // both need a compact support()
  ExtExponent ell = ExtExponent::finite(0.0);
  double lambda = 0.5;
  /// Points per axis for the y grid, the y0 search and the masses;
  /// 0 picks 512 for n = 1 and 40 for n = 2.
  int grid = 0;
  int threads = 1;

  void validate() const;
  int resolved_grid() const;
  /// lambda clamped to [0.1, 0.9].
  double effective_lambda() const;
};

/// Grid sup over y0 in supp f0 with y1 = (y - (1-lambda) y0) / lambda in supp f1.
/// 0 outside (1-lambda) supp f0 + lambda supp f1.
double sup_convolution(const BBLInstance& inst, std::span<const double> y);

struct BBLReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  double h = 0.0;  // largest cell width of the y grid
  double mass0 = 0.0, mass1 = 0.0;
  double lambda_used = 0.5;
  ExtExponent exponent;  // l / (1 + n l)

  bool pass() const { return margin >= -tolerance; }
};

BBLReport verify_bbl(const BBLInstance& inst);

}  // namespace powconc
