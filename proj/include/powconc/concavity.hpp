#pragma once

// Seeded randomized checks of p-concavity, quasi-concavity and
// alpha-parabolic p-concavity. A check can falsify a claim or collect
// evidence for it; it cannot prove it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powconc/extmeans.hpp"
#include "powconc/fields.hpp"
#include "powconc/geometry.hpp"

namespace powconc {

enum class Verdict { pass, violation, equality_off_spec };
enum class StrictMode { plain, strict, almost_strict };

std::string to_string(Verdict v);
std::string to_string(StrictMode m);
StrictMode parse_mode(const std::string& text);

struct CheckConfig {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  /// Violation threshold, relative to max(f(x_l), M_p(f0, f1)).
  double tol = 1e-9;
  /// Samples whose margin exceeds eps_strict * scale are counted as certified.
  double eps_strict = 1e-7;
  /// Separated samples with margin <= eps_eq * scale (or inside the noise
  /// floor) are equalities.
  double eps_eq = 1e-12;
  /// Pairs closer than separation * diameter are not tested for strictness.
  double separation = 1e-3;
  /// Absolute separation; overrides the relative one when set.
  std::optional<double> separation_abs;
  double diagonal_fraction = 0.1;
  double ray_fraction = 0.1;
  /// Spatial sampling domain; defaults to the field's support when unset.
  std::optional<ConvexBody> domain;
  /// Time window for parabolic checks.
  double t_lo = 0.5;
  double t_hi = 2.0;
  /// Log-uniform time sampling (always used when alpha = 0).
  bool log_time = false;
  /// Keep the raw margin of every sample in the report.
  bool keep_margins = false;
  int threads = 1;

  void validate() const;
};

struct Witness {
  Vec x0, x1;
  std::optional<double> t0, t1;
  double lambda = 0.0;
};

struct ConcavityReport {
  Verdict verdict = Verdict::pass;
  /// Smallest margin divided by its scale over all samples with positive scale.
  double worst_margin = kInf;
  Witness witness;
  double witness_lhs = 0.0, witness_rhs = 0.0;
  std::size_t samples_used = 0;
  std::size_t zero_samples = 0;    // both sides vanish
  std::size_t strict_samples = 0;  // eligible for the strictness test
  std::size_t certified = 0;       // strict samples with margin > eps_strict * scale
  std::size_t equalities = 0;      // eligible samples classified as equal
  std::size_t ray_equalities = 0;  // equalities tolerated on rays (almost-strict)
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  std::string reason;
  std::vector<double> margins;  // only with keep_margins

  bool passed() const { return verdict == Verdict::pass; }
};

ConcavityReport check_p_concavity(const ScalarField& f, const ExtExponent& p, const CheckConfig& cfg,
                                  bool strict);

/// Samples levels a and pairs in {f > a}; violation when x_l leaves the level
/// set. Also runs the p = -inf inequality on the same pairs.
ConcavityReport check_quasi_concavity_superlevel(const ScalarField& f, const CheckConfig& cfg);

ConcavityReport check_parabolic_p_concavity(const SpaceTimeField& phi, double alpha, const ExtExponent& p,
                                            const CheckConfig& cfg, StrictMode mode);

struct EqualityClass {
  bool on_ray = false;
  bool equal = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

/// x0/T(t0) = x1/T(t1) with T = t^alpha (log t when alpha = 0), and whether
/// the parabolic concavity inequality is an equality within eps_eq relative.
EqualityClass classify_equality(const SpaceTimeField& phi, double alpha, const ExtExponent& p,
                                std::span<const double> x0, double t0, std::span<const double> x1, double t1,
                                double lambda, double eps_eq = 1e-12);

/// The ray condition alone.
bool on_parabolic_ray(double alpha, std::span<const double> x0, double t0, std::span<const double> x1,
                      double t1, double rel_tol = 1e-12);

}  // namespace powconc
