// powconc command-line front end. Reports are JSON (CSV for convolve) and
// embed a run manifest; see README for the flag grammar.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "powconc/descriptors.hpp"
#include "powconc/errors.hpp"

using namespace powconc;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Globals {
  int threads = 0;
  bool record_time = false;
  std::vector<std::string> argv;
};

json manifest(const Globals& g, const std::string& command, json config, std::uint64_t seed, double wall) {
  json m;
  m["command"] = command;
  m["argv"] = g.argv;
  m["config"] = std::move(config);
  m["seed"] = seed;
  m["version"] = POWCONC_VERSION;
  if (g.record_time) m["wall_time_s"] = wall;
  return m;
}

void emit(const json& report, const std::optional<std::string>& out) {
  const std::string text = report.dump(2) + "\n";
  if (!out) {
    std::cout << text;
    return;
  }
  std::ofstream f(*out);
  if (!f) throw InputError("cannot write '" + *out + "'");
  f << text;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// "lo:hi:count" -> count evenly spaced points including both ends.
std::vector<double> parse_grid(const std::string& spec) {
  const auto a = spec.find(':');
  const auto b = a == std::string::npos ? a : spec.find(':', a + 1);
  if (b == std::string::npos) throw InputError("grid '" + spec + "' must be lo:hi:count");
  double lo = 0.0, hi = 0.0;
  long count = 0;
  try {
    std::size_t used = 0;
    lo = std::stod(spec.substr(0, a), &used);
    hi = std::stod(spec.substr(a + 1, b - a - 1), &used);
    count = std::stol(spec.substr(b + 1), &used);
  } catch (const std::exception&) {
    throw InputError("grid '" + spec + "' must be lo:hi:count");
  }
  if (count < 1 || !(lo <= hi)) throw InputError("grid '" + spec + "' needs lo <= hi and count >= 1");
  std::vector<double> out;
  for (long i = 0; i < count; ++i) {
    out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return out;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

// Spatial window for fields without compact support.
ConvexBody default_domain(int n) {
  if (n == 1) return ConvexBody::interval(-2.0, 2.0);
  return ConvexBody::box(Vec(static_cast<std::size_t>(n), -2.0), Vec(static_cast<std::size_t>(n), 2.0));
}

struct MeansArgs {
  std::string p, q;
  double a = 0.0, b = 0.0, lambda = 0.5;
  bool ell = false;
};

int cmd_means(const MeansArgs& args, CLI::App& sub) {
  if (args.p.empty()) throw InputError("means: --p is required");
  const ExtExponent p = ExtExponent::parse(args.p);
  if (args.ell) {
    if (args.q.empty()) throw InputError("means --ell: --q is required");
    fmt::print("{}\n", ell_exponent(p, ExtExponent::parse(args.q)).to_string());
    return kExitPass;
  }
  if (!sub.count("--a") || !sub.count("--b")) throw InputError("means: --a and --b are required");
  fmt::print("{}\n", format_number(mean_p(p, args.a, args.b, args.lambda)));
  return kExitPass;
}

struct CheckArgs {
  std::string kind, field, p, mode = "plain", out, domain;
  std::optional<double> alpha;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  double t_lo = 0.5, t_hi = 2.0;
  double tol = 1e-9;
  std::optional<double> separation;
  bool log_time = false;
};

int cmd_check(const CheckArgs& args, const Globals& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const json desc = load_json_file(args.field);
  CheckConfig cfg;
  cfg.samples = args.samples;
  cfg.seed = args.seed;
  cfg.tol = args.tol;
  cfg.t_lo = args.t_lo;
  cfg.t_hi = args.t_hi;
  cfg.log_time = args.log_time;
  cfg.separation_abs = args.separation;
  cfg.threads = g.threads;
  if (!args.domain.empty()) cfg.domain = body_from_json(load_json_file(args.domain));
  cfg.validate();
  const StrictMode mode = parse_mode(args.mode);

  json config;
  config["kind"] = args.kind;
  config["field"] = desc;
  config["mode"] = to_string(mode);
  config["samples"] = cfg.samples;
  config["tol"] = cfg.tol;
  if (cfg.domain) config["domain"] = body_to_json(*cfg.domain);

  ConcavityReport rep;
  if (args.kind == "concavity") {
    auto f = scalar_field_from_json(desc);
    const ExtExponent p = !args.p.empty() ? ExtExponent::parse(args.p)
                          : f->claim().p  ? *f->claim().p
                                          : throw InputError("check: --p is required");
    if (mode == StrictMode::almost_strict) throw InputError("check concavity: almost-strict needs a parabolic check");
    if (!cfg.domain && !f->support()) {
      cfg.domain = default_domain(f->dim());
      config["domain"] = body_to_json(*cfg.domain);
    }
    config["p"] = ext_to_json(p);
    rep = check_p_concavity(*f, p, cfg, mode == StrictMode::strict);
  } else {
    auto phi = space_time_field_from_json(desc);
    const auto& claim = phi->claim();
    const ExtExponent p = !args.p.empty() ? ExtExponent::parse(args.p)
                          : claim.p       ? *claim.p
                                          : throw InputError("check: --p is required");
    const double alpha = args.alpha ? *args.alpha
                         : claim.alpha  ? *claim.alpha
                                        : throw InputError("check parabolic: --alpha is required");
    if (!cfg.domain) {
      cfg.domain = default_domain(phi->dim());
      config["domain"] = body_to_json(*cfg.domain);
    }
    config["alpha"] = alpha;
    config["p"] = ext_to_json(p);
    config["t_range"] = {cfg.t_lo, cfg.t_hi};
    rep = check_parabolic_p_concavity(*phi, alpha, p, cfg, mode);
  }

  json report;
  report["manifest"] = manifest(g, "check " + args.kind, config, cfg.seed, seconds_since(t0));
  report["report"] = concavity_report_to_json(rep);
  emit(report, args.out.empty() ? std::nullopt : std::optional(args.out));
  if (!args.out.empty()) fmt::print("{}\n", to_string(rep.verdict));
  if (!rep.passed()) {
    fmt::print(stderr, "check: {}{}\n", to_string(rep.verdict), rep.reason.empty() ? "" : " (" + rep.reason + ")");
    return kExitFail;
  }
  return kExitPass;
}

struct ConvolveArgs {
  std::string kernel, body, out, data;
  std::vector<std::string> xgrid;
  std::string tgrid;
  int points = 0;
};

int cmd_convolve(const ConvolveArgs& args, const Globals& g) {
  const ConvexBody body = body_from_json(load_json_file(args.body));
  const int n = body.dim();
  ScalarFieldPtr data = args.data.empty() ? make_indicator(body) : scalar_field_from_json(load_json_file(args.data));
  if (data->dim() != n) throw InputError("convolve: data and body dimensions differ");
  SpaceTimeFieldPtr kernel;
  if (args.kernel == "gw") {
    kernel = make_gauss_weierstrass(n);
  } else if (args.kernel == "poisson") {
    kernel = make_poisson_kernel(n);
  } else {
    throw InputError("convolve: --kernel must be gw or poisson");
  }
  if (static_cast<int>(args.xgrid.size()) != n) {
    throw InputError(fmt::format("convolve: need {} --xgrid option(s), one per axis", n));
  }
  std::vector<std::vector<double>> axes;
  for (const auto& s : args.xgrid) axes.push_back(parse_grid(s));
  const auto ts = parse_grid(args.tgrid);
  QuadratureSpec quad = QuadratureSpec::defaults_for(body);
  if (args.points > 0) quad.points_per_axis = args.points;
  quad.threads = g.threads;
  quad.validate();

  std::FILE* f = stdout;
  if (!args.out.empty()) {
    f = std::fopen(args.out.c_str(), "w");
    if (!f) throw InputError("cannot write '" + args.out + "'");
  }
  for (int i = 0; i < n; ++i) fmt::print(f, "{},", n == 1 ? std::string("x") : fmt::format("x{}", i));
  fmt::print(f, "t,value,est_error\n");
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  Vec x(static_cast<std::size_t>(n));
  try {
    for (double t : ts) {
      std::fill(idx.begin(), idx.end(), 0);
      while (true) {
        for (int i = 0; i < n; ++i) x[i] = axes[i][idx[i]];
        const auto r = convolve_at(*kernel, *data, x, t, quad);
        for (double xi : x) fmt::print(f, "{},", xi);
        fmt::print(f, "{},{},{}\n", t, r.value, r.est_error);
        int k = n - 1;
        while (k >= 0 && ++idx[k] == axes[k].size()) idx[k--] = 0;
        if (k < 0) break;
      }
    }
  } catch (...) {
    if (f != stdout) std::fclose(f);
    throw;
  }
  if (f != stdout) std::fclose(f);
  return kExitPass;
}

int cmd_bbl(const std::string& instance, const std::string& out, const Globals& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const json desc = load_json_file(instance);
  BBLInstance inst = bbl_instance_from_json(desc);
  inst.threads = g.threads;
  const BBLReport rep = verify_bbl(inst);
  json report;
  report["manifest"] = manifest(g, "bbl", desc, 0, seconds_since(t0));
  report["report"] = bbl_report_to_json(rep);
  emit(report, out.empty() ? std::nullopt : std::optional(out));
  if (!out.empty()) fmt::print("{}\n", rep.pass() ? "pass" : "violation");
  return rep.pass() ? kExitPass : kExitFail;
}

int finish_max(const Globals& g, const std::string& command, const json& config, std::uint64_t seed,
               std::chrono::steady_clock::time_point t0, const MaxResult& r, const std::string& out) {
  json report;
  report["manifest"] = manifest(g, command, config, seed, seconds_since(t0));
  report["result"] = max_result_to_json(r);
  emit(report, out.empty() ? std::nullopt : std::optional(out));
  if (!r.certificate_ok) {
    fmt::print(stderr, "{}: starts did not agree (spread {})\n", command, r.max_pairwise_spread);
    return kExitFail;
  }
  return kExitPass;
}

int cmd_maximize(const std::string& problem, const std::string& out, const Globals& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const json desc = load_json_file(problem);
  MaxProblem prob = max_problem_from_json(desc);
  prob.threads = g.threads;
  return finish_max(g, "maximize", desc, prob.seed, t0, maximize(prob), out);
}

struct RegioArgs {
  double a = 1.0, b = 4.0;
  std::string constraint, out;
  int multistart = 10;
  std::uint64_t seed = 1;
};

int cmd_regiomontanus(const RegioArgs& args, const Globals& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const json c = load_json_file(args.constraint);
  json config;
  config["a"] = args.a;
  config["b"] = args.b;
  config["constraint"] = c;
  config["multistart"] = args.multistart;
  MaxResult r;
  if (c.is_object() && c.value("kind", "") == "segment") {
    if (!c.contains("from") || !c.contains("to")) throw InputError("segment constraint needs 'from' and 'to'");
    const Vec from = c["from"].get<Vec>(), to = c["to"].get<Vec>();
    r = regiomontanus_segment(args.a, args.b, from, to, args.multistart, args.seed);
  } else {
    r = regiomontanus(args.a, args.b, body_from_json(c), args.multistart, args.seed);
  }
  return finish_max(g, "regiomontanus", config, args.seed, t0, r, args.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"powconc: power means, p-concavity checks, heat/Poisson convolutions, BBL verification"};
  app.set_version_flag("--version", std::string(POWCONC_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  for (int i = 0; i < argc; ++i) g.argv.emplace_back(argv[i]);
  g.argv.erase(g.argv.begin());
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--record-time", g.record_time, "include wall time in the manifest");

  MeansArgs ma;
  auto* means = app.add_subcommand("means", "power mean M_p(a,b;lambda) or the exponent pq/(p+q)");
  means->add_option("--p", ma.p, "exponent: number, inf or -inf");
  means->add_option("--q", ma.q, "second exponent (with --ell)");
  means->add_option("--a", ma.a);
  means->add_option("--b", ma.b);
  means->add_option("--lambda", ma.lambda);
  means->add_flag("--ell", ma.ell, "print pq/(p+q) instead of a mean");

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "randomized concavity check of a field");
  check->add_option("kind", ca.kind)->required()->check(CLI::IsMember({"concavity", "parabolic"}));
  check->add_option("--field", ca.field, "field descriptor (JSON)")->required();
  check->add_option("--alpha", ca.alpha);
  check->add_option("--p", ca.p);
  check->add_option("--mode", ca.mode)->check(CLI::IsMember({"plain", "strict", "almost-strict", "almost_strict"}));
  check->add_option("--samples", ca.samples)->check(CLI::PositiveNumber);
  check->add_option("--seed", ca.seed);
  check->add_option("--tol", ca.tol);
  check->add_option("--separation", ca.separation, "absolute pair separation for strictness tests");
  check->add_option("--domain", ca.domain, "spatial sampling body (JSON)");
  check->add_option("--t-lo", ca.t_lo);
  check->add_option("--t-hi", ca.t_hi);
  check->add_flag("--log-time", ca.log_time);
  check->add_option("--out", ca.out);

  ConvolveArgs cv;
  auto* conv = app.add_subcommand("convolve", "tabulate W or P of a body indicator on a grid (CSV)");
  conv->add_option("--kernel", cv.kernel)->required();
  conv->add_option("--body", cv.body)->required();
  conv->add_option("--data", cv.data, "data field (JSON); defaults to the body indicator");
  conv->add_option("--xgrid", cv.xgrid, "lo:hi:count, once per axis")->required();
  conv->add_option("--tgrid", cv.tgrid, "lo:hi:count")->required();
  conv->add_option("--points", cv.points, "quadrature points per axis");
  conv->add_option("--out", cv.out);

  std::string bbl_instance, bbl_out;
  auto* bbl = app.add_subcommand("bbl", "desk verification of one BBL instance");
  bbl->add_option("--instance", bbl_instance)->required();
  bbl->add_option("--out", bbl_out);

  std::string problem, max_out;
  auto* maxi = app.add_subcommand("maximize", "multistart maximization of a quasi-concave objective");
  maxi->add_option("--problem", problem)->required();
  maxi->add_option("--out", max_out);

  RegioArgs ra;
  auto* regio = app.add_subcommand("regiomontanus", "maximize the viewing angle of [a,b] over a constraint");
  regio->add_option("--a", ra.a);
  regio->add_option("--b", ra.b);
  regio->add_option("--constraint", ra.constraint)->required();
  regio->add_option("--multistart", ra.multistart)->check(CLI::PositiveNumber);
  regio->add_option("--seed", ra.seed);
  regio->add_option("--out", ra.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*means) return cmd_means(ma, *means);
    if (*check) return cmd_check(ca, g);
    if (*conv) return cmd_convolve(cv, g);
    if (*bbl) return cmd_bbl(bbl_instance, bbl_out, g);
    if (*maxi) return cmd_maximize(problem, max_out, g);
    if (*regio) return cmd_regiomontanus(ra, g);
  } catch (const ConvergenceError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitFail;
  } catch (const json::exception& e) {
    fmt::print(stderr, "input error: {}\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitInput;
  }
  return kExitInput;
}
