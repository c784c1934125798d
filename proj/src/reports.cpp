#include "gnat/reports.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "gnat/curvature_lab.hpp"
#include "gnat/error.hpp"

namespace gnat::reports {

namespace {

struct CommandName {
  Command command;
  std::string_view name;
};
constexpr std::array<CommandName, 5> kCommands{{{Command::classify, "classify"},
                                                {Command::invert_check, "invert-check"},
                                                {Command::connection_check, "connection-check"},
                                                {Command::curvature_scan, "curvature-scan"},
                                                {Command::flatness, "flatness"}}};

// Curvature and connection sites keep |u| ≤ 2, matching the scan radii.
constexpr double kCurvatureTMax = 4.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Check upper(std::string name, double residual, double tol) {
  return {std::move(name), residual, tol, residual <= tol};
}

Vec gaussian(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> N;
  Vec v(m);
  for (int i = 0; i < m; ++i) v(i) = N(rng);
  return v;
}

// Random (x, u) with t = g(u, u) uniform on [0, t_hi].
TangentPoint random_site(std::mt19937_64& rng, const ChartedManifold& M, double t_hi) {
  const ChartPoint x = M.sample_point(rng, 3);
  const Mat g = M.metric_at(x);
  Vec u = gaussian(rng, M.dim());
  const double t = std::uniform_real_distribution<double>(0.0, t_hi)(rng);
  u *= std::sqrt(t / u.dot(g * u));
  return make_tangent_point(M, x, u);
}

// Records the first few numerical failures of a sampled check.
struct FailureLog {
  int count = 0;
  std::vector<std::string>* warnings;

  void add(const std::string& what, int sample, const std::exception& e) {
    ++count;
    if (count <= 5) warnings->push_back(what + " sample " + std::to_string(sample) + ": " + e.what());
  }
  Check check(const std::string& name) const {
    return {name, static_cast<double>(count), 0.0, count == 0};
  }
};

void check_rows(Report& r) {
  r.csv_header = {"check", "residual", "tolerance", "pass"};
  for (const auto& c : r.checks) r.csv_rows.push_back({{c.name, fmt(c.residual), fmt(c.tolerance), c.pass ? "true" : "false"}});
}

// ------------------------------------------------------------------ commands

void do_classify(Report& r, const MetricProfile& p) {
  const auto grid = sample_grid(r.config.t_max, r.config.samples);
  const Classification cls = classify(p, grid);
  r.verdicts["classification"] = std::string(to_string(cls));

  double min_det = std::numeric_limits<double>::infinity();
  nlohmann::json table = nlohmann::json::array();
  for (double t : grid) {
    const DerivedValues d = derive(p, t);
    min_det = std::min(min_det, std::abs(d.alpha_det * d.phi_det));
    table.push_back({{"t", t}, {"alpha", d.alpha_det}, {"phi", d.phi_det}, {"phi1", d.phi1}, {"phi2", d.phi2},
                     {"phi3", d.phi3}});
  }
  r.details["samples"] = table;
  r.details["min_abs_alpha_phi"] = min_det;
  r.checks.push_back({"nondegenerate", min_det, kDegeneracyThreshold, min_det >= kDegeneracyThreshold});
  const DerivativeCheck dc = check_derivatives(p, grid);
  r.checks.push_back(upper("derivative_consistency", dc.max_relative_error, 1e-6));
  check_rows(r);
}

void do_invert_check(Report& r, const MetricProfile& p, const ChartedManifold& M) {
  std::mt19937_64 rng(r.config.seed);
  double product = 0, versus_numeric = 0, pru1 = 0;
  FailureLog fails{0, &r.warnings};
  for (int k = 0; k < r.config.samples; ++k) {
    try {
      const TangentPoint P = random_site(rng, M, r.config.t_max);
      const Mat G = assemble_block(p, P).full();
      const Mat Ginv = inverse_block(p, P).full();
      const Mat I = Mat::Identity(G.rows(), G.cols());
      product = std::max(product, max_abs(Mat(G * Ginv - I)));
      const Mat direct = G.fullPivLu().inverse();
      versus_numeric = std::max(versus_numeric, max_abs(Mat(Ginv - direct)) / std::max(1.0, max_abs(direct)));
      for (double v : pru1_residuals(p, P.t)) pru1 = std::max(pru1, std::abs(v));
    } catch (const Error& e) {
      fails.add("inverse", k, e);
    }
  }
  r.checks.push_back(upper("inverse_identity", product, 1e-9));
  r.checks.push_back(upper("inverse_vs_numeric", versus_numeric, 1e-9));
  r.checks.push_back(upper("pru1_identities", pru1, 1e-10));
  r.checks.push_back(fails.check("numerical_failures"));
  r.verdicts["inverse"] = fails.count == 0 && product <= 1e-9 ? "consistent" : "inconsistent";
  check_rows(r);
}

void do_connection_check(Report& r, const MetricProfile& p, const ChartedManifold& M) {
  std::mt19937_64 rng(r.config.seed);
  const int m = M.dim();
  const double t_hi = std::min(r.config.t_max, kCurvatureTMax);
  double koszul = 0, torsion = 0, compat = 0;
  FailureLog fails{0, &r.warnings};
  for (int k = 0; k < r.config.samples; ++k) {
    try {
      const TangentPoint P = random_site(rng, M, t_hi);
      const LiftPair kind = kAllLiftPairs[static_cast<std::size_t>(k) % kAllLiftPairs.size()];
      const Vec X = gaussian(rng, m), Y = gaussian(rng, m), Z = gaussian(rng, m);
      koszul = std::max(koszul, relative_residual(nabla_bar(p, M, P, kind, X, Y), koszul_oracle(p, M, P, kind, X, Y)));
      torsion = std::max(torsion, torsion_residual(p, M, P, kind, X, Y));
      const tm::LiftField A{(k & 1) == 0, X}, B{(k & 2) == 0, Y}, C{(k & 4) == 0, Z};
      compat = std::max(compat, metric_compatibility_residual(p, M, P, A, B, C));
    } catch (const Error& e) {
      fails.add("connection", k, e);
    }
  }
  r.checks.push_back(upper("closed_form_vs_koszul", koszul, 1e-5));
  r.checks.push_back(upper("torsion_free", torsion, 1e-5));
  r.checks.push_back(upper("metric_compatible", compat, 1e-5));
  r.checks.push_back(fails.check("numerical_failures"));
  r.verdicts["connection"] = koszul <= 1e-5 && fails.count == 0 ? "consistent" : "inconsistent";
  check_rows(r);
}

void do_curvature_scan(Report& r, const MetricProfile& p, const ChartedManifold& M) {
  ScanOptions opts;
  opts.n_sites = r.config.samples;
  opts.seed = r.config.seed;
  opts.workers = r.config.workers;
  const ScanReport scan = constant_curvature_scan(p, M, opts);
  r.warnings.insert(r.warnings.end(), scan.warnings.begin(), scan.warnings.end());

  // Oracle and skew-symmetry spot checks on their own seed stream.
  std::mt19937_64 rng(r.config.seed ^ 0x9e3779b97f4a7c15ULL);
  const int m = M.dim();
  const double t_hi = std::min(r.config.t_max, kCurvatureTMax);
  double oracle = 0, skew = 0;
  FailureLog fails{0, &r.warnings};
  for (int k = 0; k < r.config.samples; ++k) {
    try {
      const TangentPoint P = random_site(rng, M, t_hi);
      const CurvatureSite site = CurvatureSite::make(p, M, P.x, P.u);
      const LiftVector A{gaussian(rng, m), gaussian(rng, m)};
      const LiftVector B{gaussian(rng, m), gaussian(rng, m)};
      const LiftVector C{gaussian(rng, m), gaussian(rng, m)};
      const LiftVector ab = r_bar(site, A, B, C);
      oracle = std::max(oracle, relative_residual(ab, coordinate_curvature_oracle(p, M, P, A, B, C)));
      skew = std::max(skew, (ab + r_bar(site, B, A, C)).max_abs() / std::max(1.0, ab.max_abs()));
    } catch (const Error& e) {
      fails.add("curvature", k, e);
    }
  }
  r.checks.push_back(upper("curvature_vs_coordinate_oracle", oracle, 1e-4));
  r.checks.push_back(upper("skew_symmetry", skew, 1e-9));
  r.checks.push_back(fails.check("numerical_failures"));
  if (scan.samples.empty()) r.checks.push_back({"sampled_planes", 0.0, 1.0, false});
  if (scan.verdict == ScanVerdict::flat || scan.verdict == ScanVerdict::constant_nonzero) {
    r.checks.push_back(upper("k02_a1", scan.k02_residual[0], 1e-6));
    r.checks.push_back(upper("k02_a2", scan.k02_residual[1], 1e-6));
    r.checks.push_back(upper("k02_a3", scan.k02_residual[2], 1e-6));
    r.checks.push_back(upper("rp2_t0", scan.rp2_residual, 1e-8));
  }

  r.verdicts["scan"] = std::string(to_string(scan.verdict));
  r.details["K_min"] = scan.K_min;
  r.details["K_max"] = scan.K_max;
  r.details["spread"] = scan.spread;
  r.details["K_estimate"] = scan.K_estimate;
  r.details["r_bar_max"] = scan.r_bar_max;
  r.details["skipped_planes"] = scan.skipped_planes;
  nlohmann::json samples = nlohmann::json::array();
  r.csv_header = {"site", "plane", "kind", "t", "K", "r_bar_max"};
  for (const auto& s : scan.samples) {
    samples.push_back({{"site", s.site}, {"plane", s.plane}, {"kind", std::string(to_string(s.kind))},
                       {"t", s.t}, {"K", s.K}, {"r_bar_max", s.r_bar_max}});
    r.csv_rows.push_back({{std::to_string(s.site), std::to_string(s.plane), std::string(to_string(s.kind)),
                           fmt(s.t), fmt(s.K), fmt(s.r_bar_max)}});
  }
  r.details["samples"] = samples;
}

void do_flatness(Report& r, const MetricProfile& p, const ChartedManifold& M) {
  const auto grid = sample_grid(r.config.t_max, std::max(r.config.samples, 2));
  const FlatnessResult res = flatness_check_tc(p, M, grid, r.config.seed);
  for (const auto& c : res.conditions) {
    r.checks.push_back({"condition_" + c.name, c.residual, c.tolerance, c.pass});
    if (!c.detail.empty()) r.details["condition_" + c.name] = c.detail;
  }
  r.verdicts["flatness"] = res.flat ? "flat" : "not_flat";
  r.verdicts["violated"] = res.violated();

  try {
    std::array<double, 9> worst{};
    for (const auto& l : lemma_l5_residuals(p, grid)) {
      const std::array<double, 9> v{l.a, l.b, l.c, l.d[0], l.d[1], l.d[2], l.s[0], l.s[1], l.s[2]};
      for (std::size_t i = 0; i < v.size(); ++i) worst[i] = std::max(worst[i], v[i]);
    }
    r.details["necessary_conditions"] = {{"a", worst[0]}, {"b", worst[1]}, {"c", worst[2]},
                                         {"d_f6", worst[3]}, {"d_f7", worst[4]}, {"d_f8", worst[5]},
                                         {"system_1", worst[6]}, {"system_2", worst[7]}, {"system_3", worst[8]}};
  } catch (const Error& e) {
    r.warnings.push_back(std::string("necessary-condition residuals unavailable: ") + e.what());
  }
  check_rows(r);
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& e : kCommands)
    if (e.command == c) return e.name;
  return "?";
}

std::string_view to_string(Format f) { return f == Format::json ? "json" : "csv"; }

std::optional<Command> parse_command(std::string_view s) {
  for (const auto& e : kCommands)
    if (e.name == s) return e.command;
  return std::nullopt;
}

std::optional<Format> parse_format(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  return std::nullopt;
}

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& e : kCommands) out.emplace_back(e.name);
  return out;
}

void validate(const RunConfig& cfg) {
  if (cfg.samples < 1) throw ConfigError("--samples must be at least 1");
  if (!(cfg.t_max > 0.0)) throw ConfigError("--t-max must be positive");
  if (cfg.workers < 0) throw ConfigError("--workers must not be negative");
  const auto names = builtin_manifold_names();
  if (std::find(names.begin(), names.end(), cfg.manifold) == names.end())
    throw ConfigError("unknown manifold '" + cfg.manifold + "'");
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Report execute(const RunConfig& cfg) {
  validate(cfg);
  MetricProfile p;
  try {
    p = load_profile(cfg.profile);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  const ChartedManifold M = builtin_manifold(cfg.manifold);

  Report r;
  r.config = cfg;
  r.warnings = p.warnings();
  r.details["profile_label"] = p.label();
  try {
    switch (cfg.command) {
      case Command::classify: do_classify(r, p); break;
      case Command::invert_check: do_invert_check(r, p, M); break;
      case Command::connection_check: do_connection_check(r, p, M); break;
      case Command::curvature_scan: do_curvature_scan(r, p, M); break;
      case Command::flatness: do_flatness(r, p, M); break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    r.checks.push_back({"computation", 1.0, 0.0, false});
    r.warnings.push_back(e.what());
  }
  return r;
}

nlohmann::json to_json(const Report& r, const std::string& timestamp) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  nlohmann::json doc = {
      {"schema", kSchemaVersion},
      {"tool", "gnat"},
      {"version", std::string(kToolVersion)},
      {"command", std::string(to_string(r.config.command))},
      {"config",
       {{"command", std::string(to_string(r.config.command))},
        {"profile", r.config.profile},
        {"manifold", r.config.manifold},
        {"seed", r.config.seed},
        {"samples", r.config.samples},
        {"t_max", r.config.t_max},
        {"format", std::string(to_string(r.config.format))}}},
      {"checks", checks},
      {"verdicts", r.verdicts},
      {"details", r.details},
      {"warnings", r.warnings},
      {"pass", r.pass()},
  };
  if (!timestamp.empty()) doc["generated_at"] = timestamp;
  return doc;
}

std::string to_csv(const Report& r) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(r.csv_header);
  for (const auto& row : r.csv_rows) line(row.cells);
  return os.str();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Report r;
  try {
    r = execute(cfg);
  } catch (const ConfigError& e) {
    err << "gnat: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "gnat: " << e.what() << '\n';
    return 1;
  }

  const std::string body = cfg.format == Format::json ? to_json(r, utc_now()).dump(2) + "\n" : to_csv(r);
  if (cfg.out.empty()) {
    out << body;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "gnat: cannot write '" << cfg.out << "'\n";
      return 2;
    }
    f << body;
  }
  for (const auto& w : r.warnings) err << "warning: " << w << '\n';
  return r.pass() ? 0 : 1;
}

}  // namespace gnat::reports
