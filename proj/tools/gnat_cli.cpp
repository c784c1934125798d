// gnat: checks and scans for g-natural metrics on tangent bundles.
//
//   gnat flatness --profile sasaki --manifold flat3
//   gnat invert-check --profile flat-family --manifold flat2 --samples 50 --seed 7
//   gnat curvature-scan --profile sasaki --manifold sphere2 --format csv --out scan.csv

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "gnat/reports.hpp"

namespace {

using gnat::reports::Command;
using gnat::reports::Format;
using gnat::reports::RunConfig;

void add_common(CLI::App* sub, RunConfig& cfg, std::string& format) {
  sub->add_option("--profile", cfg.profile, "preset name or profile document (JSON)")->capture_default_str();
  sub->add_option("--manifold", cfg.manifold, "flat2, flat3, sphere2 or halfplane2")->capture_default_str();
  sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  sub->add_option("--samples", cfg.samples, "number of sampled configurations or t values")->capture_default_str();
  sub->add_option("--t-max", cfg.t_max, "upper end of the sampled range of t = |u|^2")->capture_default_str();
  sub->add_option("--out", cfg.out, "report path (default: standard output)");
  sub->add_option("--format", format, "json or csv")->capture_default_str();
  sub->add_option("--workers", cfg.workers, "scan threads (0: all cores)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks and curvature scans for g-natural metrics on tangent bundles"};
  app.set_version_flag("--version", std::string(gnat::reports::kToolVersion));
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";
  const std::map<std::string, std::string> help{
      {"classify", "classify the profile as degenerate, pseudo-Riemannian or Riemannian"},
      {"invert-check", "compare the closed-form inverse of G with G"},
      {"connection-check", "compare the closed-form connection with the Koszul formula"},
      {"curvature-scan", "sample sectional curvatures and check the curvature formulas"},
      {"flatness", "test the flatness characterization"},
  };
  std::map<CLI::App*, Command> commands;
  for (const auto& name : gnat::reports::command_names()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    add_common(sub, cfg, format);
    commands[sub] = *gnat::reports::parse_command(name);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (const auto& [sub, command] : commands)
    if (sub->parsed()) cfg.command = command;
  const auto fmt = gnat::reports::parse_format(format);
  if (!fmt) {
    std::cerr << "gnat: --format must be json or csv\n";
    return 2;
  }
  cfg.format = *fmt;
  return gnat::reports::run(cfg, std::cout, std::cerr);
}
