#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gnat/error.hpp"
#include "gnat/reports.hpp"

using namespace gnat::reports;

namespace {

RunConfig config(Command c, std::string profile, std::string manifold) {
  RunConfig cfg;
  cfg.command = c;
  cfg.profile = std::move(profile);
  cfg.manifold = std::move(manifold);
  cfg.samples = 6;
  return cfg;
}

const Check* find_check(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST(Parse, NamesRoundTrip) {
  for (const auto& n : command_names()) EXPECT_EQ(to_string(*parse_command(n)), n);
  EXPECT_FALSE(parse_command("explode"));
  EXPECT_EQ(parse_format("csv"), Format::csv);
  EXPECT_FALSE(parse_format("xml"));
}

TEST(Validate, RejectsBadConfigs) {
  RunConfig cfg;
  cfg.samples = 0;
  EXPECT_THROW(validate(cfg), gnat::ConfigError);
  cfg = {};
  cfg.t_max = 0;
  EXPECT_THROW(validate(cfg), gnat::ConfigError);
  cfg = {};
  cfg.manifold = "torus";
  EXPECT_THROW(validate(cfg), gnat::ConfigError);
  EXPECT_NO_THROW(validate(RunConfig{}));
}

TEST(Execute, ClassifyPresets) {
  const Report r = execute(config(Command::classify, "flat-family", "flat2"));
  EXPECT_EQ(r.verdicts["classification"], "riemannian");
  EXPECT_TRUE(r.pass());
}

TEST(Execute, InvertCheck) {
  RunConfig cfg = config(Command::invert_check, "flat-family", "flat2");
  cfg.samples = 50;
  cfg.seed = 7;
  const Report r = execute(cfg);
  EXPECT_TRUE(r.pass());
  ASSERT_NE(find_check(r, "inverse_identity"), nullptr);
  EXPECT_LE(find_check(r, "inverse_identity")->residual, 1e-9);
}

TEST(Execute, ConnectionCheck) {
  const Report r = execute(config(Command::connection_check, "scaled-sasaki", "sphere2"));
  EXPECT_TRUE(r.pass());
  EXPECT_NE(find_check(r, "closed_form_vs_koszul"), nullptr);
  EXPECT_NE(find_check(r, "torsion_free"), nullptr);
  EXPECT_NE(find_check(r, "metric_compatible"), nullptr);
}

TEST(Execute, CurvatureScanFlat) {
  const Report r = execute(config(Command::curvature_scan, "sasaki", "flat3"));
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.verdicts["scan"], "flat");
  EXPECT_NE(find_check(r, "k02_a1"), nullptr);
  EXPECT_EQ(r.csv_header.front(), "site");
  EXPECT_EQ(r.csv_rows.size(), r.details["samples"].size());
}

TEST(Execute, FlatnessVerdicts) {
  const Report flat = execute(config(Command::flatness, "sasaki", "flat3"));
  EXPECT_EQ(flat.verdicts["flatness"], "flat");
  EXPECT_TRUE(flat.pass());
  const Report sphere = execute(config(Command::flatness, "sasaki", "sphere2"));
  EXPECT_EQ(sphere.verdicts["flatness"], "not_flat");
  EXPECT_EQ(sphere.verdicts["violated"], nlohmann::json::array({"i"}));
  EXPECT_FALSE(sphere.pass());
}

TEST(Execute, ComputationErrorsBecomeFailedChecks) {
  // A degenerate profile cannot be inverted; the report still comes back.
  const std::string path = ::testing::TempDir() + "gnat_degenerate.json";
  {
    std::ofstream f(path);
    f << R"({"functions": {"alpha1": 1, "alpha2": 1}})";
  }
  const Report r = execute(config(Command::invert_check, path, "flat2"));
  EXPECT_FALSE(r.pass());
  std::remove(path.c_str());
}

TEST(Execute, UnknownProfileIsConfigError) {
  EXPECT_THROW(execute(config(Command::classify, "/no/such/profile.json", "flat2")), gnat::ConfigError);
}

TEST(Json, KeysAndTimestamp) {
  const Report r = execute(config(Command::classify, "sasaki", "flat3"));
  const nlohmann::json a = to_json(r);
  EXPECT_FALSE(a.contains("generated_at"));
  EXPECT_EQ(a["schema"], 1);
  EXPECT_EQ(a["version"], std::string(kToolVersion));
  EXPECT_EQ(a["config"]["profile"], "sasaki");
  EXPECT_FALSE(a["config"].contains("out"));
  EXPECT_EQ(to_json(r, "2026-01-01T00:00:00Z")["generated_at"], "2026-01-01T00:00:00Z");
  const std::string dumped = a.dump();
  EXPECT_LT(dumped.find("\"checks\""), dumped.find("\"command\""));
}

TEST(Run, ExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(run(config(Command::flatness, "sasaki", "flat3"), out, err), 0);
  EXPECT_EQ(run(config(Command::flatness, "sasaki", "sphere2"), out, err), 1);
  EXPECT_EQ(run(config(Command::flatness, "nope", "flat3"), out, err), 2);
  RunConfig bad = config(Command::classify, "sasaki", "flat3");
  bad.samples = -1;
  EXPECT_EQ(run(bad, out, err), 2);
}
