#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Result gnat(const std::string& args) {
  static int n = 0;
  const std::string path = ::testing::TempDir() + "gnat_cli_" + std::to_string(n++) + ".out";
  const std::string cmd = std::string(GNAT_BINARY) + " " + args + " > " + path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(path);
  std::remove(path.c_str());
  return r;
}

nlohmann::json without_timestamp(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  j.erase("generated_at");
  return j;
}

}  // namespace

TEST(Cli, FlatnessSasakiFlat) {
  const Result r = gnat("flatness --profile sasaki --manifold flat3");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdicts"]["flatness"], "flat");
  EXPECT_TRUE(j.contains("generated_at"));
}

TEST(Cli, FlatnessSasakiSphere) {
  const Result r = gnat("flatness --profile sasaki --manifold sphere2");
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdicts"]["flatness"], "not_flat");
  EXPECT_EQ(j["verdicts"]["violated"][0], "i");
}

TEST(Cli, InvertCheck) {
  const Result r = gnat("invert-check --profile flat-family --manifold flat2 --samples 50 --seed 7");
  EXPECT_EQ(r.code, 0);
  for (const auto& c : nlohmann::json::parse(r.out)["checks"])
    if (c["name"] == "inverse_identity") EXPECT_LE(c["residual"].get<double>(), 1e-9);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(gnat("flatness --profile nothing-here --manifold flat3").code, 2);
  EXPECT_EQ(gnat("flatness --manifold klein").code, 2);
  EXPECT_EQ(gnat("flatness --samples 0").code, 2);
  EXPECT_EQ(gnat("flatness --t-max -1").code, 2);
  EXPECT_EQ(gnat("flatness --format xml").code, 2);
  EXPECT_EQ(gnat("teleport").code, 2);
  EXPECT_EQ(gnat("").code, 2);
}

TEST(Cli, Version) {
  const Result r = gnat("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1.0.0"), std::string::npos);
}

TEST(Cli, DeterministicReports) {
  for (const std::string cmd : {"curvature-scan --profile flat-family --manifold flat2 --samples 4 --seed 3",
                                "connection-check --profile scaled-sasaki --manifold halfplane2 --samples 5 --seed 11",
                                "invert-check --profile sasaki --manifold sphere2 --samples 10 --seed 2"}) {
    const Result a = gnat(cmd + " --workers 1");
    const Result b = gnat(cmd + " --workers 3");
    ASSERT_EQ(a.code, b.code) << cmd;
    auto ja = without_timestamp(a.out), jb = without_timestamp(b.out);
    EXPECT_EQ(ja.dump(2), jb.dump(2)) << cmd;
  }
}

TEST(Cli, CsvHasHeader) {
  const Result r = gnat("curvature-scan --profile sasaki --manifold flat3 --samples 2 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "site,plane,kind,t,K,r_bar_max");
}

TEST(Cli, WritesToOutPath) {
  const std::string path = ::testing::TempDir() + "gnat_cli_report.json";
  const Result r = gnat("classify --profile flat-family --out " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(nlohmann::json::parse(slurp(path))["verdicts"]["classification"], "riemannian");
  std::remove(path.c_str());
}
