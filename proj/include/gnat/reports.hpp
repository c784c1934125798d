#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace gnat::reports {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

enum class Command { classify, invert_check, connection_check, curvature_scan, flatness };
enum class Format { json, csv };

std::string_view to_string(Command c);
std::string_view to_string(Format f);
std::optional<Command> parse_command(std::string_view s);
std::optional<Format> parse_format(std::string_view s);
std::vector<std::string> command_names();

struct RunConfig {
  Command command = Command::classify;
  std::string profile = "sasaki";
  std::string manifold = "flat3";
  std::uint64_t seed = 1;
  int samples = 20;
  double t_max = 10.0;
  std::string out;  // empty: standard output
  Format format = Format::json;
  int workers = 0;  // scan threads; 0 picks the hardware concurrency
};

// Throws ConfigError.
void validate(const RunConfig& cfg);

struct Check {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool pass = true;
};

// One CSV row; the JSON report carries the same data under "details".
struct Row {
  std::vector<std::string> cells;
};

struct Report {
  RunConfig config;
  std::vector<Check> checks;
  nlohmann::json verdicts = nlohmann::json::object();
  nlohmann::json details = nlohmann::json::object();
  std::vector<std::string> warnings;
  std::vector<std::string> csv_header;
  std::vector<Row> csv_rows;

  bool pass() const;
};

// Runs the command. Configuration problems throw ConfigError; numerical
// failures are recorded as failed checks.
Report execute(const RunConfig& cfg);

// timestamp: value of "generated_at"; omitted when empty.
nlohmann::json to_json(const Report& r, const std::string& timestamp = {});
std::string to_csv(const Report& r);

// execute + write. Returns 0 when every check passes, 1 otherwise, 2 on a
// configuration error (message on `err`).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace gnat::reports
