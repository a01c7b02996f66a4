#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace halfline::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kInconclusive = 3 };

/// Everything a command needs; round-trips through JSON.
struct ExperimentConfig {
  std::string command;
  std::optional<nlohmann::json> potential;
  std::string z = "0";
  std::optional<nlohmann::json> scheme;
  std::optional<nlohmann::json> rhs;
  std::filesystem::path out = ".";
  std::uint64_t seed = 1;
  std::optional<std::string> name;
  std::optional<std::string> expect;
  bool exploratory = false;
  std::optional<std::int64_t> count;
  std::vector<std::int64_t> sizes;
  std::map<std::string, double> tolerances;

  /// Tolerance override or the given default.
  double tolerance(const std::string& key, double fallback) const;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CommandResult {
  int exit_code = kPass;
  std::vector<std::filesystem::path> files;
  std::vector<Check> checks;
  std::string message;
};

/// Writes bands.json, dirichlet.json and bands.csv (plus pollution.json and
/// pollution.csv when sizes are configured).
CommandResult cmd_bands(const ExperimentConfig& cfg);

/// Runs one named reproduction; writes <name>.json and its data files.
CommandResult cmd_reproduce(const ExperimentConfig& cfg);

/// Writes fsm_report.json, fsm_report.csv and stability.csv.
CommandResult cmd_fsm(const ExperimentConfig& cfg);

/// Dispatches on cfg.command; usage errors map to exit code 2.
CommandResult run_command(const ExperimentConfig& cfg);

/// Names accepted by cmd_reproduce.
const std::vector<std::string>& reproduction_names();

}  // namespace halfline::cli
