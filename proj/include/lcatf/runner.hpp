#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcatf/group.hpp"
#include "lcatf/norms.hpp"

namespace lcatf {

/// One row of the identity registry printed by `lcatf list-identities`.
struct IdentityInfo {
  std::string name;       // key used in summaries and tolerance overrides
  std::string label;      // equation label of the statement being checked
  std::string operation;  // library entry point
  double tolerance;       // default; meaning depends on `relation`
  std::string relation;   // how `value` is compared with `tolerance`
};

const std::vector<IdentityInfo>& identity_registry();
/// Tab-separated table with a header line.
std::string list_identities_table();

enum class Experiment { identities, frames, norms, locop, decay, young, convrel };

struct ExperimentConfig {
  Experiment experiment = Experiment::identities;
  nlohmann::json group;
  std::uint64_t seed = 0;
  std::optional<int> trials;
  std::map<std::string, double> tolerances;
  std::vector<Exponents> exponents;
  double weight_exponent = 0.0;
  std::vector<double> gammas;
  nlohmann::json symbol;  // null for the default bump
  std::size_t top_k = 1;
  int negative_control_seeds = 10;
  std::string output_dir = "lcatf_out";
};

/// Validates the schema; unknown keys and malformed values raise ConfigInvalid.
ExperimentConfig parse_config(const nlohmann::json& j);

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "<=", ">=" or "=="
  bool pass = false;
};

struct RunResult {
  std::string experiment;
  std::vector<Check> checks;
  std::vector<std::filesystem::path> artifacts;

  std::vector<std::string> failures() const;
  /// 0 when every check passes, 2 otherwise.
  int exit_code() const;
};

/// Runs one experiment and writes `<experiment>_summary.json` plus its CSV /
/// JSON tables into `output_dir`.
RunResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& output_dir);

/// Reads, validates and runs a config file. LCATF_OUTPUT_DIR overrides the
/// configured output directory. Returns 0 on success, 2 on failed checks
/// (failure list printed as JSON on `out`), 1 on configuration errors.
int run_config_file(const std::filesystem::path& path, std::ostream& out, std::ostream& err);

}  // namespace lcatf
