#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slitpot/cache.hpp"

namespace slitpot {

struct ScenarioConfig {
  std::string scenario;
  /// Parameter values as given (`n-max` -> `5`); missing keys take defaults.
  std::map<std::string, std::string> params;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  CachePolicy cache = CachePolicy::use;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ScenarioReport {
  std::string scenario;
  std::uint64_t seed = 0;
  /// Every parameter with its resolved value.
  std::map<std::string, std::string> config;
  std::vector<CheckResult> checks;  // sorted by name
  std::vector<std::string> outputs;
  std::vector<std::string> notes;
  double wall_seconds = 0.0;

  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
  std::string to_json() const;
};

const std::vector<std::string>& scenario_names();

/// Parameter names and defaults of a scenario.
std::map<std::string, std::string> scenario_defaults(const std::string& scenario);

/// Defaults merged with the given parameters, every value checked for its
/// domain. Throws std::invalid_argument naming the offending parameter.
std::map<std::string, std::string> resolve_params(const ScenarioConfig& cfg);

/// Runs the scenario and writes `<scenario>.csv` (plus scenario specific
/// tables) and `<scenario>_report.json` into out_dir. Parameter errors throw;
/// failures inside a sub-check are recorded as a failed check and the other
/// checks still run.
ScenarioReport run_scenario(const ScenarioConfig& cfg);

/// `scenario=<name> seed=<S> [out=<dir>] [cache=use|refresh|off] [<param>=<value>]...`
/// over one or more lines, `#` comments allowed.
ScenarioConfig parse_scenario_config(const std::string& text);

}  // namespace slitpot
