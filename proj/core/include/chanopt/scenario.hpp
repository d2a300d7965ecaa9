#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "chanopt/errors.hpp"

namespace chanopt {

using ParamValue = std::variant<double, std::int64_t, std::string, std::vector<std::int64_t>>;

/// Named scenario plus its parameter map.  Unknown parameter keys are fatal.
struct ScenarioConfig {
  std::string name;
  std::map<std::string, ParamValue> params;
};

struct CheckResult {
  std::string name;
  bool pass = false;
};

/// Row table plus summary of a scenario run.  pass is the conjunction of the
/// checks.  wall_time_seconds is reported on stdout only; output files stay
/// byte-identical across runs.
struct ScenarioResult {
  std::string scenario;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<CheckResult> checks;
  bool pass = true;
  double wall_time_seconds = 0.0;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
  std::vector<std::string> keys;  // accepted parameter keys (all optional)
  std::string anchor;             // short label of the property exercised
};

/// Stable registry of the available scenarios, sorted by name.
std::vector<ScenarioInfo> list_scenarios();

/// Execute a scenario; throws ConfigError for unknown names/keys/bad values
/// and NumericGuardError when an internal guard trips.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// Summary checks as a pure function of the row table; run_scenario uses
/// exactly this evaluation, so corrupted rows must fail here too.
std::vector<CheckResult> evaluate_scenario_checks(const ScenarioConfig& config,
                                                  const std::vector<std::string>& columns,
                                                  const std::vector<std::vector<double>>& rows);

/// CSV: mandatory header row, then data rows, floats with 17 significant
/// digits.  JSON mirrors the rows and adds the summary object.
std::string render_csv(const ScenarioResult& result);
std::string render_json(const ScenarioResult& result);
void write_result_file(const ScenarioResult& result, const std::string& path,
                       const std::string& format);

}  // namespace chanopt
