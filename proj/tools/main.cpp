// Scenario runner: every convergence check and counterexample as a named,
// configurable, reproducible subcommand with CSV/JSON output.
//
// Exit codes: 0 all checks passed, 1 checks failed, 2 configuration error,
// 3 internal numeric guard tripped.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chanopt/errors.hpp"
#include "chanopt/scenario.hpp"

namespace {

using chanopt::ConfigError;
using chanopt::ParamValue;
using chanopt::ScenarioConfig;

ParamValue param_from_json(const nlohmann::json& v, const std::string& key) {
  if (v.is_number_integer()) return ParamValue{static_cast<std::int64_t>(v.get<std::int64_t>())};
  if (v.is_number_float()) return ParamValue{v.get<double>()};
  if (v.is_boolean()) return ParamValue{static_cast<std::int64_t>(v.get<bool>() ? 1 : 0)};
  if (v.is_string()) return ParamValue{v.get<std::string>()};
  if (v.is_array()) {
    std::vector<std::int64_t> list;
    for (const auto& e : v) {
      if (!e.is_number_integer())
        throw ConfigError("list parameter '" + key + "' must hold integers");
      list.push_back(e.get<std::int64_t>());
    }
    return ParamValue{std::move(list)};
  }
  throw ConfigError("unsupported value type for parameter '" + key + "'");
}

struct LoadedConfig {
  std::optional<std::string> scenario;
  std::map<std::string, ParamValue> params;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

LoadedConfig load_config_object(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": config must be a JSON object");
  LoadedConfig out;
  for (const auto& [key, value] : j.items()) {
    if (key == "scenario") {
      out.scenario = value.get<std::string>();
    } else if (key == "params") {
      if (!value.is_object()) throw ConfigError(where + ": 'params' must be an object");
      for (const auto& [pkey, pvalue] : value.items())
        out.params[pkey] = param_from_json(pvalue, pkey);
    } else if (key == "out") {
      out.out = value.get<std::string>();
    } else if (key == "format") {
      out.format = value.get<std::string>();
    } else {
      throw ConfigError(where + ": unknown config key '" + key + "'");
    }
  }
  return out;
}

nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return j;
}

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::string token;
  std::stringstream ss(csv);
  while (std::getline(ss, token, ',')) {
    try {
      out.push_back(std::stoll(token));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse integer list entry '" + token + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

int run_one(const ScenarioConfig& config, const std::string& out_path,
            const std::string& format) {
  const chanopt::ScenarioResult result = chanopt::run_scenario(config);
  chanopt::write_result_file(result, out_path, format);
  for (const auto& check : result.checks)
    std::printf("  check %-32s %s\n", check.name.c_str(), check.pass ? "PASS" : "FAIL");
  std::printf("%s: %s (%zu rows, %.3f s) -> %s\n", config.name.c_str(),
              result.pass ? "PASS" : "FAIL", result.rows.size(), result.wall_time_seconds,
              out_path.c_str());
  return result.pass ? 0 : 1;
}

struct ScenarioFlags {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::int64_t seed = 0;
  bool seed_set = false;
  std::string n_values;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite observation-channel optimization scenarios"};
  app.require_subcommand(1);

  const auto infos = chanopt::list_scenarios();

  auto* list_cmd = app.add_subcommand("list", "describe the available scenarios");

  auto* batch_cmd = app.add_subcommand("batch", "run several scenarios from one config");
  std::string batch_config;
  std::string batch_dir = ".";
  std::string batch_format = "csv";
  batch_cmd->add_option("--config", batch_config, "JSON file with a 'scenarios' array");
  batch_cmd->add_option("--out-dir", batch_dir, "directory for per-scenario output files");
  batch_cmd->add_option("--format", batch_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::map<std::string, std::shared_ptr<ScenarioFlags>> flags;
  for (const auto& info : infos) {
    auto f = std::make_shared<ScenarioFlags>();
    auto* cmd = app.add_subcommand(info.name, info.description);
    cmd->add_option("--config", f->config_path, "JSON config file");
    cmd->add_option("--out", f->out_path, "output file path");
    cmd->add_option("--format", f->format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", f->seed, "RNG seed parameter")
        ->each([f](const std::string&) { f->seed_set = true; });
    cmd->add_option("--n-values", f->n_values, "comma-separated list, e.g. 1,2,4,8");
    flags[info.name] = f;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& info : infos) {
        std::printf("%s\n  %s\n  property: %s\n", info.name.c_str(), info.description.c_str(),
                    info.anchor.c_str());
        std::printf("  keys:");
        if (info.keys.empty()) std::printf(" (none)");
        for (const auto& k : info.keys) std::printf(" %s", k.c_str());
        std::printf("\n");
      }
      return 0;
    }

    if (batch_cmd->parsed()) {
      std::vector<ScenarioConfig> configs;
      std::vector<std::string> formats;
      if (!batch_config.empty()) {
        const nlohmann::json j = parse_json_file(batch_config);
        if (!j.is_object() || !j.contains("scenarios") || !j["scenarios"].is_array())
          throw ConfigError("batch config needs a top-level 'scenarios' array");
        for (const auto& [key, value] : j.items())
          if (key != "scenarios") throw ConfigError("unknown batch config key '" + key + "'");
        for (const auto& entry : j["scenarios"]) {
          const LoadedConfig loaded = load_config_object(entry, batch_config);
          if (!loaded.scenario) throw ConfigError("batch entries need a 'scenario' name");
          configs.push_back(ScenarioConfig{*loaded.scenario, loaded.params});
          formats.push_back(loaded.format.value_or(batch_format));
        }
      } else {
        for (const auto& info : infos) {
          configs.push_back(ScenarioConfig{info.name, {}});
          formats.push_back(batch_format);
        }
      }
      int rc = 0;
      for (std::size_t i = 0; i < configs.size(); ++i) {
        const std::string out_path =
            batch_dir + "/" + configs[i].name + "." + formats[i];
        rc = std::max(rc, run_one(configs[i], out_path, formats[i]));
      }
      return rc;
    }

    for (const auto& info : infos) {
      auto* cmd = app.get_subcommand(info.name);
      if (!cmd->parsed()) continue;
      const auto& f = *flags[info.name];

      ScenarioConfig config;
      config.name = info.name;
      std::string out_path = f.out_path;
      std::string format = f.format;
      if (!f.config_path.empty()) {
        const LoadedConfig loaded = load_config_object(parse_json_file(f.config_path),
                                                       f.config_path);
        if (loaded.scenario && *loaded.scenario != info.name)
          throw ConfigError("config file names scenario '" + *loaded.scenario +
                            "' but the subcommand is '" + info.name + "'");
        config.params = loaded.params;
        if (out_path.empty() && loaded.out) out_path = *loaded.out;
        if (loaded.format && f.format == "csv") format = *loaded.format;
      }
      if (f.seed_set) config.params["seed"] = ParamValue{f.seed};
      if (!f.n_values.empty()) config.params["n_values"] = ParamValue{parse_int_list(f.n_values)};
      if (out_path.empty()) out_path = info.name + "." + format;
      return run_one(config, out_path, format);
    }

    throw ConfigError("no subcommand selected");
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const chanopt::NumericGuardError& e) {
    std::fprintf(stderr, "numeric guard: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
