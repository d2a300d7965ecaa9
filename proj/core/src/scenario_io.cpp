#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "chanopt/scenario.hpp"

namespace chanopt {

namespace {
std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string render_csv(const ScenarioResult& result) {
  std::string out;
  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    if (c) out += ',';
    out += result.columns[c];
  }
  out += '\n';
  for (const auto& row : result.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_value(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const ScenarioResult& result) {
  nlohmann::ordered_json j;
  j["scenario"] = result.scenario;
  j["columns"] = result.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) j["rows"].push_back(row);
  nlohmann::ordered_json summary;
  summary["pass"] = result.pass;
  summary["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : result.checks)
    summary["checks"].push_back({{"name", c.name}, {"pass", c.pass}});
  j["summary"] = summary;
  return j.dump(2) + "\n";
}

void write_result_file(const ScenarioResult& result, const std::string& path,
                       const std::string& format) {
  std::string payload;
  if (format == "csv") payload = render_csv(result);
  else if (format == "json") payload = render_json(result);
  else throw ConfigError("unknown output format '" + format + "' (expected csv or json)");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << payload;
}

}  // namespace chanopt
