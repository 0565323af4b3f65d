#include "rescon/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rescon/errors.hpp"

namespace rescon {

namespace {

using nlohmann::json;

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

double number_field(const json& j, const char* key, const std::string& source) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ParseError(source, 0, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

Vector vector_field(const json& j, const char* key, const std::string& source) {
  const auto& v = j.at(key);
  if (!v.is_array()) throw ParseError(source, 0, std::string("field '") + key + "' must be an array of numbers");
  Vector out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) throw ParseError(source, 0, std::string("field '") + key + "' must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1), "invalid JSON");
  }
  if (!j.is_object()) throw ParseError(source, 1, "scenario must be a JSON object");

  static const char* known[] = {"schema", "graph", "protocol", "alpha", "dt", "t_final",
                                "x0",     "x_hat0", "w_hat0",  "w"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ParseError(source, 0, "unknown field '" + key + "'");
    }
  }

  if (!j.contains("schema") || !j["schema"].is_number_integer() || j["schema"].get<int>() != kScenarioSchemaVersion) {
    throw ParseError(source, 0, "missing or unsupported 'schema' (expected 1)");
  }

  ScenarioFile f;
  f.source = source;
  if (j.contains("graph")) {
    if (!j["graph"].is_string()) throw ParseError(source, 0, "field 'graph' must be a string");
    std::filesystem::path p = j["graph"].get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(source).parent_path() / p;
    f.graph_path = p.string();
  }
  if (!j.contains("protocol") || !j["protocol"].is_string()) {
    throw ParseError(source, 0, "missing string field 'protocol'");
  }
  try {
    f.protocol = protocol_from_string(j["protocol"].get<std::string>());
  } catch (const Error& e) {
    throw ParseError(source, 0, e.what());
  }
  if (j.contains("alpha")) f.alpha = number_field(j, "alpha", source);
  if (j.contains("dt")) f.dt = number_field(j, "dt", source);
  if (j.contains("t_final")) f.t_final = number_field(j, "t_final", source);
  if (!j.contains("x0")) throw ParseError(source, 0, "missing field 'x0'");
  f.x0 = vector_field(j, "x0", source);
  if (j.contains("x_hat0")) f.x_hat0 = vector_field(j, "x_hat0", source);
  if (j.contains("w_hat0")) f.w_hat0 = vector_field(j, "w_hat0", source);
  if (j.contains("w")) f.w = vector_field(j, "w", source);
  return f;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

ResolvedScenario resolve(const ScenarioFile& file, const Graph& g, const ScenarioOverrides& overrides) {
  const std::size_t n = g.node_count();
  auto check_len = [&](const Vector& v, const char* key) {
    if (v.size() != n) {
      throw ParseError(file.source, 0, std::string("field '") + key + "' has length " + std::to_string(v.size()) +
                                           " but the graph has " + std::to_string(n) + " nodes");
    }
  };

  ResolvedScenario r;
  SimConfig& cfg = r.config;
  cfg.protocol = file.protocol;
  const auto alpha = overrides.alpha ? overrides.alpha : file.alpha;
  if (file.protocol == Protocol::Adaptive && !alpha) {
    throw ParseError(file.source, 0, "adaptive protocol requires 'alpha'");
  }
  cfg.alpha = alpha.value_or(0.0);
  cfg.dt = overrides.dt.value_or(file.dt.value_or(kDefaultTimeStep));
  if (overrides.t_final) {
    cfg.t_final = *overrides.t_final;
  } else if (file.t_final) {
    cfg.t_final = *file.t_final;
  } else {
    if (!is_connected(g)) throw PreconditionError("graph not connected");
    cfg.t_final = 20.0 / algebraic_connectivity(g);
  }

  check_len(file.x0, "x0");
  cfg.x0 = file.x0;
  if (file.x_hat0) {
    check_len(*file.x_hat0, "x_hat0");
    cfg.x_hat0 = *file.x_hat0;
    r.emulator_offset = cfg.x_hat0 != cfg.x0;
  } else {
    cfg.x_hat0 = cfg.x0;
  }
  if (file.w_hat0) {
    check_len(*file.w_hat0, "w_hat0");
    cfg.w_hat0 = *file.w_hat0;
  } else {
    cfg.w_hat0.assign(n, 0.0);
  }
  if (file.protocol == Protocol::Nominal) {
    cfg.x_hat0.assign(n, 0.0);
    cfg.w_hat0.assign(n, 0.0);
    r.emulator_offset = false;
  }
  if (file.w) {
    check_len(*file.w, "w");
    r.disturbance.w = *file.w;
  } else {
    r.disturbance = DisturbanceProfile::none(n);
  }

  try {
    cfg.validate(n);
  } catch (const Error& e) {
    throw ParseError(file.source, 0, e.what());
  }
  return r;
}

}  // namespace rescon
