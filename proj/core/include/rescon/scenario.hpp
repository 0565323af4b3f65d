#pragma once

#include <optional>
#include <string>

#include "rescon/dynamics.hpp"
#include "rescon/graph.hpp"

namespace rescon {

inline constexpr int kScenarioSchemaVersion = 1;

/// Scenario file as written on disk (JSON, `"schema": 1`). Optional fields
/// stay empty until resolve() applies defaults against a graph.
///
///   {
///     "schema": 1,
///     "graph": "path2.edges",      // optional, relative to the scenario file
///     "protocol": "adaptive",      // or "nominal"
///     "alpha": 1.0,                // required for adaptive
///     "dt": 0.001,                 // optional
///     "t_final": 40.0,             // optional, default 20 / lambda_2
///     "x0": [0.0, 0.0],
///     "x_hat0": [0.0, 0.0],        // optional, default x0
///     "w_hat0": [0.0, 0.0],        // optional, default 0
///     "w": [1.0, 0.0]              // optional, default 0
///   }
struct ScenarioFile {
  std::string source;
  std::optional<std::string> graph_path;  ///< already joined with the scenario directory
  Protocol protocol = Protocol::Adaptive;
  std::optional<double> alpha;
  std::optional<double> dt;
  std::optional<double> t_final;
  Vector x0;
  std::optional<Vector> x_hat0;
  std::optional<Vector> w_hat0;
  std::optional<Vector> w;
};

struct ResolvedScenario {
  SimConfig config;
  DisturbanceProfile disturbance;
  /// x_hat0 was given and differs from x0.
  bool emulator_offset = false;
};

/// Overrides from the command line.
struct ScenarioOverrides {
  std::optional<double> alpha;
  std::optional<double> dt;
  std::optional<double> t_final;
};

ScenarioFile parse_scenario(const std::string& text, const std::string& source = "<input>");
ScenarioFile load_scenario(const std::string& path);

/// Applies defaults and overrides, then validates lengths against g.
/// Throws ParseError naming the scenario file.
ResolvedScenario resolve(const ScenarioFile& file, const Graph& g, const ScenarioOverrides& overrides = {});

}  // namespace rescon
