#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include "json.hpp"

#include "isac/channel.hpp"
#include "isac/geometry.hpp"
#include "isac/metrics.hpp"
#include "isac/solvers.hpp"

namespace isac {

/// One scenario file: scene, channels (generated or explicit), problem and
/// solver settings. Units are part of every field name.
struct ScenarioDocument {
  std::string name;
  Scene<double> scene;
  std::variant<ChannelConfig, ChannelSet> channel;
  /// Per-user SINR floors in dB. `gamma_shared` records whether the file gave
  /// one value for all users, so that serialization reproduces the input.
  Eigen::VectorXd gamma_db;
  bool gamma_shared = true;
  double tau_m2 = 0.05;
  SolverConfig solver;

  bool generated() const { return std::holds_alternative<ChannelConfig>(channel); }

  ProblemSpec<double> problem_spec() const;
  /// Generated channels for the configured seed, or the explicit ones.
  ChannelSet channels() const;
  Instance instance() const;

  /// Sets every user's SINR floor to `db`.
  void set_gamma_db(double db);
};

/// Throws SchemaError (with a JSON-pointer field path) on any violation.
ScenarioDocument parse_scenario(const nlohmann::json& doc);
/// Parses JSON text; syntax errors become SchemaError with line and column.
ScenarioDocument parse_scenario_text(const std::string& text);
ScenarioDocument load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const ScenarioDocument& doc);
/// Pretty-printed JSON with a trailing newline.
std::string serialize_scenario(const ScenarioDocument& doc);

/// Field-by-field equality, exact on numbers.
bool same_document(const ScenarioDocument& a, const ScenarioDocument& b);

/// Two transmitters at [-50, 0] and [0, 50], target at [30, 0].
ScenarioDocument two_tx_template();
/// Three transmitters at [-100, 0], [100, 0] and [0, 100], target at [0, 50].
ScenarioDocument three_tx_template();

struct NamedDocument {
  std::string file_name;
  ScenarioDocument document;
};

std::vector<NamedDocument> scenario_templates();

}  // namespace isac
