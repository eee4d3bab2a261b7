#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "isac/scenario.hpp"
#include "isac/solvers.hpp"

namespace isac {

enum class SweepParameter { SinrDb, TargetX, CrlbCeiling };

const char* to_string(SweepParameter p);
std::optional<SweepParameter> sweep_parameter_from_string(std::string_view name);

struct SweepPlan {
  SweepParameter parameter = SweepParameter::SinrDb;
  double from = -5.0;
  double to = 20.0;
  double step = 2.5;
  std::vector<Method> methods{Method::Sdr, Method::CrlbApprox, Method::Separate};
  std::size_t trials = 20;
  std::uint64_t base_seed = 1;
  /// Workers across (sweep value, trial) tasks; 0 = all cores.
  unsigned threads = 0;
  /// Fill the solve_ms column. Off by default so output is reproducible.
  bool timing = false;

  /// Throws SchemaError naming the offending field.
  void validate() const;
  std::vector<double> values() const;
};

/// Reads an optional "sweep" block ({"parameter", "from", "to", "step",
/// "methods", "trials", "base_seed"}) on top of `defaults`.
SweepPlan parse_sweep_plan(const nlohmann::json& block, SweepPlan defaults = {});

struct SweepRow {
  double sweep_value = 0.0;
  Method method = Method::Sdr;
  std::uint64_t trial_seed = 0;
  SolveResult result;
  /// min_m (SINR_m in dB - Gamma_m in dB).
  double min_sinr_margin_db = 0.0;
  std::optional<double> solve_ms;
};

struct SweepSummary {
  double sweep_value = 0.0;
  Method method = Method::Sdr;
  std::size_t succeeded = 0;
  std::size_t trials = 0;
  double mean_power_w = 0.0;
  double std_power_w = 0.0;
  double mean_margin_db = 0.0;
  double mean_crlb_m2 = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;  // (sweep value, method, trial) order
  std::vector<SweepSummary> summaries;
};

/// The document with the sweep value applied and the channel reseeded for
/// one trial.
ScenarioDocument sweep_point(const ScenarioDocument& base, SweepParameter parameter, double value,
                             std::uint64_t trial_seed);

SweepTable run_sweep(const ScenarioDocument& base, const SweepPlan& plan);

inline constexpr const char* kCsvHeader =
    "sweep_value,method,trial_seed,total_power_w,total_power_dbm,min_sinr_margin_db,crlb_m2,status,solve_ms";

/// Trial rows followed, per (value, method), by "mean" and "std" rows whose
/// status column reads ok=<succeeded>/<trials>.
std::string to_csv(const SweepTable& table);

}  // namespace isac
