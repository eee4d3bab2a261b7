// Command-line front end: solve, sweep, feasibility and templates.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "isac/errors.hpp"
#include "isac/report.hpp"
#include "isac/scenario.hpp"
#include "isac/solvers.hpp"
#include "isac/sweep.hpp"

namespace {

using namespace isac;

/// Flags that override fields of the scenario document.
struct Overrides {
  std::optional<double> gamma_db;
  std::optional<double> tau_m2;
  std::optional<std::uint64_t> channel_seed;
  std::optional<std::size_t> randomization_count;
  std::optional<double> step_size_w;
  std::optional<double> refine_epsilon;
  std::optional<std::uint64_t> rng_seed;
  std::optional<std::size_t> oracle_grid_points;
  std::optional<double> oracle_power_cap_w;
  std::optional<int> oracle_refinements;
  std::optional<unsigned> threads;

  void attach(CLI::App* app) {
    app->add_option("--gamma-db", gamma_db, "SINR floor for every user, dB");
    app->add_option("--tau-m2", tau_m2, "CRLB ceiling, m^2");
    app->add_option("--channel-seed", channel_seed, "Seed for generated channels");
    app->add_option("--randomization-count", randomization_count, "Gaussian randomization candidates");
    app->add_option("--step-size-w", step_size_w, "Refinement step, W (default: relative to stage one)");
    app->add_option("--refine-epsilon", refine_epsilon, "Relative CRLB slack that stops the refinement");
    app->add_option("--rng-seed", rng_seed, "Seed for the randomization streams");
    app->add_option("--oracle-grid-points", oracle_grid_points, "Oracle grid points per axis");
    app->add_option("--oracle-power-cap-w", oracle_power_cap_w, "Oracle box edge, W");
    app->add_option("--oracle-refinements", oracle_refinements, "Oracle zoom passes");
    app->add_option("--threads", threads, "Worker threads (0 = all cores)");
  }

  void apply(ScenarioDocument& doc) const {
    if (gamma_db) doc.set_gamma_db(*gamma_db);
    if (tau_m2) {
      if (!(*tau_m2 > 0.0)) throw SchemaError("--tau-m2", "must be positive");
      doc.tau_m2 = *tau_m2;
    }
    if (channel_seed) {
      auto* cfg = std::get_if<ChannelConfig>(&doc.channel);
      if (!cfg) throw SchemaError("--channel-seed", "the document uses explicit channels");
      cfg->seed = *channel_seed;
    }
    auto& s = doc.solver;
    if (randomization_count) s.randomization_count = *randomization_count;
    if (step_size_w) s.step_size_w = *step_size_w;
    if (refine_epsilon) s.refine_epsilon = *refine_epsilon;
    if (rng_seed) s.rng_seed = *rng_seed;
    if (oracle_grid_points) s.oracle_grid_points = *oracle_grid_points;
    if (oracle_power_cap_w) s.oracle_power_cap_w = *oracle_power_cap_w;
    if (oracle_refinements) s.oracle_refinements = *oracle_refinements;
    if (threads) s.threads = *threads;
    try {
      s.validate();
    } catch (const std::invalid_argument& e) {
      throw SchemaError("/solver", e.what());
    }
  }
};

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto m = method_from_string(item);
    if (!m) throw SchemaError("--methods", "unknown method '" + item + "'");
    out.push_back(*m);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power control for network integrated sensing and communication"};
  app.require_subcommand(1);

  std::string scenario_path;
  Overrides overrides;

  std::string method_name = "sdr";
  auto* solve_cmd = app.add_subcommand("solve", "Solve one scenario with one method");
  solve_cmd->add_option("scenario", scenario_path, "Scenario document (JSON)")->required();
  solve_cmd->add_option("-m,--method", method_name, "sdr, crlb-approx, separate or oracle");
  overrides.attach(solve_cmd);

  std::string parameter = "sinr_db", methods = "sdr,crlb-approx,separate", output;
  std::optional<double> from, to, step;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> base_seed;
  bool timing = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter and write CSV");
  sweep_cmd->add_option("scenario", scenario_path, "Scenario document (JSON)")->required();
  sweep_cmd->add_option("--parameter", parameter, "sinr_db, target_x or crlb_ceiling");
  sweep_cmd->add_option("--from", from, "First sweep value");
  sweep_cmd->add_option("--to", to, "Last sweep value (inclusive)");
  sweep_cmd->add_option("--step", step, "Sweep step");
  sweep_cmd->add_option("--methods", methods, "Comma-separated methods");
  sweep_cmd->add_option("--trials", trials, "Channel reseeds per sweep value");
  sweep_cmd->add_option("--base-seed", base_seed, "Trial t uses seed base_seed + t");
  sweep_cmd->add_flag("--timing", timing, "Fill the solve_ms column (output is then not reproducible)");
  sweep_cmd->add_option("-o,--output", output, "CSV file (default: standard output)");
  overrides.attach(sweep_cmd);

  auto* feas_cmd = app.add_subcommand("feasibility", "Check whether the SINR floors can be met");
  feas_cmd->add_option("scenario", scenario_path, "Scenario document (JSON)")->required();
  overrides.attach(feas_cmd);

  std::string out_dir = ".";
  auto* tmpl_cmd = app.add_subcommand("templates", "Write the built-in scenario documents");
  tmpl_cmd->add_option("-d,--out-dir", out_dir, "Target directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*tmpl_cmd) {
      std::filesystem::create_directories(out_dir);
      for (const auto& t : scenario_templates()) {
        const auto path = std::filesystem::path(out_dir) / t.file_name;
        std::ofstream f(path, std::ios::binary);
        f << serialize_scenario(t.document);
        if (!f) {
          std::cerr << "error: cannot write " << path.string() << "\n";
          return 1;
        }
        std::cerr << "wrote " << path.string() << "\n";
      }
      return kExitSuccess;
    }

    ScenarioDocument doc = load_scenario(scenario_path);
    overrides.apply(doc);

    if (*feas_cmd) {
      std::cerr << format_resolved(doc);
      const auto gate = check_feasibility(doc.instance().sinr);
      std::cout << to_string(gate.status) << "\n";
      if (gate.status == SolveStatus::Feasible) {
        std::cout << "witness_w:";
        for (Eigen::Index m = 0; m < gate.witness.size(); ++m) std::cout << " " << gate.witness(m);
        std::cout << "\n";
      }
      return exit_code(gate.status);
    }

    if (*solve_cmd) {
      const auto method = method_from_string(method_name);
      if (!method) throw SchemaError("--method", "unknown method '" + method_name + "'");
      std::cerr << format_resolved(doc);
      const auto result = solve(*method, doc.instance(), doc.solver);
      std::cerr << format_report(doc, result);
      return exit_code(result.status);
    }

    if (*sweep_cmd) {
      SweepPlan plan;
      const auto p = sweep_parameter_from_string(parameter);
      if (!p) throw SchemaError("--parameter", "expected sinr_db, target_x or crlb_ceiling");
      plan.parameter = *p;
      if (from) plan.from = *from;
      if (to) plan.to = *to;
      if (step) plan.step = *step;
      plan.methods = parse_methods(methods);
      if (trials) plan.trials = *trials;
      if (base_seed) plan.base_seed = *base_seed;
      plan.threads = doc.solver.threads;
      plan.timing = timing;
      plan.validate();
      std::cerr << format_resolved(doc, plan);
      const auto csv = to_csv(run_sweep(doc, plan));
      if (output.empty()) {
        std::cout << csv;
      } else {
        std::ofstream f(output, std::ios::binary);
        f << csv;
        if (!f) {
          std::cerr << "error: cannot write " << output << "\n";
          return 1;
        }
      }
      return kExitSuccess;
    }
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchemaError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitSuccess;
}
