#include "isac/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "isac/errors.hpp"
#include "isac/parallel.hpp"
#include "json_fields.hpp"

namespace isac {

const char* to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::SinrDb: return "sinr_db";
    case SweepParameter::TargetX: return "target_x";
    case SweepParameter::CrlbCeiling: return "crlb_ceiling";
  }
  return "unknown";
}

std::optional<SweepParameter> sweep_parameter_from_string(std::string_view name) {
  for (auto p : {SweepParameter::SinrDb, SweepParameter::TargetX, SweepParameter::CrlbCeiling})
    if (name == to_string(p)) return p;
  return std::nullopt;
}

void SweepPlan::validate() const {
  if (!std::isfinite(from) || !std::isfinite(to)) throw SchemaError("/sweep/from", "sweep bounds must be finite");
  if (!(step > 0.0) || !std::isfinite(step)) throw SchemaError("/sweep/step", "must be positive");
  if (from > to) throw SchemaError("/sweep/from", "must not exceed 'to'");
  if (methods.empty()) throw SchemaError("/sweep/methods", "at least one method is required");
  if (trials < 1) throw SchemaError("/sweep/trials", "must be at least 1");
  if (parameter == SweepParameter::CrlbCeiling && !(from > 0.0))
    throw SchemaError("/sweep/from", "CRLB ceilings must be positive");
}

std::vector<double> SweepPlan::values() const {
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = from + static_cast<double>(i) * step;
  return out;
}

SweepPlan parse_sweep_plan(const nlohmann::json& block, SweepPlan plan) {
  using namespace json_fields;
  const std::string path = "/sweep";
  check_keys(block, {"parameter", "from", "to", "step", "methods", "trials", "base_seed"}, path);
  if (auto it = block.find("parameter"); it != block.end()) {
    const auto p = it->is_string() ? sweep_parameter_from_string(it->get<std::string>()) : std::nullopt;
    if (!p) throw SchemaError(child(path, "parameter"), "expected sinr_db, target_x or crlb_ceiling");
    plan.parameter = *p;
  }
  plan.from = number_or(block, "from", path, plan.from);
  plan.to = number_or(block, "to", path, plan.to);
  plan.step = number_or(block, "step", path, plan.step);
  if (auto it = block.find("methods"); it != block.end()) {
    const auto mpath = child(path, "methods");
    if (!it->is_array()) throw SchemaError(mpath, "expected an array of method names");
    plan.methods.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& v = (*it)[i];
      const auto m = v.is_string() ? method_from_string(v.get<std::string>()) : std::nullopt;
      if (!m) throw SchemaError(child(mpath, i), "expected sdr, crlb-approx, separate or oracle");
      plan.methods.push_back(*m);
    }
  }
  plan.trials = unsigned_or(block, "trials", path, plan.trials);
  plan.base_seed = unsigned_or(block, "base_seed", path, plan.base_seed);
  plan.validate();
  return plan;
}

ScenarioDocument sweep_point(const ScenarioDocument& base, SweepParameter parameter, double value,
                             std::uint64_t trial_seed) {
  ScenarioDocument doc = base;
  switch (parameter) {
    case SweepParameter::SinrDb: doc.set_gamma_db(value); break;
    case SweepParameter::TargetX:
      if (!doc.generated())
        throw SchemaError("/channel/explicit", "target_x sweeps need generated channels that follow the geometry");
      doc.scene.target.x() = value;
      break;
    case SweepParameter::CrlbCeiling: doc.tau_m2 = value; break;
  }
  if (auto* cfg = std::get_if<ChannelConfig>(&doc.channel)) cfg->seed = trial_seed;
  doc.solver.rng_seed = trial_seed;
  return doc;
}

namespace {

double min_margin_db(const ScenarioDocument& doc, const SolveResult& r) {
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index m = 0; m < r.achieved_sinrs.size(); ++m)
    margin = std::min(margin, linear_to_db(r.achieved_sinrs(m)) - doc.gamma_db(m));
  return margin;
}

}  // namespace

SweepTable run_sweep(const ScenarioDocument& base, const SweepPlan& plan) {
  plan.validate();
  if (plan.parameter == SweepParameter::TargetX && !base.generated())
    throw SchemaError("/channel/explicit", "target_x sweeps need generated channels that follow the geometry");
  const auto values = plan.values();
  const std::size_t nm = plan.methods.size();
  const std::size_t tasks = values.size() * plan.trials;
  // Slot layout matches the output order: value-major, then method, then trial.
  std::vector<SweepRow> rows(tasks * nm);
  auto slot = [&](std::size_t v, std::size_t k, std::size_t t) { return (v * nm + k) * plan.trials + t; };

  parallel_for(tasks, plan.threads, [&](std::size_t task) {
    const std::size_t v = task / plan.trials, t = task % plan.trials;
    const std::uint64_t seed = plan.base_seed + t;
    const ScenarioDocument doc = sweep_point(base, plan.parameter, values[v], seed);
    SolverConfig cfg = doc.solver;
    cfg.threads = 1;  // parallelism lives at the task level
    std::optional<Instance> inst;
    std::string setup_error;
    try {
      inst = doc.instance();
    } catch (const std::exception& e) {
      setup_error = e.what();
    }
    for (std::size_t k = 0; k < nm; ++k) {
      SweepRow& row = rows[slot(v, k, t)];
      row.sweep_value = values[v];
      row.method = plan.methods[k];
      row.trial_seed = seed;
      if (!inst) {
        row.result.method = row.method;
        row.result.status = SolveStatus::NumericalFailure;
        row.result.diagnostics.message = setup_error;
        continue;
      }
      const auto start = std::chrono::steady_clock::now();
      try {
        row.result = solve(row.method, *inst, cfg);
      } catch (const std::exception& e) {
        row.result.method = row.method;
        row.result.status = SolveStatus::NumericalFailure;
        row.result.diagnostics.message = e.what();
      }
      if (plan.timing)
        row.solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (row.result.ok()) row.min_sinr_margin_db = min_margin_db(doc, row.result);
    }
  });

  SweepTable table;
  table.rows = std::move(rows);
  for (std::size_t v = 0; v < values.size(); ++v) {
    for (std::size_t k = 0; k < nm; ++k) {
      SweepSummary s;
      s.sweep_value = values[v];
      s.method = plan.methods[k];
      s.trials = plan.trials;
      double sum = 0.0, sum_sq = 0.0, margin = 0.0, crlb = 0.0;
      for (std::size_t t = 0; t < plan.trials; ++t) {
        const auto& row = table.rows[slot(v, k, t)];
        if (!row.result.ok()) continue;
        ++s.succeeded;
        sum += row.result.total_power;
        sum_sq += row.result.total_power * row.result.total_power;
        margin += row.min_sinr_margin_db;
        crlb += row.result.achieved_crlb;
      }
      if (s.succeeded > 0) {
        const double n = static_cast<double>(s.succeeded);
        s.mean_power_w = sum / n;
        s.std_power_w = std::sqrt(std::max(0.0, sum_sq / n - s.mean_power_w * s.mean_power_w));
        s.mean_margin_db = margin / n;
        s.mean_crlb_m2 = crlb / n;
      }
      table.summaries.push_back(s);
    }
  }
  return table;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string to_csv(const SweepTable& table) {
  std::string out = std::string(kCsvHeader) + "\n";
  std::size_t r = 0;
  for (const auto& s : table.summaries) {
    for (std::size_t t = 0; t < s.trials; ++t, ++r) {
      const auto& row = table.rows[r];
      const auto& res = row.result;
      out += num(row.sweep_value) + "," + to_string(row.method) + "," + std::to_string(row.trial_seed) + ",";
      if (res.ok()) {
        out += num(res.total_power) + "," + num(watts_to_dbm(res.total_power)) + "," + num(row.min_sinr_margin_db) +
               "," + num(res.achieved_crlb);
      } else {
        out += ",,,";
      }
      out += std::string(",") + to_string(res.status) + "," + (row.solve_ms ? num(*row.solve_ms) : "") + "\n";
    }
    const std::string ok = "ok=" + std::to_string(s.succeeded) + "/" + std::to_string(s.trials);
    const std::string head = num(s.sweep_value) + "," + to_string(s.method) + ",";
    if (s.succeeded > 0) {
      out += head + "mean," + num(s.mean_power_w) + "," + num(watts_to_dbm(s.mean_power_w)) + "," +
             num(s.mean_margin_db) + "," + num(s.mean_crlb_m2) + "," + ok + ",\n";
      out += head + "std," + num(s.std_power_w) + ",,,," + ok + ",\n";
    } else {
      out += head + "mean,,,,," + ok + ",\n";
      out += head + "std,,,,," + ok + ",\n";
    }
  }
  return out;
}

}  // namespace isac
