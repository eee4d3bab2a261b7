#include "isac/report.hpp"

#include <cstdio>

namespace isac {

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::Feasible: return kExitSuccess;
    case SolveStatus::Infeasible:
    case SolveStatus::Unobservable: return kExitInfeasible;
    default: return kExitNumericalFailure;
  }
}

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::string format_report(const ScenarioDocument& doc, const SolveResult& r) {
  std::string out;
  out += "method:        " + std::string(to_string(r.method)) + "\n";
  out += "status:        " + std::string(to_string(r.status)) + "\n";
  if (r.ok()) {
    out += "total power:   " + fmt("%.6e W", r.total_power) + " (" + fmt("%.3f dBm", watts_to_dbm(r.total_power)) + ")\n";
    for (Eigen::Index m = 0; m < r.power.size(); ++m) {
      out += "  tx " + std::to_string(m + 1) + ": " + fmt("%.6e W", r.power(m)) + ", SINR " +
             fmt("%.3f dB", linear_to_db(r.achieved_sinrs(m))) + " (floor " + fmt("%.3f dB", doc.gamma_db(m)) + ")\n";
    }
    out += "CRLB:          " + fmt("%.6e m^2", r.achieved_crlb) + " (ceiling " + fmt("%.6e m^2", doc.tau_m2) + ")\n";
  }
  const auto& d = r.diagnostics;
  if (r.method == Method::Sdr && d.sdr_objective_w2) {
    out += "relaxation:    objective " + fmt("%.6e W^2", *d.sdr_objective_w2) + ", lower bound " +
           fmt("%.6e W", d.lower_bound_w.value_or(0.0)) + "\n";
    out += "candidates:    " + std::to_string(d.feasible_candidates) + " of " + std::to_string(d.candidates) +
           " scaled to feasibility\n";
  }
  if (d.iterations > 0) out += "iterations:    " + std::to_string(d.iterations) + "\n";
  if (d.step_size_w) out += "step size:     " + fmt("%.6e W", *d.step_size_w) + "\n";
  if (!d.message.empty()) out += "note:          " + d.message + "\n";
  return out;
}

std::string format_resolved(const ScenarioDocument& doc) {
  return "resolved configuration:\n" + serialize_scenario(doc);
}

std::string format_resolved(const ScenarioDocument& doc, const SweepPlan& plan) {
  nlohmann::json methods = nlohmann::json::array();
  for (auto m : plan.methods) methods.push_back(to_string(m));
  const nlohmann::json sweep{{"parameter", to_string(plan.parameter)},
                             {"from", plan.from},
                             {"to", plan.to},
                             {"step", plan.step},
                             {"methods", methods},
                             {"trials", plan.trials},
                             {"base_seed", plan.base_seed},
                             {"threads", plan.threads},
                             {"timing", plan.timing}};
  return format_resolved(doc) + "sweep plan:\n" + sweep.dump(2) + "\n";
}

}  // namespace isac
