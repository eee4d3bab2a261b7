#pragma once

#include <string>

#include "isac/scenario.hpp"
#include "isac/solvers.hpp"
#include "isac/sweep.hpp"

namespace isac {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitInfeasible = 2,
  kExitNumericalFailure = 3,
  kExitSchemaError = 4,
};

/// 2 when the problem itself has no solution (SINR floors unattainable, target
/// unobservable), 3 when the chosen method failed on a solvable problem.
int exit_code(SolveStatus status);

/// Multi-line report: status, total power in W and dBm, per-user SINR in dB,
/// CRLB against the ceiling, diagnostics.
std::string format_report(const ScenarioDocument& doc, const SolveResult& result);

/// The fully resolved configuration, logged before every run.
std::string format_resolved(const ScenarioDocument& doc);
std::string format_resolved(const ScenarioDocument& doc, const SweepPlan& plan);

}  // namespace isac
