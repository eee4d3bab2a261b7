#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "isac/channel.hpp"
#include "isac/conic.hpp"
#include "isac/geometry.hpp"
#include "isac/metrics.hpp"
#include "isac/rng.hpp"

namespace isac {

enum class Method { Sdr, CrlbApprox, Separate, Oracle };

const char* to_string(Method m);
/// Parses "sdr", "crlb-approx", "separate" or "oracle".
std::optional<Method> method_from_string(std::string_view name);

enum class SolveStatus {
  Feasible,
  /// The SINR floors alone cannot be met.
  Infeasible,
  /// The entrywise CRLB relaxation has no solution although the problem does.
  RelaxationInfeasible,
  AllCandidatesInfeasible,
  /// p^T A p <= 0 at the power vector that had to be scaled.
  Unobservable,
  NumericalFailure,
  NoFeasibleGridPoint,
};

const char* to_string(SolveStatus s);

struct SolverConfig {
  std::size_t randomization_count = 200;
  /// Refinement step; by default 1e-3 of the stage-one total over M.
  std::optional<double> step_size_w;
  double refine_epsilon = 1e-3;
  std::uint64_t rng_seed = 1;
  std::size_t oracle_grid_points = 200;
  /// Oracle box edge; by default 4x the separate-design total.
  std::optional<double> oracle_power_cap_w;
  /// Zoom passes after the coarse grid, each 10x finer.
  int oracle_refinements = 8;
  std::size_t max_refine_iterations = 1'000'000;
  /// Worker threads for randomization and the oracle grid; 0 = all cores.
  unsigned threads = 0;

  void validate() const;
};

/// Everything the solvers need about one problem instance.
struct Instance {
  Eigen::MatrixXd gain_sq;     // |h_ml|^2
  Eigen::VectorXd noise_power; // sigma_m^2, W
  ProblemSpec<double> spec;
  SinrSystem<double> sinr;
  SensingCoefficients<double> sensing;

  Eigen::Index size() const { return gain_sq.rows(); }

  static Instance from_parts(Eigen::MatrixXd gain_sq, Eigen::VectorXd noise_power,
                             SensingCoefficients<double> sensing, ProblemSpec<double> spec);
};

Instance make_instance(const Scene<double>& scene, const ChannelSet& channels, const ProblemSpec<double>& spec);

struct Diagnostics {
  int iterations = 0;
  std::size_t candidates = 0;
  std::size_t feasible_candidates = 0;
  /// Optimal value of the relaxation, W^2.
  std::optional<double> sdr_objective_w2;
  /// Certified lower bound on the total power from the relaxation's dual, W.
  std::optional<double> lower_bound_w;
  std::optional<double> step_size_w;
  std::string message;
};

struct SolveResult {
  Method method = Method::Sdr;
  SolveStatus status = SolveStatus::NumericalFailure;
  Eigen::VectorXd power;
  double total_power = 0.0;
  Eigen::VectorXd achieved_sinrs;
  double achieved_crlb = 0.0;
  Diagnostics diagnostics;

  bool ok() const { return status == SolveStatus::Feasible; }
};

/// Y = [1, p^T; p, P] in watts.
struct LiftedVariable {
  Eigen::MatrixXd Y;

  Eigen::Index size() const { return Y.rows() - 1; }
  Eigen::MatrixXd P() const { return Y.bottomRightCorner(size(), size()); }
  Eigen::VectorXd p() const { return Y.col(0).tail(size()); }
};

struct FeasibilityResult {
  SolveStatus status = SolveStatus::NumericalFailure;
  /// Satisfies every SINR row when status is Feasible; it is also the
  /// least-total-power such vector.
  Eigen::VectorXd witness;
};

FeasibilityResult check_feasibility(const SinrSystem<double>& sys);

/// eta * p_bar with eta = max(b^T p / (tau p^T A p), 1). Throws
/// SingularFimError when p^T A p <= 0.
Eigen::VectorXd feasible_scaling(const Eigen::VectorXd& p_bar, const SensingCoefficients<double>& coeffs,
                                 const ProblemSpec<double>& spec);

/// The relaxed lifted program. With power_unit u the variable is Y/u-scaled:
/// Y(0, 0) = 1, Y(0, i) = p_i / u, Y(i, j) = P_ij / u^2.
conic::SemidefiniteProgram<double> build_sdr_program(const SinrSystem<double>& sys,
                                                     const SensingCoefficients<double>& coeffs,
                                                     const ProblemSpec<double>& spec, double power_unit = 1.0);

/// V sqrt(max(D, 0)) from the eigendecomposition P = V D V^T.
Eigen::MatrixXd randomization_factor(const Eigen::MatrixXd& P);

/// |V sqrt(D) w| entrywise.
Eigen::VectorXd gaussian_randomize(const Eigen::MatrixXd& P, const Eigen::VectorXd& w);
Eigen::VectorXd gaussian_randomize(const LiftedVariable& Y, RandomStream& rng);

/// xi* z with xi* = max_m(gamma_m / g_m^T z, b^T z / (tau z^T A z)), or
/// nullopt when some g_m^T z <= 0 or z^T A z <= 0.
std::optional<Eigen::VectorXd> scale_candidate(const Eigen::VectorXd& z, const SinrSystem<double>& sys,
                                               const SensingCoefficients<double>& coeffs,
                                               const ProblemSpec<double>& spec);

SolveResult solve_sdr(const Instance& inst, const SolverConfig& cfg = {});
SolveResult solve_crlb_approx(const Instance& inst, const SolverConfig& cfg = {});
SolveResult solve_separate(const Instance& inst, const SolverConfig& cfg = {});
SolveResult brute_force_oracle(const Instance& inst, const SolverConfig& cfg = {});

SolveResult solve(Method method, const Instance& inst, const SolverConfig& cfg = {});

/// Fills total power, SINRs and CRLB of `p` from scratch.
SolveResult make_result(Method method, SolveStatus status, const Instance& inst, const Eigen::VectorXd& p);

/// True when p meets every SINR floor within (1 - rel) and the CRLB ceiling
/// within (1 + rel), evaluated directly from the SINR definition and the
/// inverse of the 2x2 Fisher information.
bool replay_feasible(const Instance& inst, const Eigen::VectorXd& p, double rel = 1e-6);

}  // namespace isac
