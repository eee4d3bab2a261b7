#include "isac/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "isac/parallel.hpp"

namespace isac {

const char* to_string(Method m) {
  switch (m) {
    case Method::Sdr: return "sdr";
    case Method::CrlbApprox: return "crlb-approx";
    case Method::Separate: return "separate";
    case Method::Oracle: return "oracle";
  }
  return "unknown";
}

std::optional<Method> method_from_string(std::string_view name) {
  for (auto m : {Method::Sdr, Method::CrlbApprox, Method::Separate, Method::Oracle})
    if (name == to_string(m)) return m;
  return std::nullopt;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::RelaxationInfeasible: return "relaxation-infeasible";
    case SolveStatus::AllCandidatesInfeasible: return "all-candidates-infeasible";
    case SolveStatus::Unobservable: return "unobservable";
    case SolveStatus::NumericalFailure: return "numerical-failure";
    case SolveStatus::NoFeasibleGridPoint: return "no-feasible-grid-point";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (randomization_count < 1) throw std::invalid_argument("randomization_count must be at least 1");
  if (step_size_w && !(*step_size_w > 0.0)) throw std::invalid_argument("step_size_w must be positive");
  if (!(refine_epsilon > 0.0 && refine_epsilon < 1.0)) throw std::invalid_argument("refine_epsilon must lie in (0, 1)");
  if (oracle_grid_points < 2) throw std::invalid_argument("oracle_grid_points must be at least 2");
  if (oracle_power_cap_w && !(*oracle_power_cap_w > 0.0))
    throw std::invalid_argument("oracle_power_cap_w must be positive");
  if (oracle_refinements < 0) throw std::invalid_argument("oracle_refinements must be non-negative");
}

Instance Instance::from_parts(Eigen::MatrixXd gain_sq, Eigen::VectorXd noise_power, SensingCoefficients<double> sensing,
                              ProblemSpec<double> spec) {
  spec.validate();
  const auto M = gain_sq.rows();
  if (gain_sq.cols() != M || noise_power.size() != M || sensing.size() != M || spec.size() != M)
    throw std::invalid_argument("instance dimensions disagree");
  if (!(gain_sq.diagonal().array() > 0.0).all()) throw std::invalid_argument("direct-link gains must be positive");
  if (!(noise_power.array() > 0.0).all()) throw std::invalid_argument("noise powers must be positive");
  Instance inst;
  inst.sinr = build_sinr_system<double>(gain_sq, noise_power, spec);
  inst.gain_sq = std::move(gain_sq);
  inst.noise_power = std::move(noise_power);
  inst.spec = std::move(spec);
  inst.sensing = std::move(sensing);
  return inst;
}

Instance make_instance(const Scene<double>& scene, const ChannelSet& channels, const ProblemSpec<double>& spec) {
  channels.comm.validate();
  channels.radar.validate();
  return Instance::from_parts(channels.comm.gain_sq(), channels.comm.noise_power,
                              sensing_coefficients(scene, channels.radar), spec);
}

namespace {

/// Solves min c^T p s.t. R p >= beta, p >= 0 after scaling each column by the
/// power at which it alone reaches the bound magnitudes, so that the simplex
/// works on O(1) data whatever the physical units.
conic::LpSolution<double> solve_power_lp(const Eigen::MatrixXd& R, const Eigen::VectorXd& beta,
                                         const Eigen::VectorXd& c) {
  const auto n = R.cols();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  for (Eigen::Index l = 0; l < n; ++l) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < R.rows(); ++i)
      worst = std::max(worst, std::abs(R(i, l)) / std::max(std::abs(beta(i)), 1e-300));
    if (worst > 0.0) d(l) = 1.0 / worst;
  }
  conic::LinearProgram<double> lp(c.cwiseProduct(d));
  lp.rows = R * d.asDiagonal();
  lp.bounds = beta;
  auto sol = conic::solve_lp(lp);
  if (sol.status == conic::Status::Optimal || sol.status == conic::Status::Unbounded) sol.x = sol.x.cwiseProduct(d);
  return sol;
}

SolveStatus from_lp(conic::Status s) {
  switch (s) {
    case conic::Status::Optimal: return SolveStatus::Feasible;
    case conic::Status::Infeasible: return SolveStatus::Infeasible;
    default: return SolveStatus::NumericalFailure;
  }
}

SolveResult failure(Method method, SolveStatus status, std::string message) {
  SolveResult r;
  r.method = method;
  r.status = status;
  r.diagnostics.message = std::move(message);
  return r;
}

/// Feasibility straight from the SINR definition and the inverted Fisher
/// information; no exceptions, so it can sit in the oracle's inner loop.
bool direct_feasible(const Instance& inst, const Eigen::VectorXd& p, double rel) {
  const auto M = inst.size();
  for (Eigen::Index m = 0; m < M; ++m) {
    double interference = inst.noise_power(m);
    for (Eigen::Index l = 0; l < M; ++l)
      if (l != m) interference += inst.gain_sq(m, l) * p(l);
    if (inst.gain_sq(m, m) * p(m) < inst.spec.sinr_thresholds(m) * (1.0 - rel) * interference) return false;
  }
  const auto f = fim_terms(inst.sensing, p);
  if (f.singular()) return false;
  return (f.xx + f.yy) / f.det <= inst.spec.crlb_ceiling * (1.0 + rel);
}

}  // namespace

bool replay_feasible(const Instance& inst, const Eigen::VectorXd& p, double rel) {
  if (p.size() != inst.size() || !(p.array() >= 0.0).all()) return false;
  return direct_feasible(inst, p, rel);
}

SolveResult make_result(Method method, SolveStatus status, const Instance& inst, const Eigen::VectorXd& p) {
  SolveResult r;
  r.method = method;
  r.status = status;
  r.power = p;
  r.total_power = p.sum();
  r.achieved_sinrs = compute_sinrs<double>(inst.gain_sq, inst.noise_power, p);
  try {
    const auto C = crlb_matrix(inst.sensing, p);
    r.achieved_crlb = C.trace();
  } catch (const SingularFimError&) {
    r.achieved_crlb = std::numeric_limits<double>::infinity();
  }
  return r;
}

FeasibilityResult check_feasibility(const SinrSystem<double>& sys) {
  FeasibilityResult out;
  const auto sol = solve_power_lp(sys.G, sys.gamma_tilde, Eigen::VectorXd::Ones(sys.size()));
  out.status = from_lp(sol.status);
  if (out.status == SolveStatus::Feasible) out.witness = sol.x.cwiseMax(0.0);
  return out;
}

Eigen::VectorXd feasible_scaling(const Eigen::VectorXd& p_bar, const SensingCoefficients<double>& coeffs,
                                 const ProblemSpec<double>& spec) {
  const auto f = fim_terms(coeffs, p_bar);
  if (f.singular()) throw SingularFimError("p^T A p is not positive: scaling cannot reach the CRLB ceiling");
  const double eta = std::max((f.xx + f.yy) / (spec.crlb_ceiling * f.det), 1.0);
  return eta * p_bar;
}

conic::SemidefiniteProgram<double> build_sdr_program(const SinrSystem<double>& sys,
                                                     const SensingCoefficients<double>& coeffs,
                                                     const ProblemSpec<double>& spec, double power_unit) {
  const auto M = sys.size();
  if (M < 1 || coeffs.size() != M || spec.size() != M) throw std::invalid_argument("SDR dimensions disagree");
  if (!(power_unit > 0.0)) throw std::invalid_argument("power unit must be positive");
  const double u = power_unit;
  const Eigen::Index d = M + 1;
  conic::SemidefiniteProgram<double> sdp(d);

  Eigen::VectorXd ones = Eigen::VectorXd::Ones(d);
  ones(0) = 0.0;
  sdp.objective = ones * ones.transpose();

  Eigen::MatrixXd anchor = Eigen::MatrixXd::Zero(d, d);
  anchor(0, 0) = 1.0;
  sdp.add(anchor, conic::Sense::Equal, 1.0);

  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) sdp.nonnegative_entries.emplace_back(i, j);

  // Row m of [-gamma, G] applied to column i of Y, divided by gamma_m.
  for (Eigen::Index m = 0; m < M; ++m) {
    Eigen::VectorXd a(d);
    a(0) = -1.0;
    a.tail(M) = sys.G.row(m).transpose() * (u / sys.gamma_tilde(m));
    for (Eigen::Index i = 0; i < d; ++i) {
      Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(d, d);
      coeff.col(i) += 0.5 * a;
      coeff.row(i) += 0.5 * a.transpose();
      sdp.add(coeff, conic::Sense::GreaterEqual, 0.0);
    }
  }

  Eigen::MatrixXd crlb = Eigen::MatrixXd::Zero(d, d);
  crlb.block(0, 1, 1, M) = 0.5 * u * coeffs.b.transpose();
  crlb.block(1, 0, M, 1) = 0.5 * u * coeffs.b;
  crlb.bottomRightCorner(M, M) = -spec.crlb_ceiling * u * u * 0.5 * (coeffs.A + coeffs.A.transpose());
  const double scale = crlb.norm();
  sdp.add(scale > 0.0 ? Eigen::MatrixXd(crlb / scale) : crlb, conic::Sense::LessEqual, 0.0);
  return sdp;
}

Eigen::MatrixXd randomization_factor(const Eigen::MatrixXd& P) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (P + P.transpose()));
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  // Columns in descending eigenvalue order, so w(0) weights the dominant direction.
  return (eig.eigenvectors() * root.asDiagonal()).rowwise().reverse();
}

Eigen::VectorXd gaussian_randomize(const Eigen::MatrixXd& P, const Eigen::VectorXd& w) {
  if (P.rows() != P.cols() || w.size() != P.rows()) throw std::invalid_argument("randomization dimensions disagree");
  return (randomization_factor(P) * w).cwiseAbs();
}

Eigen::VectorXd gaussian_randomize(const LiftedVariable& Y, RandomStream& rng) {
  Eigen::VectorXd w(Y.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = rng.normal();
  return gaussian_randomize(Y.P(), w);
}

std::optional<Eigen::VectorXd> scale_candidate(const Eigen::VectorXd& z, const SinrSystem<double>& sys,
                                               const SensingCoefficients<double>& coeffs,
                                               const ProblemSpec<double>& spec) {
  const Eigen::VectorXd gz = sys.G * z;
  if (!(gz.array() > 0.0).all() || (z.array() < 0.0).any()) return std::nullopt;
  const auto f = fim_terms(coeffs, z);
  if (f.singular()) return std::nullopt;
  double xi = (f.xx + f.yy) / (spec.crlb_ceiling * f.det);
  for (Eigen::Index m = 0; m < gz.size(); ++m) xi = std::max(xi, sys.gamma_tilde(m) / gz(m));
  return Eigen::VectorXd(xi * z);
}

SolveResult solve_sdr(const Instance& inst, const SolverConfig& cfg) {
  cfg.validate();
  const auto gate = check_feasibility(inst.sinr);
  if (gate.status != SolveStatus::Feasible)
    return failure(Method::Sdr, gate.status, "SINR floors cannot be met simultaneously");

  // Work in units of a known feasible total so the program data is O(1).
  double unit = gate.witness.sum();
  try {
    unit = feasible_scaling(gate.witness, inst.sensing, inst.spec).sum();
  } catch (const SingularFimError&) {
  }
  if (!(unit > 0.0)) unit = 1.0;

  const auto program = build_sdr_program(inst.sinr, inst.sensing, inst.spec, unit);
  const auto sol = conic::solve_sdp(program);
  if (!sol.optimal())
    return failure(Method::Sdr, SolveStatus::NumericalFailure,
                   std::string("relaxation solve ended ") + conic::to_string(sol.status) + ": " + sol.message);

  const auto M = inst.size();
  const Eigen::MatrixXd Q = sol.Y.bottomRightCorner(M, M);
  const Eigen::MatrixXd factor = randomization_factor(Q);
  const std::size_t count = cfg.randomization_count + 1;

  // Candidate 0 is the first column of Y; candidate r >= 1 uses its own stream.
  std::vector<std::optional<Eigen::VectorXd>> scaled(count);
  parallel_for(count, cfg.threads, [&](std::size_t r) {
    Eigen::VectorXd z;
    if (r == 0) {
      z = sol.Y.col(0).tail(M).cwiseMax(0.0);
    } else {
      RandomStream rng(cfg.rng_seed, StreamTag::Randomization, {static_cast<std::uint64_t>(r)});
      Eigen::VectorXd w(M);
      for (Eigen::Index i = 0; i < M; ++i) w(i) = rng.normal();
      z = (factor * w).cwiseAbs();
    }
    scaled[r] = scale_candidate(z, inst.sinr, inst.sensing, inst.spec);
  });

  std::size_t best = count, feasible = 0;
  for (std::size_t r = 0; r < count; ++r) {
    if (!scaled[r]) continue;
    ++feasible;
    if (best == count || scaled[r]->sum() < scaled[best]->sum()) best = r;
  }

  SolveResult out;
  if (best == count) {
    out = failure(Method::Sdr, SolveStatus::AllCandidatesInfeasible,
                  "none of " + std::to_string(count) + " candidates could be scaled to feasibility");
  } else {
    out = make_result(Method::Sdr, SolveStatus::Feasible, inst, *scaled[best]);
  }
  out.diagnostics.iterations = sol.iterations;
  out.diagnostics.candidates = count;
  out.diagnostics.feasible_candidates = feasible;
  out.diagnostics.sdr_objective_w2 = sol.primal_objective * unit * unit;
  out.diagnostics.lower_bound_w = std::sqrt(std::max(sol.dual_objective, 0.0)) * unit;
  return out;
}

SolveResult solve_crlb_approx(const Instance& inst, const SolverConfig& cfg) {
  cfg.validate();
  const auto gate = check_feasibility(inst.sinr);
  if (gate.status != SolveStatus::Feasible)
    return failure(Method::CrlbApprox, gate.status, "SINR floors cannot be met simultaneously");

  const auto M = inst.size();
  const double tau = inst.spec.crlb_ceiling;
  Eigen::MatrixXd R(2 * M, M);
  R << inst.sinr.G, tau * inst.sensing.A;
  Eigen::VectorXd beta(2 * M);
  beta << inst.sinr.gamma_tilde, inst.sensing.b;
  const auto lp = solve_power_lp(R, beta, Eigen::VectorXd::Ones(M));
  if (lp.status == conic::Status::Infeasible)
    return failure(Method::CrlbApprox, SolveStatus::RelaxationInfeasible,
                   "entrywise CRLB relaxation is infeasible although the SINR floors are not");
  if (lp.status != conic::Status::Optimal)
    return failure(Method::CrlbApprox, SolveStatus::NumericalFailure, "stage-one LP: " + lp.message);

  Eigen::VectorXd p = lp.x.cwiseMax(0.0);
  const double step = cfg.step_size_w.value_or(1e-3 * p.sum() / static_cast<double>(M));
  auto crlb_or_inf = [&](const Eigen::VectorXd& z) {
    const auto f = fim_terms(inst.sensing, z);
    return f.singular() ? std::numeric_limits<double>::infinity() : (f.xx + f.yy) / f.det;
  };

  std::size_t iterations = 0;
  double current = crlb_or_inf(p);
  while (iterations < cfg.max_refine_iterations && current <= tau * (1.0 - cfg.refine_epsilon)) {
    Eigen::Index pick = -1;
    double pick_crlb = std::numeric_limits<double>::infinity();
    Eigen::VectorXd pick_z;
    for (Eigen::Index m = 0; m < M; ++m) {
      if (!(p(m) > 0.0)) continue;
      Eigen::VectorXd z = p;
      z(m) = std::max(0.0, p(m) - step);
      if (((inst.sinr.G * z).array() < inst.sinr.gamma_tilde.array()).any()) continue;
      const double c = crlb_or_inf(z);
      if (!(c <= tau)) continue;
      if (c < pick_crlb) {
        pick = m;
        pick_crlb = c;
        pick_z = std::move(z);
      }
    }
    if (pick < 0) break;
    p = std::move(pick_z);
    current = pick_crlb;
    ++iterations;
  }

  auto out = make_result(Method::CrlbApprox, SolveStatus::Feasible, inst, p);
  out.diagnostics.iterations = static_cast<int>(iterations);
  out.diagnostics.step_size_w = step;
  if (iterations == cfg.max_refine_iterations) out.diagnostics.message = "refinement hit the iteration cap";
  return out;
}

SolveResult solve_separate(const Instance& inst, const SolverConfig& cfg) {
  cfg.validate();
  const auto gate = check_feasibility(inst.sinr);
  if (gate.status != SolveStatus::Feasible)
    return failure(Method::Separate, gate.status, "SINR floors cannot be met simultaneously");
  try {
    return make_result(Method::Separate, SolveStatus::Feasible, inst,
                       feasible_scaling(gate.witness, inst.sensing, inst.spec));
  } catch (const SingularFimError& e) {
    return failure(Method::Separate, SolveStatus::Unobservable, e.what());
  }
}

namespace {

struct GridBest {
  double total = std::numeric_limits<double>::infinity();
  std::uint64_t index = std::numeric_limits<std::uint64_t>::max();
  bool better_than(const GridBest& o) const { return total < o.total || (total == o.total && index < o.index); }
};

/// Smallest t with t p feasible, by bisection along the ray. SINRs rise and
/// the CRLB falls monotonically in t, so the feasible set of t is an interval
/// [t*, inf). The caller guarantees that some t is feasible.
Eigen::VectorXd polish_along_ray(const Instance& inst, const Eigen::VectorXd& p) {
  double lo = 0.0, hi = 1.0;
  while (!direct_feasible(inst, hi * p, 0.0)) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (direct_feasible(inst, mid * p, 0.0))
      hi = mid;
    else
      lo = mid;
  }
  return hi * p;
}

/// Smallest t with t p feasible, from the SINR definition and the explicit
/// Fisher inverse at p: SINR_m(t p) = t a / (t c + sigma^2) and
/// CRLB(t p) = CRLB(p) / t. Infinity when no scaling works.
double ray_scale(const Instance& inst, const Eigen::VectorXd& p) {
  const auto M = inst.size();
  double t = 0.0;
  for (Eigen::Index m = 0; m < M; ++m) {
    double interference = 0.0;
    for (Eigen::Index l = 0; l < M; ++l)
      if (l != m) interference += inst.gain_sq(m, l) * p(l);
    const double gamma = inst.spec.sinr_thresholds(m);
    const double margin = inst.gain_sq(m, m) * p(m) - gamma * interference;
    if (!(margin > 0.0)) return std::numeric_limits<double>::infinity();
    t = std::max(t, gamma * inst.noise_power(m) / margin);
  }
  const auto f = fim_terms(inst.sensing, p);
  if (f.singular()) return std::numeric_limits<double>::infinity();
  return std::max(t, (f.xx + f.yy) / f.det / inst.spec.crlb_ceiling);
}

/// Searches the tensor grid axes[0] x ... x axes[M-1], ranking each point by
/// the total power of its minimal feasible scaling, provided that scaled
/// point stays inside the box. Parallel over the first
/// axis, reduced by (total, flat index).
GridBest search_grid(const Instance& inst, const std::vector<Eigen::VectorXd>& axes, double cap, unsigned threads,
                     std::size_t& evaluated) {
  const auto M = static_cast<Eigen::Index>(axes.size());
  const auto n0 = static_cast<std::size_t>(axes[0].size());
  std::vector<GridBest> best(n0);
  std::uint64_t stride = 1;
  for (Eigen::Index k = 1; k < M; ++k) stride *= static_cast<std::uint64_t>(axes[static_cast<std::size_t>(k)].size());

  parallel_for(n0, threads, [&](std::size_t i0) {
    Eigen::VectorXd p(M);
    p(0) = axes[0](static_cast<Eigen::Index>(i0));
    for (std::uint64_t flat = 0; flat < stride; ++flat) {
      std::uint64_t rest = flat;
      for (Eigen::Index k = M - 1; k >= 1; --k) {
        const auto len = static_cast<std::uint64_t>(axes[static_cast<std::size_t>(k)].size());
        p(k) = axes[static_cast<std::size_t>(k)](static_cast<Eigen::Index>(rest % len));
        rest /= len;
      }
      const double t = ray_scale(inst, p);
      if (!(t * p.maxCoeff() <= cap)) continue;  // scaled point leaves the box
      const double total = t * p.sum();
      if (total < best[i0].total) best[i0] = {total, static_cast<std::uint64_t>(i0) * stride + flat};
    }
  });

  GridBest out;
  for (std::size_t i0 = 0; i0 < n0; ++i0)
    if (best[i0].better_than(out)) out = best[i0];
  evaluated += n0 * stride;
  return out;
}

Eigen::VectorXd grid_point(const std::vector<Eigen::VectorXd>& axes, std::uint64_t flat) {
  const auto M = static_cast<Eigen::Index>(axes.size());
  Eigen::VectorXd p(M);
  for (Eigen::Index k = M - 1; k >= 0; --k) {
    const auto len = static_cast<std::uint64_t>(axes[static_cast<std::size_t>(k)].size());
    p(k) = axes[static_cast<std::size_t>(k)](static_cast<Eigen::Index>(flat % len));
    flat /= len;
  }
  return p;
}

}  // namespace

SolveResult brute_force_oracle(const Instance& inst, const SolverConfig& cfg) {
  cfg.validate();
  const auto M = inst.size();
  if (M > 3) throw std::invalid_argument("brute_force_oracle supports at most 3 transmitters");

  double cap = 0.0;
  if (cfg.oracle_power_cap_w) {
    cap = *cfg.oracle_power_cap_w;
  } else {
    const auto sep = solve_separate(inst, cfg);
    if (!sep.ok())
      return failure(Method::Oracle, sep.status, "no default power cap: separate design ended " +
                                                     std::string(to_string(sep.status)));
    cap = 4.0 * sep.total_power;
  }

  const auto points = static_cast<Eigen::Index>(cfg.oracle_grid_points);
  double h = cap / static_cast<double>(points - 1);
  std::vector<Eigen::VectorXd> axes(static_cast<std::size_t>(M), Eigen::VectorXd::LinSpaced(points, 0.0, cap));
  std::size_t evaluated = 0;
  const auto coarse = search_grid(inst, axes, cap, cfg.threads, evaluated);
  if (coarse.index == std::numeric_limits<std::uint64_t>::max()) {
    auto out = failure(Method::Oracle, SolveStatus::NoFeasibleGridPoint,
                       "no grid point meets both constraints; raise oracle_power_cap_w");
    out.diagnostics.candidates = evaluated;
    return out;
  }

  Eigen::VectorXd incumbent = polish_along_ray(inst, grid_point(axes, coarse.index));
  constexpr Eigen::Index kHalfWidth = 20;  // zoom window of +-2 coarse steps
  for (int level = 0; level < cfg.oracle_refinements; ++level) {
    h /= 10.0;
    for (Eigen::Index k = 0; k < M; ++k) {
      Eigen::VectorXd axis(2 * kHalfWidth + 1);
      for (Eigen::Index j = 0; j < axis.size(); ++j)
        axis(j) = std::max(0.0, incumbent(k) + static_cast<double>(j - kHalfWidth) * h);
      axes[static_cast<std::size_t>(k)] = axis;
    }
    const auto found = search_grid(inst, axes, cap, cfg.threads, evaluated);
    if (found.index == std::numeric_limits<std::uint64_t>::max()) continue;
    const Eigen::VectorXd candidate = polish_along_ray(inst, grid_point(axes, found.index));
    if (candidate.sum() < incumbent.sum()) incumbent = candidate;
  }

  auto out = make_result(Method::Oracle, SolveStatus::Feasible, inst, incumbent);
  out.diagnostics.iterations = cfg.oracle_refinements;
  out.diagnostics.candidates = evaluated;
  return out;
}

SolveResult solve(Method method, const Instance& inst, const SolverConfig& cfg) {
  switch (method) {
    case Method::Sdr: return solve_sdr(inst, cfg);
    case Method::CrlbApprox: return solve_crlb_approx(inst, cfg);
    case Method::Separate: return solve_separate(inst, cfg);
    case Method::Oracle: return brute_force_oracle(inst, cfg);
  }
  throw std::invalid_argument("unknown method");
}

}  // namespace isac
