#pragma once

// Small dense conic programs: linear programs over the nonnegative orthant
// and semidefinite programs over one dense PSD block.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace isac::conic {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

/// Contract tolerances. A solver that cannot certify these reports
/// NumericalFailure rather than Optimal.
inline constexpr double kLpFeasibilityTol = 1e-8;
inline constexpr double kLpGapTol = 1e-6;
inline constexpr double kSdpFeasibilityTol = 1e-7;
inline constexpr double kSdpEigenTol = 1e-7;
inline constexpr double kSdpGapTol = 1e-6;

/// Largest matrix dimension solve_sdp accepts.
inline constexpr Eigen::Index kMaxSdpDimension = 32;

/// minimize objective^T x  s.t.  rows * x >= bounds,  x >= lower.
/// A lower bound of -infinity makes the variable free.
template <typename Scalar = double>
struct LinearProgram {
  VectorX<Scalar> objective;
  MatrixX<Scalar> rows;
  VectorX<Scalar> bounds;
  VectorX<Scalar> lower;

  LinearProgram() = default;

  /// n variables constrained to x >= 0, no rows yet.
  explicit LinearProgram(VectorX<Scalar> c)
      : objective(std::move(c)),
        rows(0, objective.size()),
        bounds(0),
        lower(VectorX<Scalar>::Zero(objective.size())) {}

  Eigen::Index num_variables() const { return objective.size(); }
  Eigen::Index num_rows() const { return rows.rows(); }

  LinearProgram& add_row(const VectorX<Scalar>& row, Scalar bound) {
    if (row.size() != num_variables()) throw std::invalid_argument("LP row has the wrong length");
    rows.conservativeResize(rows.rows() + 1, num_variables());
    rows.row(rows.rows() - 1) = row.transpose();
    bounds.conservativeResize(bounds.size() + 1);
    bounds(bounds.size() - 1) = bound;
    return *this;
  }

  void validate() const {
    const auto n = num_variables();
    if (n == 0) throw std::invalid_argument("LP needs at least one variable");
    if (rows.cols() != n || lower.size() != n || bounds.size() != rows.rows())
      throw std::invalid_argument("LP dimensions are inconsistent");
    if (!objective.allFinite() || !rows.allFinite() || !bounds.allFinite())
      throw std::invalid_argument("LP data must be finite");
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::isnan(lower(j)) || lower(j) == std::numeric_limits<Scalar>::infinity())
        throw std::invalid_argument("LP lower bounds must be finite or -infinity");
  }
};

template <typename Scalar = double>
struct LpSolution {
  Status status = Status::NumericalFailure;
  /// Optimal point; an improving ray when Unbounded.
  VectorX<Scalar> x;
  /// Multipliers u >= 0 of the rows when Optimal.
  VectorX<Scalar> row_duals;
  Scalar objective = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar dual_objective = std::numeric_limits<Scalar>::quiet_NaN();
  /// Largest row / bound violation after row normalization.
  Scalar max_violation = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar relative_gap = std::numeric_limits<Scalar>::quiet_NaN();
  /// Optimal phase-one value (normalized) when Infeasible.
  Scalar infeasibility = Scalar(0);
  int iterations = 0;
  std::string message;

  bool optimal() const { return status == Status::Optimal; }
};

/// Largest normalized violation of the LP's rows and bounds at x.
template <typename Scalar>
Scalar lp_max_violation(const LinearProgram<Scalar>& lp, const VectorX<Scalar>& x);

template <typename Scalar>
LpSolution<Scalar> solve_lp(const LinearProgram<Scalar>& lp);

enum class Sense { Equal, GreaterEqual, LessEqual };

/// <coeff, Y> (sense) rhs, coeff symmetric.
template <typename Scalar = double>
struct MatrixConstraint {
  MatrixX<Scalar> coeff;
  Sense sense = Sense::Equal;
  Scalar rhs = Scalar(0);
};

/// minimize <C, Y>  s.t. linear matrix constraints, Y(i, j) >= 0 for the
/// listed entries, Y PSD.
template <typename Scalar = double>
struct SemidefiniteProgram {
  Eigen::Index dim = 0;
  MatrixX<Scalar> objective;
  std::vector<MatrixConstraint<Scalar>> constraints;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> nonnegative_entries;

  SemidefiniteProgram() = default;
  explicit SemidefiniteProgram(Eigen::Index d) : dim(d), objective(MatrixX<Scalar>::Zero(d, d)) {}

  SemidefiniteProgram& add(MatrixX<Scalar> coeff, Sense sense, Scalar rhs) {
    constraints.push_back({std::move(coeff), sense, rhs});
    return *this;
  }

  std::size_t num_constraints() const { return constraints.size() + nonnegative_entries.size(); }

  void validate() const;
};

template <typename Scalar = double>
struct SdpSolution {
  Status status = Status::NumericalFailure;
  MatrixX<Scalar> Y;
  /// Multipliers of `constraints` followed by those of the entry constraints.
  VectorX<Scalar> duals;
  Scalar primal_objective = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar dual_objective = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar min_eigenvalue = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar max_violation = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar relative_gap = std::numeric_limits<Scalar>::quiet_NaN();
  int iterations = 0;
  std::string message;

  bool optimal() const { return status == Status::Optimal; }
};

/// Largest violation of the program's linear and entry constraints at Y, each
/// row scaled by the Frobenius norm of its coefficient matrix.
template <typename Scalar>
Scalar sdp_max_violation(const SemidefiniteProgram<Scalar>& sdp, const MatrixX<Scalar>& Y);

template <typename Scalar>
SdpSolution<Scalar> solve_sdp(const SemidefiniteProgram<Scalar>& sdp);

}  // namespace isac::conic

#include "isac/conic/simplex.hpp"
#include "isac/conic/sdp_ipm.hpp"
