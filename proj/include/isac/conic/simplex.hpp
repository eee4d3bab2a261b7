#pragma once

// Dense two-phase primal simplex with Bland's rule. Meant for the handful of
// variables and rows that appear in power control, where exact vertex
// solutions and guaranteed termination matter more than speed.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/LU>

namespace isac::conic {

namespace simplex_detail {

template <typename Scalar>
void pivot(MatrixX<Scalar>& T, std::vector<Eigen::Index>& basis, Eigen::Index r, Eigen::Index c) {
  T.row(r) /= T(r, c);
  for (Eigen::Index i = 0; i < T.rows(); ++i) {
    if (i == r) continue;
    const Scalar f = T(i, c);
    if (f != Scalar(0)) T.row(i) -= f * T.row(r);
  }
  basis[static_cast<std::size_t>(r)] = c;
}

enum class Outcome { Optimal, Unbounded, IterationLimit };

/// Minimizes cost^T z over the tableau T = [B^-1 E | B^-1 h]. Columns with
/// allowed[j] == false never enter.
template <typename Scalar>
Outcome run(MatrixX<Scalar>& T, std::vector<Eigen::Index>& basis, const VectorX<Scalar>& cost,
            const std::vector<bool>& allowed, int max_iterations, int& iterations, Eigen::Index& entering_out) {
  const Eigen::Index m = T.rows();
  const Eigen::Index ncols = T.cols() - 1;
  const Scalar cost_scale = std::max(Scalar(1), cost.cwiseAbs().maxCoeff());
  const Scalar rc_tol = Scalar(1e-11) * cost_scale;
  const Scalar piv_tol = Scalar(1e-11);

  std::vector<bool> is_basic(static_cast<std::size_t>(ncols), false);
  while (iterations < max_iterations) {
    std::fill(is_basic.begin(), is_basic.end(), false);
    VectorX<Scalar> cb(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      cb(i) = cost(basis[static_cast<std::size_t>(i)]);
      is_basic[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] = true;
    }
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < ncols; ++j) {
      if (!allowed[static_cast<std::size_t>(j)] || is_basic[static_cast<std::size_t>(j)]) continue;
      const Scalar reduced = cost(j) - cb.dot(T.col(j).head(m));
      if (reduced < -rc_tol) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return Outcome::Optimal;

    Eigen::Index leaving = -1;
    Scalar best = Scalar(0);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Scalar a = T(i, entering);
      if (a <= piv_tol) continue;
      const Scalar ratio = T(i, ncols) / a;
      if (leaving < 0) {
        best = ratio;
        leaving = i;
        continue;
      }
      const Scalar slack = Scalar(1e-14) * std::max(Scalar(1), std::abs(best));
      const bool tie = std::abs(ratio - best) <= slack;
      if ((!tie && ratio < best) ||
          (tie && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
        best = std::min(best, ratio);
        leaving = i;
      }
    }
    if (leaving < 0) {
      entering_out = entering;
      return Outcome::Unbounded;
    }
    pivot(T, basis, leaving, entering);
    ++iterations;
  }
  return Outcome::IterationLimit;
}

}  // namespace simplex_detail

template <typename Scalar>
Scalar lp_max_violation(const LinearProgram<Scalar>& lp, const VectorX<Scalar>& x) {
  using std::abs;
  Scalar worst = Scalar(0);
  for (Eigen::Index i = 0; i < lp.num_rows(); ++i) {
    const Scalar scale = std::max({lp.rows.row(i).cwiseAbs().maxCoeff(), abs(lp.bounds(i)), Scalar(1e-300)});
    worst = std::max(worst, (lp.bounds(i) - lp.rows.row(i).dot(x)) / scale);
  }
  for (Eigen::Index j = 0; j < lp.num_variables(); ++j)
    if (std::isfinite(lp.lower(j)))
      worst = std::max(worst, (lp.lower(j) - x(j)) / std::max(Scalar(1), abs(lp.lower(j))));
  return worst;
}

template <typename Scalar>
LpSolution<Scalar> solve_lp(const LinearProgram<Scalar>& lp) {
  using std::abs;
  lp.validate();
  LpSolution<Scalar> out;
  const Eigen::Index n = lp.num_variables();
  const Eigen::Index m_all = lp.num_rows();

  // Shift finite lower bounds to zero and split free variables: x = l + y or
  // x = y+ - y-.
  std::vector<Eigen::Index> pos_col(static_cast<std::size_t>(n)), neg_col(static_cast<std::size_t>(n), -1);
  Eigen::Index ny = 0;
  VectorX<Scalar> shift = VectorX<Scalar>::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    pos_col[static_cast<std::size_t>(j)] = ny++;
    if (std::isfinite(lp.lower(j)))
      shift(j) = lp.lower(j);
    else
      neg_col[static_cast<std::size_t>(j)] = ny++;
  }
  auto expand = [&](const VectorX<Scalar>& v) {
    VectorX<Scalar> e(ny);
    for (Eigen::Index j = 0; j < n; ++j) {
      e(pos_col[static_cast<std::size_t>(j)]) = v(j);
      if (neg_col[static_cast<std::size_t>(j)] >= 0) e(neg_col[static_cast<std::size_t>(j)]) = -v(j);
    }
    return e;
  };

  const Scalar cscale = lp.objective.size() ? std::max(lp.objective.cwiseAbs().maxCoeff(), Scalar(0)) : Scalar(0);
  const Scalar cnorm = cscale > Scalar(0) ? cscale : Scalar(1);
  const VectorX<Scalar> cost_y = expand(lp.objective) / cnorm;

  // Row normalization and presolve of empty rows.
  std::vector<Eigen::Index> kept;
  std::vector<Scalar> rscale, sign;
  for (Eigen::Index i = 0; i < m_all; ++i) {
    const Scalar rhs = lp.bounds(i) - lp.rows.row(i).dot(shift);
    const Scalar rmax = lp.rows.row(i).cwiseAbs().maxCoeff();
    const Scalar s = std::max(rmax, abs(rhs));
    if (rmax == Scalar(0) || rmax <= Scalar(1e-14) * s) {
      if (rhs > Scalar(kLpFeasibilityTol) * std::max(Scalar(1), abs(lp.bounds(i)))) {
        out.status = Status::Infeasible;
        out.infeasibility = rhs;
        out.message = "row " + std::to_string(i) + " has no coefficients but a positive bound";
        return out;
      }
      continue;
    }
    kept.push_back(i);
    rscale.push_back(s);
    sign.push_back(rhs > Scalar(0) ? Scalar(1) : Scalar(-1));
  }
  const auto m = static_cast<Eigen::Index>(kept.size());

  // Columns: y (ny) | slacks (m) | artificials (as needed).
  Eigen::Index nart = 0;
  for (auto s : sign) nart += s > Scalar(0) ? 1 : 0;
  const Eigen::Index ncols = ny + m + nart;
  MatrixX<Scalar> T = MatrixX<Scalar>::Zero(m, ncols + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  Eigen::Index next_art = ny + m;
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto i = kept[static_cast<std::size_t>(k)];
    const Scalar s = rscale[static_cast<std::size_t>(k)];
    const Scalar sg = sign[static_cast<std::size_t>(k)];
    const VectorX<Scalar> row = expand(lp.rows.row(i).transpose()) / s;
    T.row(k).head(ny) = sg * row.transpose();
    T(k, ny + k) = -sg;
    T(k, ncols) = sg * (lp.bounds(i) - lp.rows.row(i).dot(shift)) / s;
    if (sg > Scalar(0)) {
      T(k, next_art) = Scalar(1);
      basis[static_cast<std::size_t>(k)] = next_art++;
    } else {
      basis[static_cast<std::size_t>(k)] = ny + k;
    }
  }
  const MatrixX<Scalar> E0 = T;  // unpivoted equality system
  std::vector<Eigen::Index> row_of(static_cast<std::size_t>(m));
  for (Eigen::Index k = 0; k < m; ++k) row_of[static_cast<std::size_t>(k)] = k;

  const int max_iterations = 1000 + 100 * static_cast<int>(ncols + m);
  std::vector<bool> allowed(static_cast<std::size_t>(ncols), true);
  Eigen::Index entering = -1;

  if (nart > 0) {
    VectorX<Scalar> phase1 = VectorX<Scalar>::Zero(ncols);
    phase1.tail(nart).setOnes();
    auto res = simplex_detail::run(T, basis, phase1, allowed, max_iterations, out.iterations, entering);
    if (res == simplex_detail::Outcome::IterationLimit) {
      out.message = "phase one hit the iteration limit";
      return out;
    }
    Scalar infeas = Scalar(0);
    for (Eigen::Index k = 0; k < T.rows(); ++k)
      if (basis[static_cast<std::size_t>(k)] >= ny + m) infeas += T(k, ncols);
    if (infeas > Scalar(1e-9)) {
      out.status = Status::Infeasible;
      out.infeasibility = infeas;
      out.message = "phase one optimum is positive";
      return out;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (Eigen::Index k = 0; k < T.rows();) {
      if (basis[static_cast<std::size_t>(k)] < ny + m) {
        ++k;
        continue;
      }
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < ny + m; ++j)
        if (abs(T(k, j)) > Scalar(1e-9)) {
          col = j;
          break;
        }
      if (col >= 0) {
        simplex_detail::pivot(T, basis, k, col);
        ++k;
      } else {
        const Eigen::Index last = T.rows() - 1;
        T.row(k).swap(T.row(last));
        std::swap(basis[static_cast<std::size_t>(k)], basis[static_cast<std::size_t>(last)]);
        std::swap(row_of[static_cast<std::size_t>(k)], row_of[static_cast<std::size_t>(last)]);
        T.conservativeResize(last, Eigen::NoChange);
        basis.pop_back();
        row_of.pop_back();
      }
    }
    for (Eigen::Index j = ny + m; j < ncols; ++j) allowed[static_cast<std::size_t>(j)] = false;
  }

  VectorX<Scalar> phase2 = VectorX<Scalar>::Zero(ncols);
  phase2.head(ny) = cost_y;
  auto res = simplex_detail::run(T, basis, phase2, allowed, max_iterations, out.iterations, entering);
  if (res == simplex_detail::Outcome::IterationLimit) {
    out.message = "phase two hit the iteration limit";
    return out;
  }

  auto to_x = [&](const VectorX<Scalar>& z, bool with_shift) {
    VectorX<Scalar> x = with_shift ? shift : VectorX<Scalar>::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      x(j) += z(pos_col[static_cast<std::size_t>(j)]);
      if (neg_col[static_cast<std::size_t>(j)] >= 0) x(j) -= z(neg_col[static_cast<std::size_t>(j)]);
    }
    return x;
  };

  if (res == simplex_detail::Outcome::Unbounded) {
    VectorX<Scalar> dir = VectorX<Scalar>::Zero(ncols);
    dir(entering) = Scalar(1);
    for (Eigen::Index k = 0; k < T.rows(); ++k) dir(basis[static_cast<std::size_t>(k)]) -= T(k, entering);
    out.status = Status::Unbounded;
    out.x = to_x(dir.head(ny), false);
    out.message = "objective decreases without bound along the returned ray";
    return out;
  }

  VectorX<Scalar> z = VectorX<Scalar>::Zero(ncols);
  for (Eigen::Index k = 0; k < T.rows(); ++k) z(basis[static_cast<std::size_t>(k)]) = T(k, ncols);
  out.x = to_x(z.head(ny), true);
  out.objective = lp.objective.dot(out.x);

  // Duals from B^T pi = c_B on the unpivoted rows that survived.
  const Eigen::Index mb = T.rows();
  out.row_duals = VectorX<Scalar>::Zero(m_all);
  if (mb > 0) {
    MatrixX<Scalar> B(mb, mb);
    VectorX<Scalar> cb(mb);
    for (Eigen::Index k = 0; k < mb; ++k) {
      for (Eigen::Index r = 0; r < mb; ++r)
        B(r, k) = E0(row_of[static_cast<std::size_t>(r)], basis[static_cast<std::size_t>(k)]);
      cb(k) = phase2(basis[static_cast<std::size_t>(k)]);
    }
    const VectorX<Scalar> pi = B.transpose().fullPivLu().solve(cb);
    for (Eigen::Index r = 0; r < mb; ++r) {
      const auto k = row_of[static_cast<std::size_t>(r)];
      const auto i = kept[static_cast<std::size_t>(k)];
      out.row_duals(i) = std::max(Scalar(0), sign[static_cast<std::size_t>(k)] * pi(r)) * cnorm /
                         rscale[static_cast<std::size_t>(k)];
    }
  }
  const VectorX<Scalar> reduced = lp.objective - lp.rows.transpose() * out.row_duals;
  Scalar dual_obj = out.row_duals.dot(lp.bounds);
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::isfinite(lp.lower(j))) dual_obj += reduced(j) * lp.lower(j);
  out.dual_objective = dual_obj;
  out.relative_gap = abs(out.objective - dual_obj) / (Scalar(1) + abs(out.objective));
  out.max_violation = lp_max_violation(lp, out.x);

  if (out.max_violation <= Scalar(kLpFeasibilityTol) && out.relative_gap <= Scalar(kLpGapTol)) {
    out.status = Status::Optimal;
  } else {
    out.status = Status::NumericalFailure;
    out.message = "vertex found but residual checks failed";
  }
  return out;
}

}  // namespace isac::conic
