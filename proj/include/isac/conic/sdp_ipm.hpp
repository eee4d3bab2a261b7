#pragma once

// Infeasible-start primal-dual interior point method for one dense PSD block
// plus a nonnegative slack block. HKM search direction with a Mehrotra
// predictor-corrector step.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace isac::conic {

template <typename Scalar>
void SemidefiniteProgram<Scalar>::validate() const {
  using std::abs;
  if (dim < 1 || dim > kMaxSdpDimension)
    throw std::invalid_argument("SDP dimension must lie in [1, " + std::to_string(kMaxSdpDimension) + "]");
  auto check = [&](const MatrixX<Scalar>& m, const std::string& what) {
    if (m.rows() != dim || m.cols() != dim) throw std::invalid_argument(what + " has the wrong shape");
    if (!m.allFinite()) throw std::invalid_argument(what + " must be finite");
    const Scalar asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > Scalar(1e-12) * std::max(Scalar(1), m.cwiseAbs().maxCoeff()))
      throw std::invalid_argument(what + " must be symmetric");
  };
  check(objective, "SDP objective");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    check(constraints[i].coeff, "SDP constraint " + std::to_string(i));
    if (!std::isfinite(constraints[i].rhs)) throw std::invalid_argument("SDP right-hand side must be finite");
  }
  for (const auto& [r, c] : nonnegative_entries)
    if (r < 0 || c < 0 || r >= dim || c >= dim) throw std::invalid_argument("SDP entry index out of range");
}

template <typename Scalar>
Scalar sdp_max_violation(const SemidefiniteProgram<Scalar>& sdp, const MatrixX<Scalar>& Y) {
  Scalar worst = Scalar(0);
  for (const auto& con : sdp.constraints) {
    const Scalar lhs = (con.coeff.cwiseProduct(Y)).sum();
    Scalar v = Scalar(0);
    switch (con.sense) {
      case Sense::Equal: v = std::abs(lhs - con.rhs); break;
      case Sense::GreaterEqual: v = con.rhs - lhs; break;
      case Sense::LessEqual: v = lhs - con.rhs; break;
    }
    worst = std::max(worst, v / std::max(con.coeff.norm(), Scalar(1e-300)));
  }
  for (const auto& [r, c] : sdp.nonnegative_entries) worst = std::max(worst, -Y(r, c));
  return worst;
}

namespace sdp_detail {

template <typename Scalar>
MatrixX<Scalar> sym(const MatrixX<Scalar>& m) {
  return Scalar(0.5) * (m + m.transpose());
}

/// Largest alpha in (0, 1] keeping X + alpha dX PSD, from the Cholesky factor
/// of X. Returns 0 when X itself is not positive definite.
template <typename Scalar>
Scalar psd_step(const MatrixX<Scalar>& X, const MatrixX<Scalar>& dX) {
  Eigen::LLT<MatrixX<Scalar>> llt(X);
  if (llt.info() != Eigen::Success) return Scalar(0);
  const MatrixX<Scalar> Linv = llt.matrixL().solve(MatrixX<Scalar>::Identity(X.rows(), X.cols()));
  const MatrixX<Scalar> S = sym<Scalar>(Linv * dX * Linv.transpose());
  const Scalar lmin = Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>>(S, Eigen::EigenvaluesOnly).eigenvalues()(0);
  return lmin < Scalar(0) ? std::min(Scalar(1), Scalar(-1) / lmin) : Scalar(1);
}

template <typename Scalar>
Scalar lp_step(const VectorX<Scalar>& x, const VectorX<Scalar>& dx) {
  Scalar a = Scalar(1);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (dx(i) < Scalar(0)) a = std::min(a, -x(i) / dx(i));
  return a;
}

}  // namespace sdp_detail

template <typename Scalar>
SdpSolution<Scalar> solve_sdp(const SemidefiniteProgram<Scalar>& sdp) {
  using std::abs;
  using std::sqrt;
  sdp.validate();
  const Eigen::Index n = sdp.dim;

  // Standard form: <A_i, X> + L_i . s = b_i, X PSD, s >= 0.
  std::vector<MatrixX<Scalar>> A;
  std::vector<Scalar> b;
  std::vector<Eigen::Index> slack_of;  // -1 for equalities
  std::vector<Scalar> slack_sign;
  Eigen::Index k = 0;
  for (const auto& con : sdp.constraints) {
    A.push_back(sdp_detail::sym<Scalar>(con.coeff));
    b.push_back(con.rhs);
    if (con.sense == Sense::Equal) {
      slack_of.push_back(-1);
      slack_sign.push_back(Scalar(0));
    } else {
      slack_of.push_back(k++);
      slack_sign.push_back(con.sense == Sense::GreaterEqual ? Scalar(-1) : Scalar(1));
    }
  }
  // Entry constraints, with (i, j) and (j, i) merged onto one row.
  std::map<std::pair<Eigen::Index, Eigen::Index>, std::size_t> entry_index;
  std::vector<std::size_t> entry_row(sdp.nonnegative_entries.size());
  for (std::size_t e = 0; e < sdp.nonnegative_entries.size(); ++e) {
    auto [r, c] = sdp.nonnegative_entries[e];
    if (r > c) std::swap(r, c);
    auto [pos, inserted] = entry_index.emplace(std::make_pair(r, c), A.size());
    entry_row[e] = pos->second;
    if (!inserted) continue;
    MatrixX<Scalar> E = MatrixX<Scalar>::Zero(n, n);
    E(r, c) += Scalar(0.5);
    E(c, r) += Scalar(0.5);
    A.push_back(E);
    b.push_back(Scalar(0));
    slack_of.push_back(k++);
    slack_sign.push_back(Scalar(-1));
  }

  const auto m = static_cast<Eigen::Index>(A.size());
  SdpSolution<Scalar> out;

  // Row and objective scaling; X itself is never rescaled.
  VectorX<Scalar> rscale(m), bs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const Scalar nrm = sqrt(A[iu].squaredNorm() + (slack_of[iu] >= 0 ? Scalar(1) : Scalar(0)));
    rscale(i) = nrm > Scalar(0) ? nrm : Scalar(1);
    A[iu] /= rscale(i);
    bs(i) = b[iu] / rscale(i);
    if (slack_of[iu] >= 0) slack_sign[iu] /= rscale(i);
  }
  const Scalar cnorm = std::max(sdp.objective.norm(), Scalar(0));
  const Scalar cscale = cnorm > Scalar(0) ? cnorm : Scalar(1);
  const MatrixX<Scalar> C = sdp_detail::sym<Scalar>(sdp.objective) / cscale;

  auto apply_A = [&](const MatrixX<Scalar>& X, const VectorX<Scalar>& x) {
    VectorX<Scalar> r(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      r(i) = A[iu].cwiseProduct(X).sum();
      if (slack_of[iu] >= 0) r(i) += slack_sign[iu] * x(slack_of[iu]);
    }
    return r;
  };
  auto adjoint_mat = [&](const VectorX<Scalar>& y) {
    MatrixX<Scalar> S = MatrixX<Scalar>::Zero(n, n);
    for (Eigen::Index i = 0; i < m; ++i) S += y(i) * A[static_cast<std::size_t>(i)];
    return S;
  };
  auto adjoint_vec = [&](const VectorX<Scalar>& y) {
    VectorX<Scalar> s = VectorX<Scalar>::Zero(k);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      if (slack_of[iu] >= 0) s(slack_of[iu]) += slack_sign[iu] * y(i);
    }
    return s;
  };

  // Initial point in the spirit of SDPT3.
  Scalar xi0 = std::max(Scalar(10), sqrt(Scalar(n)));
  for (Eigen::Index i = 0; i < m; ++i) xi0 = std::max(xi0, Scalar(n) * (Scalar(1) + abs(bs(i))) / Scalar(2));
  const Scalar eta0 = std::max({Scalar(10), sqrt(Scalar(n)), C.norm()});
  MatrixX<Scalar> X = xi0 * MatrixX<Scalar>::Identity(n, n);
  MatrixX<Scalar> Z = eta0 * MatrixX<Scalar>::Identity(n, n);
  VectorX<Scalar> x = VectorX<Scalar>::Constant(k, xi0);
  VectorX<Scalar> z = VectorX<Scalar>::Constant(k, eta0);
  VectorX<Scalar> y = VectorX<Scalar>::Zero(m);

  const Scalar bnorm = bs.norm();
  const int max_iterations = 150;
  const Scalar tol = Scalar(1e-10);
  const Scalar nu = Scalar(n + k);
  bool certificate = false;

  for (int it = 0; it < max_iterations; ++it) {
    out.iterations = it;
    const VectorX<Scalar> rp = bs - apply_A(X, x);
    const MatrixX<Scalar> Rd = C - adjoint_mat(y) - Z;
    const VectorX<Scalar> rd = -adjoint_vec(y) - z;
    const Scalar mu = ((X.cwiseProduct(Z)).sum() + x.dot(z)) / nu;
    const Scalar pobj = C.cwiseProduct(X).sum();
    const Scalar dobj = bs.dot(y);
    const Scalar pinf = rp.norm() / (Scalar(1) + bnorm);
    const Scalar dinf = sqrt(Rd.squaredNorm() + rd.squaredNorm()) / (Scalar(1) + C.norm());
    const Scalar gap = abs(pobj - dobj) / (Scalar(1) + abs(pobj) + abs(dobj));
    if (pinf < tol && dinf < tol && gap < tol) break;

    // Divergence checks: a normalized Farkas ray means no solution exists.
    if (dobj > Scalar(0)) {
      const Scalar ray = sqrt((adjoint_mat(y) + Z).squaredNorm() + (adjoint_vec(y) + z).squaredNorm());
      if (dobj > Scalar(1e8) && ray / dobj < Scalar(1e-8)) {
        out.status = Status::Infeasible;
        out.message = "dual ray certifies primal infeasibility";
        certificate = true;
        break;
      }
    }
    if (pobj < Scalar(0)) {
      const Scalar ray = apply_A(X, x).norm();
      if (-pobj > Scalar(1e8) && ray / -pobj < Scalar(1e-8)) {
        out.status = Status::Unbounded;
        out.message = "primal ray certifies unboundedness";
        certificate = true;
        break;
      }
    }

    Eigen::LLT<MatrixX<Scalar>> zllt(Z);
    if (zllt.info() != Eigen::Success) {
      out.message = "dual iterate lost positive definiteness";
      break;
    }
    const MatrixX<Scalar> Zinv = sdp_detail::sym<Scalar>(zllt.solve(MatrixX<Scalar>::Identity(n, n)));
    const VectorX<Scalar> xz = x.cwiseQuotient(z);

    // Schur complement: M_ij = <A_i, X A_j Z^-1> + sum_l L_il L_jl x_l / z_l.
    MatrixX<Scalar> Msch(m, m);
    std::vector<MatrixX<Scalar>> W(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) W[static_cast<std::size_t>(j)] = X * A[static_cast<std::size_t>(j)] * Zinv;
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) {
        const auto iu = static_cast<std::size_t>(i), ju = static_cast<std::size_t>(j);
        Scalar v = A[iu].cwiseProduct(W[ju].transpose()).sum();
        if (slack_of[iu] >= 0 && slack_of[iu] == slack_of[ju])
          v += slack_sign[iu] * slack_sign[ju] * xz(slack_of[iu]);
        Msch(i, j) = v;
      }
    Msch = sdp_detail::sym<Scalar>(Msch);
    Eigen::LDLT<MatrixX<Scalar>> schur(Msch);
    Eigen::FullPivLU<MatrixX<Scalar>> schur_lu;
    const bool use_ldlt = schur.info() == Eigen::Success && schur.isPositive();
    if (!use_ldlt) schur_lu.compute(Msch);

    // Solves for (dX, dx, dy, dZ, dz) given the complementarity targets
    // Rc (matrix) and rc (vector): dX = sym(Rc - X dZ Z^-1), dx = rc - x dz / z.
    auto direction = [&](const MatrixX<Scalar>& Rc, const VectorX<Scalar>& rc, MatrixX<Scalar>& dX,
                         VectorX<Scalar>& dx, VectorX<Scalar>& dy, MatrixX<Scalar>& dZ, VectorX<Scalar>& dz) {
      const MatrixX<Scalar> T = Rc - X * Rd * Zinv;
      const VectorX<Scalar> t = rc - xz.cwiseProduct(rd);
      const VectorX<Scalar> rhs = rp - apply_A(sdp_detail::sym<Scalar>(T), t);
      dy = use_ldlt ? VectorX<Scalar>(schur.solve(rhs)) : VectorX<Scalar>(schur_lu.solve(rhs));
      dZ = Rd - adjoint_mat(dy);
      dz = rd - adjoint_vec(dy);
      dX = sdp_detail::sym<Scalar>(Rc - X * dZ * Zinv);
      dx = rc - xz.cwiseProduct(dz);
    };

    MatrixX<Scalar> dX, dZ;
    VectorX<Scalar> dx, dy, dz;
    direction(-X, -x, dX, dx, dy, dZ, dz);
    Scalar ap = std::min(sdp_detail::psd_step(X, dX), sdp_detail::lp_step(x, dx));
    Scalar ad = std::min(sdp_detail::psd_step(Z, dZ), sdp_detail::lp_step(z, dz));
    const Scalar mu_aff =
        (((X + ap * dX).cwiseProduct(Z + ad * dZ)).sum() + (x + ap * dx).dot(z + ad * dz)) / nu;
    const Scalar ratio = std::max(Scalar(0), mu_aff / mu);
    const Scalar sigma = std::min(Scalar(1), ratio * ratio * ratio);

    const MatrixX<Scalar> Rc = sigma * mu * Zinv - X - dX * dZ * Zinv;
    const VectorX<Scalar> rc = (sigma * mu) * z.cwiseInverse() - x - dx.cwiseProduct(dz).cwiseQuotient(z);
    direction(Rc, rc, dX, dx, dy, dZ, dz);

    const Scalar gamma = Scalar(0.95);
    ap = std::min(Scalar(1), gamma * std::min(sdp_detail::psd_step(X, dX), sdp_detail::lp_step(x, dx)));
    ad = std::min(Scalar(1), gamma * std::min(sdp_detail::psd_step(Z, dZ), sdp_detail::lp_step(z, dz)));
    if (ap <= Scalar(0) || ad <= Scalar(0)) {
      out.message = "step length collapsed";
      break;
    }
    X = sdp_detail::sym<Scalar>(X + ap * dX);
    x += ap * dx;
    y += ad * dy;
    Z = sdp_detail::sym<Scalar>(Z + ad * dZ);
    z += ad * dz;
    out.iterations = it + 1;
  }

  if (certificate) return out;

  // Unscale and certify against the original data.
  VectorX<Scalar> y_orig(m);
  for (Eigen::Index i = 0; i < m; ++i) y_orig(i) = y(i) * cscale / rscale(i);
  out.Y = X;
  out.duals = VectorX<Scalar>::Zero(static_cast<Eigen::Index>(sdp.num_constraints()));
  for (std::size_t i = 0; i < sdp.constraints.size(); ++i)
    out.duals(static_cast<Eigen::Index>(i)) = y_orig(static_cast<Eigen::Index>(i));
  for (std::size_t e = 0; e < entry_row.size(); ++e)
    out.duals(static_cast<Eigen::Index>(sdp.constraints.size() + e)) = y_orig(static_cast<Eigen::Index>(entry_row[e]));
  out.primal_objective = sdp.objective.cwiseProduct(X).sum();
  Scalar dobj = Scalar(0);
  for (Eigen::Index i = 0; i < m; ++i) dobj += y_orig(i) * b[static_cast<std::size_t>(i)];
  out.dual_objective = dobj;
  out.min_eigenvalue =
      Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>>(X, Eigen::EigenvaluesOnly).eigenvalues()(0);
  out.max_violation = sdp_max_violation(sdp, X);
  out.relative_gap = abs(out.primal_objective - dobj) / (Scalar(1) + abs(out.primal_objective));

  const bool psd_ok = out.min_eigenvalue >= -Scalar(kSdpEigenTol) * (Scalar(1) + X.norm());
  const bool feas_ok = out.max_violation <= Scalar(kSdpFeasibilityTol);
  const bool gap_ok = out.relative_gap <= Scalar(kSdpGapTol);
  if (psd_ok && feas_ok && gap_ok) {
    out.status = Status::Optimal;
    out.message.clear();
  } else {
    out.status = Status::NumericalFailure;
    if (out.message.empty()) out.message = "iterate failed the residual checks";
    out.message += psd_ok ? "" : "; PSD check failed";
    out.message += feas_ok ? "" : "; constraint violation too large";
    out.message += gap_ok ? "" : "; duality gap too large";
  }
  return out;
}

}  // namespace isac::conic
