#include "doctest.h"

#include <random>

#include <Eigen/Eigenvalues>

#include "isac/conic.hpp"

using namespace isac::conic;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("lp two-variable vertex") {
  LinearProgram<double> lp(VectorXd::Ones(2));
  lp.add_row((VectorXd(2) << 1, 2).finished(), 4.0);
  lp.add_row((VectorXd(2) << 3, 1).finished(), 6.0);
  const auto sol = solve_lp(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.x(0) == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(sol.x(1) == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(sol.objective == doctest::Approx(2.8));
  CHECK(sol.dual_objective == doctest::Approx(2.8));
  CHECK(sol.row_duals(0) == doctest::Approx(0.4));
  CHECK(sol.row_duals(1) == doctest::Approx(0.2));
}

TEST_CASE("lp with free variables and shifted bounds") {
  // min x - y  s.t.  y <= 3 (as -y >= -3), x >= 2, y free.
  LinearProgram<double> lp((VectorXd(2) << 1, -1).finished());
  lp.lower << 2, -std::numeric_limits<double>::infinity();
  lp.add_row((VectorXd(2) << 0, -1).finished(), -3.0);
  const auto sol = solve_lp(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.x(0) == doctest::Approx(2));
  CHECK(sol.x(1) == doctest::Approx(3));
  CHECK(sol.objective == doctest::Approx(-1));
}

TEST_CASE("lp infeasible and unbounded") {
  LinearProgram<double> inf(VectorXd::Ones(1));
  inf.add_row(VectorXd::Constant(1, 1.0), 1.0);
  inf.add_row(VectorXd::Constant(1, -1.0), 0.0);
  CHECK(solve_lp(inf).status == Status::Infeasible);

  LinearProgram<double> unb(VectorXd::Constant(2, -1.0));
  unb.add_row((VectorXd(2) << 1, -1).finished(), 0.0);
  const auto sol = solve_lp(unb);
  REQUIRE(sol.status == Status::Unbounded);
  CHECK(sol.x.minCoeff() >= 0.0);
  CHECK(unb.objective.dot(sol.x) < 0.0);
}

TEST_CASE("lp degenerate rows terminate") {
  LinearProgram<double> lp(VectorXd::Ones(3));
  for (int r = 0; r < 6; ++r) lp.add_row(VectorXd::Ones(3), 1.0);
  lp.add_row((VectorXd(3) << 1, 0, 0).finished(), 0.0);
  const auto sol = solve_lp(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.objective == doctest::Approx(1.0));
}

TEST_CASE("property: lp optimum satisfies weak duality on random feasible programs") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 4, m = 1 + trial % 5;
    VectorXd c(n);
    for (int j = 0; j < n; ++j) c(j) = u(gen);
    LinearProgram<double> lp(c);
    for (int i = 0; i < m; ++i) {
      VectorXd row(n);
      for (int j = 0; j < n; ++j) row(j) = u(gen) - 0.5;
      row(i % n) = std::abs(row(i % n)) + 0.5;
      lp.add_row(row, u(gen));
    }
    const auto sol = solve_lp(lp);
    REQUIRE(sol.optimal());
    CHECK(lp_max_violation(lp, sol.x) <= 1e-8);
    CHECK((sol.row_duals.array() >= 0).all());
    CHECK(((c - lp.rows.transpose() * sol.row_duals).array() >= -1e-9).all());
    CHECK(std::abs(sol.objective - sol.dual_objective) <= 1e-8 * (1 + std::abs(sol.objective)));
  }
}

TEST_CASE("sdp trace constraint gives the smallest eigenvalue") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 4;
    MatrixXd B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) B(i, j) = nd(gen);
    SemidefiniteProgram<double> sdp(n);
    sdp.objective = 0.5 * (B + B.transpose());
    sdp.add(MatrixXd::Identity(n, n), Sense::Equal, 1.0);
    const auto sol = solve_sdp(sdp);
    REQUIRE(sol.optimal());
    const double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(sdp.objective).eigenvalues()(0);
    CHECK(sol.primal_objective == doctest::Approx(lmin).epsilon(1e-6));
    CHECK(sol.dual_objective == doctest::Approx(lmin).epsilon(1e-6));
  }
}

TEST_CASE("diagonal sdp matches the lp route") {
  // A diagonal SDP with entry constraints is an LP; both solvers must agree.
  LinearProgram<double> lp((VectorXd(3) << 1, 2, 1.5).finished());
  lp.add_row((VectorXd(3) << 1, 1, 0).finished(), 1.0);
  lp.add_row((VectorXd(3) << 0, 1, 1).finished(), 2.0);
  lp.add_row((VectorXd(3) << 1, -0.5, 1).finished(), 0.5);
  const auto lsol = solve_lp(lp);
  REQUIRE(lsol.optimal());

  SemidefiniteProgram<double> sdp(3);
  sdp.objective = lp.objective.asDiagonal();
  for (Eigen::Index i = 0; i < lp.num_rows(); ++i)
    sdp.add(MatrixXd(lp.rows.row(i).transpose().asDiagonal()), Sense::GreaterEqual, lp.bounds(i));
  const auto ssol = solve_sdp(sdp);
  REQUIRE(ssol.optimal());
  CHECK(ssol.primal_objective == doctest::Approx(lsol.objective).epsilon(1e-6));
}

TEST_CASE("sdp entry constraints and duplicate entries") {
  // min Y01 with unit diagonal: unconstrained optimum is -1, entries force 0.
  SemidefiniteProgram<double> sdp(2);
  sdp.objective << 0, 0.5, 0.5, 0;
  MatrixXd e0 = MatrixXd::Zero(2, 2), e1 = MatrixXd::Zero(2, 2);
  e0(0, 0) = 1;
  e1(1, 1) = 1;
  sdp.add(e0, Sense::Equal, 1).add(e1, Sense::LessEqual, 1);
  auto free_sol = solve_sdp(sdp);
  REQUIRE(free_sol.optimal());
  CHECK(free_sol.primal_objective == doctest::Approx(-1).epsilon(1e-6));

  sdp.nonnegative_entries = {{0, 1}, {1, 0}};
  auto sol = solve_sdp(sdp);
  REQUIRE(sol.optimal());
  CHECK(sol.primal_objective == doctest::Approx(0).epsilon(1e-6));
  CHECK(sol.duals.size() == 4);
  CHECK(sol.duals(2) == sol.duals(3));
}

TEST_CASE("sdp infeasible and unbounded certificates") {
  SemidefiniteProgram<double> inf(2);
  MatrixXd e0 = MatrixXd::Zero(2, 2);
  e0(0, 0) = 1;
  inf.add(e0, Sense::Equal, -1);
  CHECK(solve_sdp(inf).status == Status::Infeasible);

  SemidefiniteProgram<double> unb(2);
  unb.objective(0, 0) = -1;
  MatrixXd e1 = MatrixXd::Zero(2, 2);
  e1(1, 1) = 1;
  unb.add(e1, Sense::Equal, 1);
  CHECK(solve_sdp(unb).status == Status::Unbounded);
}

TEST_CASE("sdp validation rejects bad programs") {
  SemidefiniteProgram<double> bad(2);
  MatrixXd asym = MatrixXd::Zero(2, 2);
  asym(0, 1) = 1;
  bad.add(asym, Sense::Equal, 1);
  CHECK_THROWS_AS(solve_sdp(bad), std::invalid_argument);
  CHECK_THROWS_AS(solve_sdp(SemidefiniteProgram<double>(33)), std::invalid_argument);
}

TEST_CASE("lp textbook cases") {
  LinearProgram<double> one(VectorXd::Ones(1));
  one.add_row(VectorXd::Ones(1), 1.0);
  const auto sol = solve_lp(one);
  REQUIRE(sol.optimal());
  CHECK(sol.x(0) == doctest::Approx(1.0));

  // Summing the rows forces -(p1 + p2) >= 4.
  LinearProgram<double> forced(VectorXd::Ones(2));
  forced.add_row((VectorXd(2) << 1, -2).finished(), 2.0);
  forced.add_row((VectorXd(2) << -2, 1).finished(), 2.0);
  CHECK(solve_lp(forced).status == Status::Infeasible);
}

TEST_CASE("sdp textbook cases") {
  SemidefiniteProgram<double> scalar(1);
  scalar.objective << 1;
  scalar.add(MatrixXd::Ones(1, 1), Sense::Equal, 1.0);
  auto sol = solve_sdp(scalar);
  REQUIRE(sol.optimal());
  CHECK(sol.primal_objective == doctest::Approx(1.0).epsilon(1e-8));

  // min trace(Y), Y11 = 1, Y22 >= Y12. Y22 >= Y12^2 from PSD, so the best is
  // Y12 = 0 and Y22 = 0: trace 1 at diag(1, 0).
  SemidefiniteProgram<double> tr(2);
  tr.objective = MatrixXd::Identity(2, 2);
  MatrixXd e11 = MatrixXd::Zero(2, 2), cut = MatrixXd::Zero(2, 2);
  e11(0, 0) = 1;
  cut << 0, -0.5, -0.5, 1;
  tr.add(e11, Sense::Equal, 1.0).add(cut, Sense::GreaterEqual, 0.0);
  sol = solve_sdp(tr);
  REQUIRE(sol.optimal());
  CHECK(sol.primal_objective == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sol.Y(1, 1) == doctest::Approx(0.0).epsilon(1e-5));

  // Rayleigh quotient: min <-vv^T, Y>, trace(Y) = 1.
  SemidefiniteProgram<double> ray(2);
  ray.objective << -1, 0, 0, 0;
  ray.add(MatrixXd::Identity(2, 2), Sense::Equal, 1.0);
  sol = solve_sdp(ray);
  REQUIRE(sol.optimal());
  CHECK(sol.primal_objective == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(sol.Y(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(sol.Y(1, 1)) < 1e-6);
}
