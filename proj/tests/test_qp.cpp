#include <doctest.h>

#include <random>

#include "ampc/qp.hpp"
#include "support/qp_oracle.hpp"

using namespace ampc;

namespace {

QpProblem two_var_problem() {
  QpProblem p;
  p.hessian = Eigen::Matrix2d::Identity();
  p.linear = Eigen::Vector2d(-1, -1);
  p.con_mat = Eigen::MatrixXd(1, 2);
  p.con_mat << 1, 1;
  p.con_bound = Eigen::VectorXd::Constant(1, 1.0);
  return p;
}

}  // namespace

TEST_CASE("unconstrained minimum") {
  Eigen::MatrixXd identity = Eigen::Matrix2d::Identity();
  Eigen::VectorXd k(2);
  k << -1, -1;
  CHECK((unconstrained_minimum<double>(identity, k) - Eigen::Vector2d(1, 1)).norm() < 1e-14);

  Eigen::MatrixXd diag = Eigen::Vector2d(2, 4).asDiagonal();
  Eigen::VectorXd k2(2);
  k2 << -2, -4;
  CHECK((unconstrained_minimum<double>(diag, k2) - Eigen::Vector2d(1, 1)).norm() < 1e-14);

  std::mt19937 rng(7);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) a(i, j) = gauss(rng);
  Eigen::MatrixXd spd = a.transpose() * a + Eigen::MatrixXd::Identity(6, 6);
  Eigen::VectorXd lin(6);
  for (int i = 0; i < 6; ++i) lin[i] = gauss(rng);
  const Eigen::VectorXd x = unconstrained_minimum<double>(spd, lin);
  CHECK((spd * x + lin).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("unconstrained minimum rejects bad hessians") {
  Eigen::MatrixXd indefinite = Eigen::Matrix2d::Identity();
  indefinite(1, 1) = -1.0;
  Eigen::VectorXd k = Eigen::Vector2d::Zero();
  CHECK_THROWS_AS(unconstrained_minimum<double>(indefinite, k), std::invalid_argument);

  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(unconstrained_minimum<double>(asym, k), std::invalid_argument);
}

TEST_CASE("equality-constrained closed form") {
  const QpProblem p = two_var_problem();
  const QpSolution sol = solve_equality(p);
  CHECK(sol.dual[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK((sol.primal - Eigen::Vector2d(0.5, 0.5)).norm() < 1e-12);
  CHECK((p.con_mat * sol.primal - p.con_bound).lpNorm<Eigen::Infinity>() < 1e-9);
  // stationarity
  CHECK((p.hessian * sol.primal + p.linear + p.con_mat.transpose() * sol.dual)
            .lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("equality solve with no constraints reduces to the unconstrained minimum") {
  QpProblem p = two_var_problem();
  p.con_mat.resize(0, 2);
  p.con_bound.resize(0);
  const QpSolution sol = solve_equality(p);
  CHECK((sol.primal - Eigen::Vector2d(1, 1)).norm() < 1e-14);
  CHECK(sol.dual.size() == 0);
}

TEST_CASE("constraint already tight at the unconstrained optimum gives zero multiplier") {
  QpProblem p = two_var_problem();
  p.con_bound[0] = 2.0;  // the unconstrained optimum [1,1] sits exactly on it
  const QpSolution sol = solve_equality(p);
  CHECK(std::abs(sol.dual[0]) < 1e-12);
  CHECK((sol.primal - Eigen::Vector2d(1, 1)).norm() < 1e-12);
}

TEST_CASE("equality solve rejects dependent rows") {
  QpProblem p = two_var_problem();
  p.con_mat.resize(2, 2);
  p.con_mat << 1, 1, 1, 1;
  p.con_bound = Eigen::Vector2d(1, 1);
  CHECK_THROWS_AS(solve_equality(p), std::invalid_argument);
}

TEST_CASE("hildreth on an active constraint matches the equality solution") {
  const QpProblem p = two_var_problem();
  const QpSolution sol = solve_hildreth(p, 100, 1e-10);
  CHECK(sol.converged);
  CHECK((sol.primal - Eigen::Vector2d(0.5, 0.5)).lpNorm<Eigen::Infinity>() < 1e-6);
  CHECK(sol.dual[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(sol.active_set == std::vector<int>{0});
}

TEST_CASE("hildreth returns immediately when the minimum is feasible") {
  QpProblem p = two_var_problem();
  p.con_bound[0] = 10.0;
  const QpSolution sol = solve_hildreth(p);
  CHECK(sol.iterations == 0);
  CHECK(sol.converged);
  CHECK(sol.dual[0] == 0.0);
  CHECK((sol.primal - Eigen::Vector2d(1, 1)).norm() < 1e-14);
}

TEST_CASE("hildreth clips against two-sided bounds") {
  QpProblem p;
  p.hessian = Eigen::Matrix2d::Identity();
  p.linear = Eigen::Vector2d(-1, -1);
  p.con_mat = Eigen::MatrixXd(2, 2);
  p.con_mat << 1, 0, -1, 0;
  p.con_bound = Eigen::Vector2d(0.2, 0.2);  // -0.2 <= x1 <= 0.2
  const QpSolution sol = solve_hildreth(p, 200, 1e-12);
  CHECK(sol.primal[0] == doctest::Approx(0.2).epsilon(1e-8));
  CHECK(sol.primal[1] == doctest::Approx(1.0).epsilon(1e-8));

  // brute-force check over a grid of the feasible box
  double best_cost = 1e100;
  Eigen::Vector2d best;
  for (double x1 = -0.2; x1 <= 0.2 + 1e-12; x1 += 0.004) {
    for (double x2 = -1.0; x2 <= 3.0 + 1e-12; x2 += 0.004) {
      const Eigen::Vector2d x(x1, x2);
      const double cost = ampc::testing::qp_cost(p, x);
      if (cost < best_cost) {
        best_cost = cost;
        best = x;
      }
    }
  }
  CHECK((sol.primal - best).lpNorm<Eigen::Infinity>() < 5e-3);
}

TEST_CASE("hildreth flags an exhausted sweep budget and still returns an iterate") {
  const QpProblem p = two_var_problem();
  const QpSolution sol = solve_hildreth(p, 1, 1e-16);
  CHECK_FALSE(sol.converged);
  CHECK(sol.iterations == 1);
  CHECK(sol.primal.allFinite());
}

TEST_CASE("hildreth duals stay nonnegative sweep by sweep") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const QpProblem p = ampc::testing::random_qp(rng);
    for (int sweeps = 1; sweeps <= 10; ++sweeps) {
      const QpSolution sol = solve_hildreth(p, sweeps, 0.0);
      if (sol.dual.size() > 0) {
        CHECK(sol.dual.minCoeff() >= 0.0);
      }
    }
  }
}

TEST_CASE("hildreth matches the brute-force active-set oracle") {
  std::mt19937 rng(2024);
  int active_problems = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const QpProblem p = ampc::testing::random_qp(rng);
    const Eigen::VectorXd expected = ampc::testing::brute_force_qp(p);
    const QpSolution sol = solve_hildreth(p, 5000, 1e-12);
    CHECK((sol.primal - expected).lpNorm<Eigen::Infinity>() < 1e-4);

    // complementary slackness at convergence
    if (sol.converged && sol.dual.size() > 0) {
      const Eigen::VectorXd slack = p.con_mat * sol.primal - p.con_bound;
      for (int i = 0; i < sol.dual.size(); ++i) {
        CHECK(std::abs(sol.dual[i] * slack[i]) < 1e-6);
      }
    }
    if (!sol.active_set.empty()) ++active_problems;
  }
  CHECK(active_problems > 40);  // the generator must actually exercise constraints
}
