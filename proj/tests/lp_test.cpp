#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qharm/lp.hpp"

using namespace qharm;

namespace {

lp::Problem make(std::initializer_list<double> c, std::initializer_list<std::initializer_list<double>> a,
                 std::initializer_list<double> b) {
  lp::Problem p;
  p.objective = Eigen::VectorXd::Map(std::data(c), static_cast<Eigen::Index>(c.size()));
  p.constraints.resize(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (auto row : a) {
    Eigen::Index j = 0;
    for (double v : row) p.constraints(i, j++) = v;
    ++i;
  }
  p.bounds = Eigen::VectorXd::Map(std::data(b), static_cast<Eigen::Index>(b.size()));
  return p;
}

}  // namespace

TEST(Lp, SingleVariableUpperBound) {
  auto s = lp::solve(make({1}, {{1}, {-1}}, {3, 0}));
  ASSERT_EQ(s.status, lp::Status::optimal);
  EXPECT_NEAR(s.x(0), 3.0, 1e-12);
  EXPECT_NEAR(s.objective_value, 3.0, 1e-12);
}

TEST(Lp, BindingDiagonal) {
  auto s = lp::solve(make({1, 1}, {{1, 0}, {0, 1}, {1, 1}}, {1, 1, 1.5}));
  ASSERT_EQ(s.status, lp::Status::optimal);
  EXPECT_NEAR(s.objective_value, 1.5, 1e-12);
}

TEST(Lp, Infeasible) {
  auto s = lp::solve(make({1}, {{1}, {-1}}, {1, -2}));
  EXPECT_EQ(s.status, lp::Status::infeasible);
}

TEST(Lp, InfeasibleEmptyRow) {
  auto s = lp::solve(make({1}, {{1}, {0}}, {1, -1}));
  EXPECT_EQ(s.status, lp::Status::infeasible);
}

TEST(Lp, Unbounded) {
  auto s = lp::solve(make({1, 1}, {{-1, 0}, {0, 1}}, {0, 1}));
  EXPECT_EQ(s.status, lp::Status::unbounded);
  // The returned point is feasible.
  auto p = make({1, 1}, {{-1, 0}, {0, 1}}, {0, 1});
  EXPECT_LE(lp::max_relative_violation(p, s.x), 1e-8);
}

TEST(Lp, FreeVariableWithoutConstraints) {
  auto s = lp::solve(make({0, 1}, {{1, 0}}, {2}));
  EXPECT_EQ(s.status, lp::Status::unbounded);
}

TEST(Lp, NegativeOptimumWithFreeVariables) {
  // max -|x - 2| style: max -t s.t. x - t <= 2, -x - t <= -2, x <= 10
  auto s = lp::solve(make({0, -1}, {{1, -1}, {-1, -1}, {1, 0}}, {2, -2, 10}));
  ASSERT_EQ(s.status, lp::Status::optimal);
  EXPECT_NEAR(s.objective_value, 0.0, 1e-12);
  EXPECT_NEAR(s.x(0), 2.0, 1e-12);
}

TEST(Lp, DegenerateVertexTerminates) {
  // Many constraints through the same optimal vertex (1, 1).
  lp::Problem p;
  const int rows = 40;
  p.constraints.resize(rows, 2);
  p.bounds.resize(rows);
  for (int i = 0; i < rows; ++i) {
    double t = 0.05 + 1.4 * i / rows;
    p.constraints(i, 0) = std::cos(t);
    p.constraints(i, 1) = std::sin(t);
    p.bounds(i) = std::cos(t) + std::sin(t);
  }
  p.objective = Eigen::Vector2d(1, 1);
  auto s = lp::solve(p);
  ASSERT_EQ(s.status, lp::Status::optimal);
  EXPECT_NEAR(s.objective_value, 2.0, 1e-10);
}

TEST(Lp, IterationCapThrows) {
  std::mt19937_64 rng(3);
  auto p = oracle::random_bounded_lp(rng, 5, 30);
  lp::Options opt;
  opt.max_iterations = 1;
  EXPECT_THROW(lp::solve(p, opt), lp::IterationLimit);
}

TEST(Lp, RejectsMalformedProblem) {
  lp::Problem p;
  p.objective = Eigen::VectorXd::Ones(2);
  p.constraints = Eigen::MatrixXd::Ones(3, 3);
  p.bounds = Eigen::VectorXd::Ones(3);
  EXPECT_THROW(lp::solve(p), std::invalid_argument);
  p.constraints = Eigen::MatrixXd::Ones(3, 2);
  p.bounds(1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(lp::solve(p), std::invalid_argument);
}

TEST(Lp, MatchesVertexEnumeration) {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = oracle::random_bounded_lp(rng, 5, 12);
    auto s = lp::solve(p);
    ASSERT_EQ(s.status, lp::Status::optimal) << "trial " << trial;
    double ref = oracle::vertex_enumeration(p);
    EXPECT_NEAR(s.objective_value, ref, 1e-9 * (1 + std::abs(ref))) << "trial " << trial;
  }
}

TEST(Lp, FeasibilityAndDualityCertificate) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = oracle::random_bounded_lp(rng, 8, 60);
    auto s = lp::solve(p);
    ASSERT_EQ(s.status, lp::Status::optimal);
    EXPECT_LE(lp::max_relative_violation(p, s.x), 1e-8);
    EXPECT_GE(s.dual.minCoeff(), 0.0);
    EXPECT_LE((p.constraints.transpose() * s.dual - p.objective).lpNorm<Eigen::Infinity>(),
              1e-8 * (1 + p.objective.lpNorm<Eigen::Infinity>()));
    double dual_obj = p.bounds.dot(s.dual);
    EXPECT_LE(std::abs(dual_obj - s.objective_value), 1e-7 * (1 + std::abs(s.objective_value)));
    EXPECT_NEAR(s.objective_value, p.objective.dot(s.x), 1e-9 * (1 + std::abs(s.objective_value)));
  }
}

TEST(Lp, DeterministicAndScaleEquivariant) {
  std::mt19937_64 rng(5);
  auto p = oracle::random_bounded_lp(rng, 6, 40);
  auto a = lp::solve(p);
  auto b = lp::solve(p);
  ASSERT_EQ(a.status, lp::Status::optimal);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.objective_value, b.objective_value);
  // Scaling b or c alone by lambda scales the optimum by lambda.
  for (double lambda : {0.01, 3.0, 250.0}) {
    auto q = p;
    q.bounds *= lambda;
    auto s = lp::solve(q);
    EXPECT_EQ(s.status, a.status);
    EXPECT_NEAR(s.objective_value, lambda * a.objective_value, 1e-9 * lambda * (1 + std::abs(a.objective_value)));
    q = p;
    q.objective *= lambda;
    s = lp::solve(q);
    EXPECT_EQ(s.status, a.status);
    EXPECT_NEAR(s.objective_value, lambda * a.objective_value, 1e-9 * lambda * (1 + std::abs(a.objective_value)));
  }
}

TEST(Lp, ManyRowsFewVariables) {
  // Chebyshev fit of a line to sin on [0, 3]: min t s.t. |sin x_i - (c0 + c1 x_i)| <= t.
  const int pts = 2000;
  lp::Problem p;
  p.constraints.resize(2 * pts, 3);
  p.bounds.resize(2 * pts);
  for (int i = 0; i < pts; ++i) {
    double x = 3.0 * i / (pts - 1);
    double f = std::sin(x);
    p.constraints.row(2 * i) << -1, -x, -1;
    p.bounds(2 * i) = -f;
    p.constraints.row(2 * i + 1) << 1, x, -1;
    p.bounds(2 * i + 1) = f;
  }
  p.objective = Eigen::Vector3d(0, 0, -1);
  auto s = lp::solve(p);
  ASSERT_EQ(s.status, lp::Status::optimal);
  EXPECT_GT(-s.objective_value, 0.0);
  EXPECT_LE(lp::max_relative_violation(p, s.x), 1e-8);
}

TEST(Lp, RowGenerationMatchesFullSolve) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = oracle::random_bounded_lp(rng, 6, 600);
    auto full = lp::solve(p);
    auto rows = lp::solve_by_rows(p);
    ASSERT_EQ(full.status, lp::Status::optimal);
    ASSERT_EQ(rows.status, lp::Status::optimal);
    EXPECT_NEAR(rows.objective_value, full.objective_value, 1e-9 * (1 + std::abs(full.objective_value)));
    EXPECT_LE(lp::max_relative_violation(p, rows.x), 1e-8);
    EXPECT_EQ(rows.dual.size(), p.n_rows());
  }
}

TEST(Lp, RowGenerationStatuses) {
  // Infeasible: x <= -1 and -x <= -1 buried among many harmless rows.
  lp::Problem p;
  const int rows = 500;
  p.constraints = Eigen::MatrixXd::Zero(rows, 1);
  p.bounds = Eigen::VectorXd::Constant(rows, 10.0);
  for (int i = 0; i < rows; ++i) p.constraints(i, 0) = i % 2 ? 1.0 : -1.0;
  p.constraints(123, 0) = 1.0;
  p.bounds(123) = -1.0;
  p.constraints(321, 0) = -1.0;
  p.bounds(321) = -1.0;
  p.objective = Eigen::VectorXd::Ones(1);
  EXPECT_EQ(lp::solve_by_rows(p).status, lp::Status::infeasible);
  // Unbounded in x1: every row only involves x0.
  lp::Problem q;
  q.constraints = Eigen::MatrixXd::Zero(rows, 2);
  q.bounds = Eigen::VectorXd::Constant(rows, 1.0);
  for (int i = 0; i < rows; ++i) q.constraints(i, 0) = i % 2 ? 1.0 : -1.0;
  q.objective = Eigen::Vector2d(0, 1);
  EXPECT_EQ(lp::solve_by_rows(q).status, lp::Status::unbounded);
}

TEST(Lp, WarmStartAfterBoundChange) {
  std::mt19937_64 rng(23);
  auto p = oracle::random_bounded_lp(rng, 6, 80);
  auto a = lp::solve(p);
  ASSERT_EQ(a.status, lp::Status::optimal);
  ASSERT_EQ(a.basis.size(), 6u);
  std::uniform_real_distribution<double> u(0.0, 0.2);
  for (int i = 0; i < p.n_rows(); ++i) p.bounds(i) += u(rng);
  auto cold = lp::solve(p);
  auto warm = lp::solve(p, {}, a.basis);
  ASSERT_EQ(warm.status, lp::Status::optimal);
  EXPECT_NEAR(warm.objective_value, cold.objective_value, 1e-9 * (1 + std::abs(cold.objective_value)));
  EXPECT_LE(warm.iterations, cold.iterations);
  // A useless hint falls back to a cold start.
  auto junk = lp::solve(p, {}, {0, 0, 1});
  EXPECT_NEAR(junk.objective_value, cold.objective_value, 1e-9 * (1 + std::abs(cold.objective_value)));
}

TEST(Lp, OracleEquivalence200) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = oracle::random_bounded_lp(rng, 5, 12);
    auto s = lp::solve(p);
    ASSERT_EQ(s.status, lp::Status::optimal);
    double ref = oracle::vertex_enumeration(p);
    EXPECT_NEAR(s.objective_value, ref, 1e-9 * (1 + std::abs(ref)));
  }
}
