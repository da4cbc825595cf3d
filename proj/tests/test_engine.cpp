#include <cmath>

#include <gtest/gtest.h>

#include "ppdo/engine.hpp"
#include "ppdo/graph_io.hpp"

using namespace ppdo;

namespace {

RunConfig six_agent_config(std::uint64_t seed = 7, std::int64_t horizon = 60) {
  const auto inst = generate_sensor_fusion(6, 3, 2, 0.01, 7);
  RunConfig c;
  c.schedule = topologies::six_agent_activation(0.9, seed);
  c.problem = std::make_shared<GlobalProblem>(make_problem(inst));
  c.x_star = optimal_solution(inst);
  c.eta = 1.1e-3;
  c.horizon = horizon;
  c.seed = seed;
  return c;
}

// f(x) = x^2 on one agent
RunConfig single_square(double eta, std::int64_t horizon) {
  RunConfig c;
  c.schedule = GraphSchedule::fixed(DirectedGraph(1));
  std::vector<std::shared_ptr<const LocalObjective>> fs{
      std::make_shared<QuadraticObjective>(Matrix::Identity(1, 1), Vector::Zero(1), 0.0)};
  c.problem = std::make_shared<GlobalProblem>(fs);
  c.x_star = Vector::Zero(1);
  c.eta = eta;
  c.horizon = horizon;
  c.initial_x = std::vector<Vector>{Vector::Constant(1, 1.0)};
  c.record_full = true;
  return c;
}

Matrix gradients(const GlobalProblem& p, const Matrix& x) {
  Matrix g(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i) g.row(i) = p.gradient(i, x.row(i).transpose()).transpose();
  return g;
}

}  // namespace

TEST(Residual, HandComputedValue) {
  EXPECT_DOUBLE_EQ(relative_residual(Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, 2.0), Vector::Zero(1)), 0.25);
  EXPECT_THROW(relative_residual(Matrix::Zero(2, 1), Matrix::Zero(2, 1), Vector::Zero(1)), DegenerateState);
}

TEST(Engine, SingleAgentIsGradientDescent) {
  const auto t = run(single_square(0.1, 10));
  EXPECT_DOUBLE_EQ(t.s[0](0, 0), 2.0);
  EXPECT_NEAR(t.x[1](0, 0), 0.8, 1e-15);
  for (int k = 0; k <= 10; ++k) EXPECT_NEAR(t.x[static_cast<std::size_t>(k)](0, 0), std::pow(0.8, k), 1e-14);
  EXPECT_NEAR(t.residual[10], std::pow(0.8, 20), 1e-14);
}

TEST(Engine, MatchesDenseAugmentedRecursion) {
  auto cfg = six_agent_config(11, 6);
  cfg.record_full = true;
  const auto t = run(cfg);
  const auto& prob = *cfg.problem;
  const int m = 6;

  Matrix y = t.x[0], s = gradients(prob, t.x[0]);
  Vector w = t.w[0];
  Matrix g_old = s;
  for (std::int64_t k = 0; k < 6; ++k) {
    const auto g = cfg.schedule.graph_at(k);
    std::vector<WeightColumn> cols;
    for (int i = 0; i < m; ++i) cols.push_back(generate_weight_column(i, g, k, cfg.params, cfg.seed));
    const Matrix a = assemble_weight_matrix(cols, m);
    y = a * (y - cfg.eta * s);
    w = k == 0 ? Vector::Ones(m) : Vector(a * w);
    const Matrix x = w.cwiseInverse().asDiagonal() * y;
    const Matrix g_new = gradients(prob, x);
    s = a * s + g_new - g_old;
    g_old = g_new;
    const auto u = static_cast<std::size_t>(k + 1);
    EXPECT_LT((t.y[u] - y).cwiseAbs().maxCoeff(), 1e-10) << "k=" << k + 1;
    EXPECT_LT((t.w[u] - w).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((t.x[u] - x).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((t.s[u] - s).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((t.a[static_cast<std::size_t>(k)] - a).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Engine, EncryptionIsTransparent) {
  auto on = six_agent_config(3, 80);
  auto off = on;
  off.encryption = false;
  on.record_full = off.record_full = true;
  const auto a = run(on), b = run(off);
  ASSERT_EQ(a.x.size(), b.x.size());
  for (std::size_t k = 0; k < a.x.size(); ++k) {
    EXPECT_EQ(a.x[k], b.x[k]);
    EXPECT_EQ(a.y[k], b.y[k]);
    EXPECT_EQ(a.s[k], b.s[k]);
    EXPECT_EQ(a.w[k], b.w[k]);
  }
}

TEST(Engine, ConservationInvariants) {
  auto cfg = six_agent_config(5, 200);
  cfg.record_full = true;
  const auto t = run(cfg);
  const auto& prob = *cfg.problem;
  const double w_floor = std::pow(cfg.params.c0, 6 * 9);
  for (std::size_t k = 0; k < t.x.size(); ++k) {
    const Vector col_s = t.s[k].colwise().sum();
    const Vector col_g = gradients(prob, t.x[k]).colwise().sum();
    EXPECT_LT((col_s - col_g).cwiseAbs().maxCoeff(), 1e-9) << "k=" << k;
    if (k >= 1) {
      EXPECT_NEAR(t.w[k].sum(), 6.0, 1e-9);
      EXPECT_GE(t.w[k].minCoeff(), w_floor);
      const Vector ybar_next = t.y[k].colwise().mean();
      const Vector ybar = t.y[k - 1].colwise().mean();
      const Vector sbar = t.s[k - 1].colwise().mean();
      EXPECT_LT((ybar_next - (ybar - cfg.eta * sbar)).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(Engine, ResetMakesFirstWeightsOne) {
  auto cfg = six_agent_config(2, 1);
  cfg.record_full = true;
  const auto t = run(cfg);
  EXPECT_EQ(t.w[1], Vector::Ones(6));
  EXPECT_GT((t.w[0] - Vector::Ones(6)).norm(), 0.0);
}

TEST(Engine, HorizonZeroGivesUnitResidual) {
  auto cfg = six_agent_config(1, 0);
  const auto t = run(cfg);
  ASSERT_EQ(t.residual.size(), 1u);
  EXPECT_EQ(t.residual[0], 1.0);
  EXPECT_EQ(t.iterations, 0);
}

TEST(Engine, StopCriterionOneStopsImmediately) {
  auto cfg = six_agent_config(1, 100);
  cfg.stop = 1.0;
  EXPECT_EQ(run(cfg).iterations, 0);
  cfg.stop = 1e-3;
  const auto t = run(cfg);
  EXPECT_LE(t.residual.back(), 1e-3);
  EXPECT_GT(t.residual[t.residual.size() - 2], 1e-3);
}

TEST(Engine, SameSeedSameTrajectory) {
  const auto a = run(six_agent_config(4, 30));
  const auto b = run(six_agent_config(4, 30));
  for (std::size_t k = 0; k < a.x.size(); ++k) EXPECT_EQ(a.x[k], b.x[k]);
  const auto c = run(six_agent_config(5, 30));
  EXPECT_NE(a.x.back(), c.x.back());
}

TEST(Engine, CaptureLogsThreeMessagesPerEdge) {
  auto cfg = six_agent_config(6, 5);
  cfg.capture = true;
  const auto t = run(cfg);
  std::size_t edges = 0;
  for (int k = 0; k < 5; ++k) edges += cfg.schedule.graph_at(k).edge_count();
  ASSERT_EQ(t.messages.size(), 3 * edges);
  for (const auto& m : t.messages) {
    ASSERT_TRUE(m.cipher);
    EXPECT_EQ(decrypt(SharedKey::from_seed(cfg.seed), *m.cipher), m.plain);
  }
}

TEST(Engine, RejectsBadParameters) {
  auto cfg = six_agent_config();
  cfg.eta = 0.0;
  EXPECT_THROW(run(cfg), ParameterError);
  cfg.eta = -1e-3;
  EXPECT_THROW(run(cfg), ParameterError);
  cfg = six_agent_config();
  cfg.params.c0 = 0.2;
  EXPECT_THROW(run(cfg), ParameterError);
  cfg = six_agent_config();
  cfg.horizon = -1;
  EXPECT_THROW(run(cfg), ParameterError);
  cfg = six_agent_config();
  cfg.schedule = topologies::privacy_isolated();
  EXPECT_THROW(run(cfg), ParameterError);
}

TEST(Engine, ZeroWeightIsDegenerate) {
  auto cfg = single_square(0.1, 3);
  cfg.reset_w_at_one = false;
  cfg.initial_w = std::vector<double>{0.0};
  EXPECT_THROW(run(cfg), DegenerateState);
}

TEST(Engine, ConvergesOnSixAgents) {
  const auto t = run(six_agent_config(7, 300));
  EXPECT_LT(t.residual.back(), 1e-9);
}
