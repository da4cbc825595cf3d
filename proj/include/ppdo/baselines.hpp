#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "ppdo/engine.hpp"

namespace ppdo {

enum class Baseline { kPushDIGing, kSubgradientPush, kABPushPull };

inline std::string baseline_name(Baseline b) {
  switch (b) {
    case Baseline::kPushDIGing: return "push-diging";
    case Baseline::kSubgradientPush: return "subgradient-push";
    case Baseline::kABPushPull: return "ab-push-pull";
  }
  return "?";
}

inline Baseline parse_baseline(const std::string& s) {
  if (s == "push-diging" || s == "pushdiging") return Baseline::kPushDIGing;
  if (s == "subgradient-push" || s == "subgradientpush") return Baseline::kSubgradientPush;
  if (s == "ab-push-pull" || s == "abpushpull" || s == "push-pull") return Baseline::kABPushPull;
  throw ConfigError("unknown algorithm '" + s + "'");
}

struct BaselineOptions {
  // Subgradient-Push uses eta_k = 1/(k + offset) when set, cfg.eta otherwise.
  std::optional<double> subgradient_offset = 3000.0;
};

namespace detail {

inline std::vector<Vector> initial_x(const RunConfig& cfg) {
  auto st = init_agents(cfg);
  std::vector<Vector> xs;
  for (const auto& a : st) xs.push_back(a.x);
  return xs;
}

inline void push_point(Trajectory& t, const std::vector<Vector>& xs, const Vector& x_star) {
  t.x.push_back(stack_rows(xs));
  t.residual.push_back(relative_residual(t.x.back(), t.x.front(), x_star));
}

template <class Step>
Trajectory drive(const RunConfig& cfg, std::vector<Vector> xs, Step&& step) {
  if (cfg.horizon < 0) throw ParameterError("horizon must be non-negative");
  Trajectory t;
  push_point(t, xs, cfg.x_star);
  std::int64_t k = 0;
  while (k < cfg.horizon && !(cfg.stop && t.residual.back() <= *cfg.stop)) {
    const auto t0 = std::chrono::steady_clock::now();
    xs = step(k);
    t.busy_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ++k;
    push_point(t, xs, cfg.x_star);
  }
  t.iterations = k;
  return t;
}

// Subgradient-Push: push-sum on (x, y) with weights 1/(d_out + 1), then a
// gradient step at the de-biased point z = w / y. The reported estimate is
// x_i / y_i after the gradient step.
inline Trajectory subgradient_push(const RunConfig& cfg, const BaselineOptions& opt) {
  const int m = cfg.problem->agents();
  std::vector<Vector> x = initial_x(cfg);
  std::vector<double> y(static_cast<std::size_t>(m), 1.0);
  return drive(cfg, x, [&](std::int64_t k) {
    const DirectedGraph g = cfg.schedule.graph_at(k);
    std::vector<Vector> w(static_cast<std::size_t>(m), Vector::Zero(x.front().size()));
    std::vector<double> ny(static_cast<std::size_t>(m), 0.0);
    for (int j = 0; j < m; ++j) {
      const double share = 1.0 / static_cast<double>(g.out_degree(j) + 1);
      w[static_cast<std::size_t>(j)] += share * x[static_cast<std::size_t>(j)];
      ny[static_cast<std::size_t>(j)] += share * y[static_cast<std::size_t>(j)];
      for (AgentId l : g.out_neighbors(j)) {
        w[static_cast<std::size_t>(l)] += share * x[static_cast<std::size_t>(j)];
        ny[static_cast<std::size_t>(l)] += share * y[static_cast<std::size_t>(j)];
      }
    }
    const double alpha = opt.subgradient_offset ? 1.0 / (static_cast<double>(k + 1) + *opt.subgradient_offset)
                                                : cfg.eta;
    std::vector<Vector> est(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      const auto u = static_cast<std::size_t>(i);
      const Vector z = w[u] / ny[u];
      x[u] = w[u] - alpha * cfg.problem->gradient(i, z);
      y[u] = ny[u];
      est[u] = x[u] / y[u];
    }
    return est;
  });
}

// AB / Push-Pull: row-stochastic pull of x with 1/(d_in + 1), column-stochastic
// push of the gradient tracker with 1/(d_out + 1).
inline Trajectory ab_push_pull(const RunConfig& cfg) {
  const int m = cfg.problem->agents();
  std::vector<Vector> x = initial_x(cfg);
  std::vector<Vector> grad(static_cast<std::size_t>(m)), y(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    grad[static_cast<std::size_t>(i)] = cfg.problem->gradient(i, x[static_cast<std::size_t>(i)]);
    y[static_cast<std::size_t>(i)] = grad[static_cast<std::size_t>(i)];
  }
  return drive(cfg, x, [&](std::int64_t k) {
    const DirectedGraph g = cfg.schedule.graph_at(k);
    std::vector<Vector> nx(static_cast<std::size_t>(m)), ny(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      const auto& in = g.in_neighbors(i);
      const double r = 1.0 / static_cast<double>(in.size() + 1);
      Vector acc = r * (x[static_cast<std::size_t>(i)] - cfg.eta * y[static_cast<std::size_t>(i)]);
      for (AgentId j : in) acc += r * (x[static_cast<std::size_t>(j)] - cfg.eta * y[static_cast<std::size_t>(j)]);
      nx[static_cast<std::size_t>(i)] = std::move(acc);
      ny[static_cast<std::size_t>(i)] = Vector::Zero(x.front().size());
    }
    for (int j = 0; j < m; ++j) {
      const double c = 1.0 / static_cast<double>(g.out_degree(j) + 1);
      ny[static_cast<std::size_t>(j)] += c * y[static_cast<std::size_t>(j)];
      for (AgentId l : g.out_neighbors(j)) ny[static_cast<std::size_t>(l)] += c * y[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < m; ++i) {
      const auto u = static_cast<std::size_t>(i);
      Vector g_new = cfg.problem->gradient(i, nx[u]);
      ny[u] += g_new - grad[u];
      grad[u] = std::move(g_new);
    }
    x = std::move(nx);
    y = std::move(ny);
    return x;
  });
}

}  // namespace detail

/// Runs one of the comparison algorithms on the same schedule and problem.
/// Push-DIGing reuses the engine with out-degree weights, w(0) = 1 and no
/// reset, so it goes over the same channel and can be captured.
inline Trajectory run_baseline(Baseline which, RunConfig cfg, const BaselineOptions& opt = {}) {
  if (!cfg.problem) throw ParameterError("run configuration has no problem");
  if (!(cfg.eta > 0.0) && !(which == Baseline::kSubgradientPush && opt.subgradient_offset))
    throw ParameterError("step size must be positive");
  switch (which) {
    case Baseline::kPushDIGing:
      cfg.weights = WeightRule::kOutDegree;
      cfg.reset_w_at_one = false;
      cfg.initial_w = std::vector<double>(static_cast<std::size_t>(cfg.problem->agents()), 1.0);
      return run(cfg);
    case Baseline::kSubgradientPush: return detail::subgradient_push(cfg, opt);
    case Baseline::kABPushPull: return detail::ab_push_pull(cfg);
  }
  throw ParameterError("unknown baseline");
}

}  // namespace ppdo
