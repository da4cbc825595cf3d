#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ppdo/error.hpp"
#include "ppdo/graph.hpp"
#include "ppdo/mixing.hpp"
#include "ppdo/objective.hpp"
#include "ppdo/rng.hpp"
#include "ppdo/secure_channel.hpp"

namespace ppdo {

struct AgentState {
  Vector y;
  double w = 1.0;
  Vector x;
  Vector s;
  Vector prev_grad;  // grad f_i(x_i(k)), reused by the s-update
};

// How each sender builds its outgoing column of A(k).
enum class WeightRule {
  kRandomized,  // Table-I style random weights (the private algorithm)
  kOutDegree,   // 1/(d_out + 1), as in Push-DIGing / ADD-OPT
};

struct RunConfig {
  GraphSchedule schedule = GraphSchedule::fixed(DirectedGraph(1));
  std::shared_ptr<const GlobalProblem> problem;
  Vector x_star;  // optimum, for the relative residual
  double eta = 1e-3;
  MixingParams params;
  std::int64_t horizon = 100;
  std::optional<double> stop;
  std::uint64_t seed = 0;
  bool encryption = true;
  bool capture = false;      // keep a log of every message
  bool record_full = false;  // keep y, w, s, gradients and A(k) per iteration

  WeightRule weights = WeightRule::kRandomized;
  bool reset_w_at_one = true;  // w_i(1) := 1 for every agent

  // Overrides for the arbitrary initial states; defaults are N(0,1) entries
  // for x(0) = y(0) and uniform [-1, 1] for w(0).
  std::optional<std::vector<Vector>> initial_x;
  std::optional<std::vector<double>> initial_w;
};

struct LoggedMessage {
  PlainPayload plain;
  std::optional<CipherEnvelope> cipher;
};

struct Trajectory {
  std::vector<Matrix> x;  // m x d per iteration, k = 0..iterations
  std::vector<double> residual;
  std::int64_t iterations = 0;
  double busy_seconds = 0.0;  // iterate + crypto only

  // Present when record_full is set.
  std::vector<Matrix> y;
  std::vector<Matrix> s;
  std::vector<Vector> w;
  std::vector<Matrix> grad;
  std::vector<WeightMatrix> a;  // a[k] = A(k), k = 0..iterations-1

  std::vector<LoggedMessage> messages;
};

inline double relative_residual(const Matrix& x_k, const Matrix& x_0, const Vector& x_star) {
  const Matrix ones_star = Matrix::Ones(x_k.rows(), 1) * x_star.transpose();
  const double den = (x_0 - ones_star).squaredNorm();
  if (!(den > 0.0)) throw DegenerateState("relative residual undefined: x(0) equals x*");
  return (x_k - ones_star).squaredNorm() / den;
}

inline Matrix stack_rows(const std::vector<Vector>& rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return out;
}

inline std::vector<AgentState> init_agents(const RunConfig& cfg) {
  if (!cfg.problem) throw ParameterError("run configuration has no problem");
  const int m = cfg.problem->agents();
  const int d = cfg.problem->dimension();
  if (cfg.schedule.agents() != m) throw ParameterError("schedule and problem disagree on the agent count");
  if (cfg.initial_x && cfg.initial_x->size() != static_cast<std::size_t>(m))
    throw ParameterError("initial_x needs one vector per agent");
  if (cfg.initial_w && cfg.initial_w->size() != static_cast<std::size_t>(m))
    throw ParameterError("initial_w needs one value per agent");

  std::vector<AgentState> agents(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    auto& a = agents[static_cast<std::size_t>(i)];
    KeyedRng rng(cfg.seed, StreamTag::kInitialState, {static_cast<std::uint64_t>(i)});
    std::normal_distribution<double> gauss(0.0, 1.0);
    if (cfg.initial_x) {
      a.x = (*cfg.initial_x)[static_cast<std::size_t>(i)];
      if (a.x.size() != d) throw DimensionError("initial_x entry has the wrong dimension");
    } else {
      a.x.resize(d);
      for (int c = 0; c < d; ++c) a.x(c) = gauss(rng);
    }
    a.w = cfg.initial_w ? (*cfg.initial_w)[static_cast<std::size_t>(i)] : rng.uniform(-1.0, 1.0);
    if (cfg.weights == WeightRule::kOutDegree && !cfg.initial_w) a.w = 1.0;
    a.y = a.x;
    a.prev_grad = cfg.problem->gradient(i, a.x);
    a.s = a.prev_grad;
  }
  return agents;
}

/// In-memory transport between agents. With encryption on, every payload is
/// sealed under the shared key with the sender's nonce counter and opened on
/// arrival; with it off the payload is handed over as is.
class Channel {
 public:
  Channel(int agents, std::optional<SharedKey> key, bool capture) : key_(std::move(key)), capture_(capture) {
    for (int i = 0; i < agents; ++i) nonces_.emplace_back(static_cast<std::uint32_t>(i));
  }

  PlainPayload transmit(PlainPayload p, std::vector<LoggedMessage>* log) {
    if (!key_) {
      if (capture_ && log) log->push_back({p, std::nullopt});
      return p;
    }
    CipherEnvelope env = encrypt(*key_, p, nonces_.at(p.sender));
    PlainPayload opened = decrypt(*key_, env);
    if (capture_ && log) log->push_back({std::move(p), std::move(env)});
    return opened;
  }

 private:
  std::optional<SharedKey> key_;
  bool capture_;
  std::vector<NonceSource> nonces_;
};

namespace detail {

inline std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }
inline Vector from_std(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

struct Inbound {
  Vector y, s;
  double w = 0.0;
};

}  // namespace detail

/// Drives one run of the push-sum gradient-tracking updates
///   y_i(k+1) = sum_j a_ij (y_j - eta s_j)
///   w_i(k+1) = sum_j a_ij w_j
///   x_i(k+1) = y_i(k+1) / w_i(k+1)
///   s_i(k+1) = sum_j a_ij s_j + grad f_i(x_i(k+1)) - grad f_i(x_i(k))
/// with every off-diagonal term arriving as a message over the Channel.
class Simulation {
 public:
  explicit Simulation(RunConfig cfg)
      : cfg_(std::move(cfg)),
        agents_(init_agents(cfg_)),
        channel_(cfg_.schedule.agents(),
                 cfg_.encryption ? std::optional<SharedKey>(SharedKey::from_seed(cfg_.seed)) : std::nullopt,
                 cfg_.capture) {
    if (!(cfg_.eta > 0.0)) throw ParameterError("step size must be positive");
    if (cfg_.weights == WeightRule::kRandomized) cfg_.params.validate(agents());
  }

  int agents() const { return static_cast<int>(agents_.size()); }
  std::int64_t k() const { return k_; }
  const std::vector<AgentState>& states() const { return agents_; }
  const RunConfig& config() const { return cfg_; }

  Matrix x_matrix() const {
    std::vector<Vector> rows;
    for (const auto& a : agents_) rows.push_back(a.x);
    return stack_rows(rows);
  }

  WeightColumn column(AgentId i, const DirectedGraph& g) const {
    return cfg_.weights == WeightRule::kRandomized ? generate_weight_column(i, g, k_, cfg_.params, cfg_.seed)
                                                   : out_degree_column(i, g, k_);
  }

  // Advances from k to k+1. Returns A(k).
  WeightMatrix step(std::vector<LoggedMessage>* log = nullptr) {
    const int m = agents();
    const int d = static_cast<int>(agents_.front().x.size());
    const DirectedGraph g = cfg_.schedule.graph_at(k_);

    std::vector<WeightColumn> cols;
    cols.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) cols.push_back(column(i, g));

    // inbox[l][j]: what l received from j at this iteration
    std::vector<std::vector<std::optional<detail::Inbound>>> inbox(
        static_cast<std::size_t>(m), std::vector<std::optional<detail::Inbound>>(static_cast<std::size_t>(m)));
    const auto kk = static_cast<std::uint32_t>(k_);
    for (int i = 0; i < m; ++i) {
      const auto& a = agents_[static_cast<std::size_t>(i)];
      for (const auto& [l, weight] : cols[static_cast<std::size_t>(i)].entries) {
        if (l == i) continue;
        const auto si = static_cast<std::uint32_t>(i);
        const auto sl = static_cast<std::uint32_t>(l);
        Vector wy = weight * a.y;
        Vector ws = weight * a.s;
        auto py = channel_.transmit({si, sl, kk, PayloadKind::kY, detail::to_std(wy)}, log);
        auto ps = channel_.transmit({si, sl, kk, PayloadKind::kS, detail::to_std(ws)}, log);
        auto pw = channel_.transmit({si, sl, kk, PayloadKind::kW, {weight * a.w}}, log);
        inbox[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] =
            detail::Inbound{detail::from_std(py.data), detail::from_std(ps.data), pw.data.front()};
      }
    }

    std::vector<AgentState> next(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      const auto& self = agents_[static_cast<std::size_t>(i)];
      const double a_ii = cols[static_cast<std::size_t>(i)].diagonal();
      Vector y = Vector::Zero(d), s = Vector::Zero(d);
      double w = 0.0;
      // canonical summation order: by sender id, self in its own slot
      for (int j = 0; j < m; ++j) {
        if (j == i) {
          Vector sy = a_ii * self.y;
          Vector ss = a_ii * self.s;
          y += sy - cfg_.eta * ss;
          s += ss;
          w += a_ii * self.w;
        } else if (const auto& in = inbox[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
          y += in->y - cfg_.eta * in->s;
          s += in->s;
          w += in->w;
        }
      }
      auto& n = next[static_cast<std::size_t>(i)];
      n.y = std::move(y);
      n.s = std::move(s);
      n.w = w;
    }

    if (k_ == 0 && cfg_.reset_w_at_one)
      for (auto& n : next) n.w = 1.0;

    for (int i = 0; i < m; ++i) {
      auto& n = next[static_cast<std::size_t>(i)];
      if (std::abs(n.w) < 1e-12)
        throw DegenerateState("w_" + std::to_string(i) + "(" + std::to_string(k_ + 1) + ") is numerically zero");
      n.x = n.y / n.w;
      Vector g_new = cfg_.problem->gradient(i, n.x);
      n.s += g_new - agents_[static_cast<std::size_t>(i)].prev_grad;
      n.prev_grad = std::move(g_new);
    }
    agents_ = std::move(next);
    ++k_;
    return assemble_weight_matrix(cols, m);
  }

 private:
  RunConfig cfg_;
  std::vector<AgentState> agents_;
  Channel channel_;
  std::int64_t k_ = 0;
};

namespace detail {

inline void record_states(Trajectory& t, const std::vector<AgentState>& st, bool full) {
  std::vector<Vector> xs, ys, ss, gs;
  Vector w(static_cast<Eigen::Index>(st.size()));
  for (std::size_t i = 0; i < st.size(); ++i) {
    xs.push_back(st[i].x);
    if (full) {
      ys.push_back(st[i].y);
      ss.push_back(st[i].s);
      gs.push_back(st[i].prev_grad);
      w(static_cast<Eigen::Index>(i)) = st[i].w;
    }
  }
  t.x.push_back(stack_rows(xs));
  if (full) {
    t.y.push_back(stack_rows(ys));
    t.s.push_back(stack_rows(ss));
    t.grad.push_back(stack_rows(gs));
    t.w.push_back(w);
  }
}

}  // namespace detail

/// Runs to the horizon or until the relative residual reaches cfg.stop.
inline Trajectory run(const RunConfig& cfg) {
  if (cfg.horizon < 0) throw ParameterError("horizon must be non-negative");
  Simulation sim(cfg);
  Trajectory t;
  detail::record_states(t, sim.states(), cfg.record_full);
  const Matrix x0 = t.x.front();
  t.residual.push_back(relative_residual(x0, x0, cfg.x_star));
  auto reached = [&] { return cfg.stop && t.residual.back() <= *cfg.stop; };

  while (sim.k() < cfg.horizon && !reached()) {
    const auto t0 = std::chrono::steady_clock::now();
    WeightMatrix a = sim.step(cfg.capture ? &t.messages : nullptr);
    t.busy_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cfg.record_full) t.a.push_back(std::move(a));
    detail::record_states(t, sim.states(), cfg.record_full);
    t.residual.push_back(relative_residual(t.x.back(), x0, cfg.x_star));
  }
  t.iterations = sim.k();
  return t;
}

}  // namespace ppdo
