#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "ppdo/error.hpp"
#include "ppdo/rng.hpp"

namespace ppdo {

using AgentId = int;

// Directed edge (receiver, sender): the receiver can hear the sender.
struct Edge {
  AgentId receiver;
  AgentId sender;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed communication graph over agents 0..m-1.
///
/// Adjacency is stored per receiver (in-neighbour lists, kept sorted) because
/// every update in the algorithms is a sum over in-neighbours. Self-loops are
/// never stored; each agent's self weight is implicit.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(int agents) : in_(check_count(agents)) {}
  DirectedGraph(int agents, const std::vector<Edge>& edges) : DirectedGraph(agents) {
    for (const auto& e : edges) add_edge(e.receiver, e.sender);
  }

  int agents() const noexcept { return static_cast<int>(in_.size()); }

  void add_edge(AgentId receiver, AgentId sender) {
    check_agent(receiver);
    check_agent(sender);
    if (receiver == sender) throw ParameterError("self-loops are implicit and cannot be stored");
    auto& list = in_[static_cast<std::size_t>(receiver)];
    auto it = std::lower_bound(list.begin(), list.end(), sender);
    if (it == list.end() || *it != sender) list.insert(it, sender);
  }

  bool has_edge(AgentId receiver, AgentId sender) const {
    const auto& list = in_.at(static_cast<std::size_t>(receiver));
    return std::binary_search(list.begin(), list.end(), sender);
  }

  const std::vector<AgentId>& in_neighbors(AgentId i) const {
    return in_.at(static_cast<std::size_t>(i));
  }

  std::vector<AgentId> out_neighbors(AgentId j) const {
    std::vector<AgentId> out;
    for (AgentId i = 0; i < agents(); ++i)
      if (i != j && has_edge(i, j)) out.push_back(i);
    return out;
  }

  int out_degree(AgentId j) const { return static_cast<int>(out_neighbors(j).size()); }

  // Canonical order: by receiver, then sender.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (AgentId i = 0; i < agents(); ++i)
      for (AgentId j : in_[static_cast<std::size_t>(i)]) out.push_back({i, j});
    return out;
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& l : in_) n += l.size();
    return n;
  }

  DirectedGraph& merge(const DirectedGraph& other) {
    if (other.agents() != agents()) throw ParameterError("cannot merge graphs with different agent counts");
    for (const auto& e : other.edges()) add_edge(e.receiver, e.sender);
    return *this;
  }

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

 private:
  static std::size_t check_count(int agents) {
    if (agents < 1) throw ParameterError("agent count must be at least 1");
    return static_cast<std::size_t>(agents);
  }
  void check_agent(AgentId a) const {
    if (a < 0 || a >= agents())
      throw ParameterError("agent id " + std::to_string(a) + " outside [0, " + std::to_string(agents()) + ")");
  }

  std::vector<std::vector<AgentId>> in_;
};

namespace detail {

inline std::vector<bool> reach(const DirectedGraph& g, AgentId start, bool forward) {
  const int m = g.agents();
  std::vector<std::vector<AgentId>> adj(static_cast<std::size_t>(m));
  for (const auto& e : g.edges()) {
    if (forward)
      adj[static_cast<std::size_t>(e.sender)].push_back(e.receiver);
    else
      adj[static_cast<std::size_t>(e.receiver)].push_back(e.sender);
  }
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  std::vector<AgentId> stack{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!stack.empty()) {
    AgentId u = stack.back();
    stack.pop_back();
    for (AgentId v : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace detail

// Every agent reaches agent 0 and is reached from it.
inline bool is_strongly_connected(const DirectedGraph& g) {
  if (g.agents() <= 1) return true;
  auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
  return all(detail::reach(g, 0, true)) && all(detail::reach(g, 0, false));
}

enum class RepeatMode {
  kOnce,      // k past the end of the list is an error
  kCycle,     // k wraps around the list
  kHoldLast,  // the final graph persists forever
};

struct StaticSchedule {
  DirectedGraph graph;
};

struct ScriptedSchedule {
  std::vector<DirectedGraph> graphs;
  RepeatMode repeat = RepeatMode::kCycle;
};

// Each base edge is active at k independently with probability p. The draw is
// keyed by (seed, k, edge index) so graph_at is order-independent.
struct RandomActivationSchedule {
  DirectedGraph base;
  double probability = 1.0;
  std::uint64_t seed = 0;
};

/// Time-varying graph sequence G(0), G(1), ...; immutable once built.
class GraphSchedule {
 public:
  using Variant = std::variant<StaticSchedule, ScriptedSchedule, RandomActivationSchedule>;

  static GraphSchedule fixed(DirectedGraph g) { return GraphSchedule(StaticSchedule{std::move(g)}); }

  static GraphSchedule scripted(std::vector<DirectedGraph> graphs, RepeatMode repeat) {
    if (graphs.empty()) throw ParameterError("scripted schedule needs at least one graph");
    for (const auto& g : graphs)
      if (g.agents() != graphs.front().agents())
        throw ParameterError("scripted graphs must share the agent count");
    return GraphSchedule(ScriptedSchedule{std::move(graphs), repeat});
  }

  static GraphSchedule random_activation(DirectedGraph base, double p, std::uint64_t seed) {
    if (!(p > 0.0 && p <= 1.0)) throw ParameterError("activation probability must lie in (0, 1]");
    return GraphSchedule(RandomActivationSchedule{std::move(base), p, seed});
  }

  int agents() const {
    return std::visit(
        [](const auto& s) -> int {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, StaticSchedule>) return s.graph.agents();
          else if constexpr (std::is_same_v<T, ScriptedSchedule>) return s.graphs.front().agents();
          else return s.base.agents();
        },
        variant_);
  }

  bool is_random() const { return std::holds_alternative<RandomActivationSchedule>(variant_); }

  // Number of distinct graphs before the schedule runs out, if finite.
  std::optional<std::int64_t> length() const {
    if (const auto* s = std::get_if<ScriptedSchedule>(&variant_); s && s->repeat == RepeatMode::kOnce)
      return static_cast<std::int64_t>(s->graphs.size());
    return std::nullopt;
  }

  const Variant& variant() const noexcept { return variant_; }

  DirectedGraph graph_at(std::int64_t k) const {
    if (k < 0) throw ParameterError("iteration index must be non-negative");
    return std::visit(
        [k](const auto& s) -> DirectedGraph {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, StaticSchedule>) {
            return s.graph;
          } else if constexpr (std::is_same_v<T, ScriptedSchedule>) {
            const auto n = static_cast<std::int64_t>(s.graphs.size());
            if (k < n) return s.graphs[static_cast<std::size_t>(k)];
            switch (s.repeat) {
              case RepeatMode::kCycle: return s.graphs[static_cast<std::size_t>(k % n)];
              case RepeatMode::kHoldLast: return s.graphs.back();
              case RepeatMode::kOnce: break;
            }
            throw ScheduleExhausted("scripted schedule has " + std::to_string(n) + " graphs; k=" +
                                    std::to_string(k) + " requested");
          } else {
            DirectedGraph g(s.base.agents());
            const auto edges = s.base.edges();
            for (std::size_t e = 0; e < edges.size(); ++e) {
              const double u = unit_from_key(
                  mix_key(s.seed, StreamTag::kEdgeActivation, {static_cast<std::uint64_t>(k), e}));
              if (u < s.probability) g.add_edge(edges[e].receiver, edges[e].sender);
            }
            return g;
          }
        },
        variant_);
  }

 private:
  explicit GraphSchedule(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

struct ConnectivityCertificate {
  std::optional<int> b_tilde;  // smallest window length, if any
  std::int64_t horizon = 0;    // iterations actually inspected
  bool probabilistic = false;  // true for randomly activated schedules

  // B = 2*B_tilde - 1.
  std::optional<int> b() const {
    if (!b_tilde) return std::nullopt;
    return 2 * *b_tilde - 1;
  }
};

/// Smallest window length W <= max_window such that the union of
/// G(tW), ..., G(tW + W - 1) is strongly connected for every window that fits
/// inside the horizon. A finite Once schedule clamps the horizon to its length.
inline ConnectivityCertificate certify_uniform_connectivity(const GraphSchedule& schedule,
                                                            std::int64_t horizon, int max_window) {
  if (max_window < 1 || horizon < max_window)
    throw ParameterError("certification requires horizon >= max_window >= 1");
  if (auto len = schedule.length()) horizon = std::min(horizon, *len);

  ConnectivityCertificate cert;
  cert.horizon = horizon;
  cert.probabilistic = schedule.is_random();

  std::vector<DirectedGraph> graphs;
  graphs.reserve(static_cast<std::size_t>(horizon));
  for (std::int64_t k = 0; k < horizon; ++k) graphs.push_back(schedule.graph_at(k));

  for (int w = 1; w <= max_window && w <= horizon; ++w) {
    bool ok = true;
    for (std::int64_t t = 0; ok && t * w + w - 1 < horizon; ++t) {
      DirectedGraph u(schedule.agents());
      for (std::int64_t l = t * w; l < t * w + w; ++l) u.merge(graphs[static_cast<std::size_t>(l)]);
      ok = is_strongly_connected(u);
    }
    if (ok) {
      cert.b_tilde = w;
      return cert;
    }
  }
  return cert;
}

}  // namespace ppdo
