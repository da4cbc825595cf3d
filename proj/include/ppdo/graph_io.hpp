#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ppdo/error.hpp"
#include "ppdo/graph.hpp"

namespace ppdo {

// Graph description files are JSON. Agents are numbered 1..m on disk and each
// edge is written [receiver, sender], i.e. [i, j] means "i receives from j".
//
//   {"agents": 6,
//    "schedule": {"type": "random_activation", "probability": 0.9, "seed": 1},
//    "edges": [[2, 1], [3, 2], ...]}
//
//   {"agents": 3,
//    "schedule": {"type": "scripted", "repeat": "hold_last"},
//    "graphs": [[[2, 1], [1, 3]], [[2, 1]]]}

namespace detail {

inline DirectedGraph graph_from_json(int m, const nlohmann::json& edges) {
  DirectedGraph g(m);
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2) throw ConfigError("edge must be a [receiver, sender] pair");
    g.add_edge(e[0].get<int>() - 1, e[1].get<int>() - 1);
  }
  return g;
}

inline nlohmann::json graph_to_json(const DirectedGraph& g) {
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({e.receiver + 1, e.sender + 1});
  return edges;
}

inline RepeatMode parse_repeat(const std::string& s) {
  if (s == "cycle") return RepeatMode::kCycle;
  if (s == "once") return RepeatMode::kOnce;
  if (s == "hold_last") return RepeatMode::kHoldLast;
  throw ConfigError("unknown repeat mode '" + s + "' (expected cycle, once, hold_last)");
}

inline std::string repeat_name(RepeatMode r) {
  switch (r) {
    case RepeatMode::kCycle: return "cycle";
    case RepeatMode::kOnce: return "once";
    case RepeatMode::kHoldLast: return "hold_last";
  }
  return "cycle";
}

}  // namespace detail

inline GraphSchedule schedule_from_json(const nlohmann::json& j) {
  try {
    const int m = j.at("agents").get<int>();
    const auto& sched = j.contains("schedule") ? j.at("schedule") : nlohmann::json::object();
    const std::string type = sched.value("type", std::string("static"));
    if (type == "static") return GraphSchedule::fixed(detail::graph_from_json(m, j.at("edges")));
    if (type == "random_activation")
      return GraphSchedule::random_activation(detail::graph_from_json(m, j.at("edges")),
                                              sched.at("probability").get<double>(),
                                              sched.value("seed", std::uint64_t{0}));
    if (type == "scripted") {
      std::vector<DirectedGraph> graphs;
      for (const auto& g : j.at("graphs")) graphs.push_back(detail::graph_from_json(m, g));
      return GraphSchedule::scripted(std::move(graphs),
                                     detail::parse_repeat(sched.value("repeat", std::string("cycle"))));
    }
    throw ConfigError("unknown schedule type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("graph description: ") + e.what());
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("graph description: ") + e.what());
  }
}

inline nlohmann::json schedule_to_json(const GraphSchedule& s) {
  nlohmann::json j;
  j["agents"] = s.agents();
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, StaticSchedule>) {
          j["schedule"] = {{"type", "static"}};
          j["edges"] = detail::graph_to_json(v.graph);
        } else if constexpr (std::is_same_v<T, ScriptedSchedule>) {
          j["schedule"] = {{"type", "scripted"}, {"repeat", detail::repeat_name(v.repeat)}};
          auto gs = nlohmann::json::array();
          for (const auto& g : v.graphs) gs.push_back(detail::graph_to_json(g));
          j["graphs"] = gs;
        } else {
          j["schedule"] = {{"type", "random_activation"}, {"probability", v.probability}, {"seed", v.seed}};
          j["edges"] = detail::graph_to_json(v.base);
        }
      },
      s.variant());
  return j;
}

inline GraphSchedule load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open graph file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("graph file '" + path + "': " + e.what());
  }
  return schedule_from_json(j);
}

// Built-in topologies. Agent numbers in comments are 1-based.
namespace topologies {

// Six agents: ring 1->2->...->6->1 with chords 2->5, 4->1, 6->3.
inline DirectedGraph six_agent_base() {
  return DirectedGraph(6, {{1, 0}, {2, 1}, {3, 2}, {4, 3}, {5, 4}, {0, 5}, {4, 1}, {0, 3}, {2, 5}});
}

inline GraphSchedule six_agent_activation(double p = 0.9, std::uint64_t seed = 1) {
  return GraphSchedule::random_activation(six_agent_base(), p, seed);
}

// Three agents, agent 1 the target and agent 2 the adversary. From k >= 1 the
// adversary is agent 1's only neighbour (1 <-> 2, 2 <-> 3).
inline DirectedGraph privacy_core() { return DirectedGraph(3, {{1, 0}, {0, 1}, {2, 1}, {1, 2}}); }

// privacy_core plus the legitimate link 3 -> 1.
inline DirectedGraph privacy_with_legit() {
  auto g = privacy_core();
  g.add_edge(0, 2);
  return g;
}

// Legitimate neighbour only at k = 0.
inline GraphSchedule privacy_legit_first() {
  return GraphSchedule::scripted({privacy_with_legit(), privacy_core()}, RepeatMode::kHoldLast);
}

// Legitimate neighbour at k = 0 and k = 1.
inline GraphSchedule privacy_legit_first_two() {
  return GraphSchedule::scripted({privacy_with_legit(), privacy_with_legit(), privacy_core()},
                                 RepeatMode::kHoldLast);
}

// No legitimate neighbour at any k.
inline GraphSchedule privacy_isolated() { return GraphSchedule::fixed(privacy_core()); }

// Agent 1 hears only agent 2 but sends to 2 and 3.
inline GraphSchedule fixed_weight_attack() {
  return GraphSchedule::fixed(DirectedGraph(3, {{1, 0}, {0, 1}, {2, 0}, {2, 1}, {1, 2}}));
}

}  // namespace topologies

// Resolves a built-in name or falls back to a file path.
inline GraphSchedule resolve_schedule(const std::string& name_or_path, double p, std::uint64_t seed) {
  if (name_or_path == "fig5b" || name_or_path == "six_agent") return topologies::six_agent_activation(p, seed);
  if (name_or_path == "fig5a" || name_or_path == "privacy_b") return topologies::privacy_legit_first();
  if (name_or_path == "privacy_a") return topologies::privacy_legit_first_two();
  if (name_or_path == "privacy_c") return topologies::privacy_isolated();
  if (name_or_path == "addopt") return topologies::fixed_weight_attack();
  return load_schedule(name_or_path);
}

}  // namespace ppdo
