#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ppdo/error.hpp"
#include "ppdo/graph.hpp"
#include "ppdo/rng.hpp"

namespace ppdo {

struct MixingParams {
  double c0 = 0.05;         // lower bound on every nonzero weight for k >= 1
  double initial_range = 1.0;  // k = 0 out-weights are uniform on [-R, R]

  void validate(int agents) const {
    if (!(c0 > 0.0 && c0 < 1.0 / agents))
      throw ParameterError("c0 = " + std::to_string(c0) + " must lie in (0, 1/m) with m = " +
                           std::to_string(agents));
    if (!(initial_range > 0.0)) throw ParameterError("initial weight range R must be positive");
  }
};

/// Column i of A(k): the weights agent i attaches to what it sends at k.
struct WeightColumn {
  AgentId owner = 0;
  std::int64_t k = 0;
  std::map<AgentId, double> entries;  // receiver -> a_{li}(k), diagonal included

  double weight(AgentId receiver) const {
    auto it = entries.find(receiver);
    return it == entries.end() ? 0.0 : it->second;
  }
  double diagonal() const { return weight(owner); }

  double sum() const {
    double s = 0.0;
    for (const auto& [l, a] : entries) s += a;
    return s;
  }
};

using WeightMatrix = Eigen::MatrixXd;

/// Random weight column of agent `owner` at iteration k.
///
/// At k = 0 each out-weight is uniform on [-R, R] and may be negative or zero;
/// for k >= 1 it is uniform on [c0, (1 - c0)/d_out], so the out-weights sum to
/// at most 1 - c0 and the diagonal stays >= c0. The diagonal always closes the
/// column to exactly 1 by subtraction.
template <class Rng>
WeightColumn generate_weight_column(AgentId owner, std::span<const AgentId> out_neighbors, std::int64_t k,
                                    const MixingParams& params, int agents, Rng& rng) {
  params.validate(agents);
  if (std::find(out_neighbors.begin(), out_neighbors.end(), owner) != out_neighbors.end())
    throw ParameterError("an agent cannot be its own out-neighbour");

  WeightColumn col;
  col.owner = owner;
  col.k = k;
  const auto d_out = static_cast<double>(out_neighbors.size());
  double off = 0.0;
  for (AgentId l : out_neighbors) {
    const double a = k == 0 ? rng.uniform(-params.initial_range, params.initial_range)
                            : rng.uniform(params.c0, (1.0 - params.c0) / d_out);
    col.entries[l] = a;
    off += a;
  }
  col.entries[owner] = 1.0 - off;
  return col;
}

// Per-agent stream keyed by (master seed, agent, k).
inline KeyedRng weight_stream(std::uint64_t master_seed, AgentId agent, std::int64_t k) {
  return KeyedRng(master_seed, StreamTag::kWeights,
                  {static_cast<std::uint64_t>(agent), static_cast<std::uint64_t>(k)});
}

inline WeightColumn generate_weight_column(AgentId owner, const DirectedGraph& g, std::int64_t k,
                                           const MixingParams& params, std::uint64_t master_seed) {
  auto rng = weight_stream(master_seed, owner, k);
  const auto out = g.out_neighbors(owner);
  return generate_weight_column(owner, std::span<const AgentId>(out), k, params, g.agents(), rng);
}

// Out-degree weights 1/(d_out + 1) used by the fixed-weight baselines.
inline WeightColumn out_degree_column(AgentId owner, const DirectedGraph& g, std::int64_t k) {
  WeightColumn col;
  col.owner = owner;
  col.k = k;
  const auto out = g.out_neighbors(owner);
  const double a = 1.0 / static_cast<double>(out.size() + 1);
  for (AgentId l : out) col.entries[l] = a;
  col.entries[owner] = a;
  return col;
}

inline WeightMatrix assemble_weight_matrix(std::span<const WeightColumn> columns, int agents) {
  if (agents < 1) throw AssemblyError("agent count must be positive");
  if (columns.size() != static_cast<std::size_t>(agents))
    throw AssemblyError("expected " + std::to_string(agents) + " columns, got " + std::to_string(columns.size()));
  WeightMatrix a = WeightMatrix::Zero(agents, agents);
  std::vector<bool> seen(static_cast<std::size_t>(agents), false);
  for (const auto& col : columns) {
    if (col.k != columns.front().k) throw AssemblyError("columns come from different iterations");
    if (col.owner < 0 || col.owner >= agents) throw AssemblyError("column owner out of range");
    if (seen[static_cast<std::size_t>(col.owner)])
      throw AssemblyError("duplicate column for agent " + std::to_string(col.owner));
    seen[static_cast<std::size_t>(col.owner)] = true;
    for (const auto& [l, w] : col.entries) {
      if (l < 0 || l >= agents) throw AssemblyError("receiver out of range");
      a(l, col.owner) = w;
    }
  }
  return a;
}

// max_j |sum_i A_ij - 1|
inline double column_sum_deviation(const WeightMatrix& a) {
  return (a.colwise().sum().array() - 1.0).abs().maxCoeff();
}

inline double min_nonzero_entry(const WeightMatrix& a) {
  double lo = INFINITY;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0.0) lo = std::min(lo, a(i, j));
  return lo;
}

}  // namespace ppdo
