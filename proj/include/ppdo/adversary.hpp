#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ppdo/engine.hpp"
#include "ppdo/error.hpp"
#include "ppdo/graph.hpp"
#include "ppdo/rng.hpp"
#include "ppdo/secure_channel.hpp"

namespace ppdo {

// One weighted triple a * (y, s, w) on a single link at one iteration.
struct Triple {
  Vector y;
  Vector s;
  double w = 0.0;
};

/// What an honest-but-curious agent j knows about target i: the triples i sent
/// it, the triples it sent i (its own weights and states), the graph sequence
/// and the step size.
struct AdversaryView {
  AgentId adversary = 0;
  AgentId target = 0;
  int dimension = 0;
  double eta = 0.0;
  std::map<std::int64_t, Triple> received;  // J(k), from i to j
  std::map<std::int64_t, Triple> sent;      // O(k), from j to i
  std::vector<DirectedGraph> graphs;        // G(0..K)

  bool empty() const { return received.empty(); }
  const Triple* j(std::int64_t k) const {
    auto it = received.find(k);
    return it == received.end() ? nullptr : &it->second;
  }
  // Own message to i at k; zero when j did not send to i.
  Triple o(std::int64_t k) const {
    auto it = sent.find(k);
    if (it != sent.end()) return it->second;
    return {Vector::Zero(dimension), Vector::Zero(dimension), 0.0};
  }
};

enum class Scenario { kA, kB, kC, kFixedWeight };

inline std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kA: return "a";
    case Scenario::kB: return "b";
    case Scenario::kC: return "c";
    case Scenario::kFixedWeight: return "addopt";
  }
  return "?";
}

struct LinearSystem {
  Matrix a;
  Vector b;
  int gradient_unknowns = 0;  // the first columns are g(1..K) stacked
};

struct InferenceReport {
  Scenario scenario = Scenario::kB;
  int horizon = 0;
  int dimension = 0;
  int first_k = 1;  // gradients are indexed first_k .. first_k + horizon - 1

  std::map<std::string, std::vector<double>> recovered;  // e.g. "w" -> w_i(1..K)
  LinearSystem system;
  int rank = 0;
  int dof = 0;  // dimension of the gradient solution set
  Vector particular;  // minimum-norm solution, gradient block
  Matrix null_basis;  // gradient block of an orthonormal null-space basis
  bool identifiable = false;

  // Fixed-weight attack only.
  double consistency_residual = 0.0;
  bool consistent = true;
  int weight_unknowns = 0;

  // Gradient estimate per k (rows), from the particular solution.
  Matrix gradients() const {
    Matrix g(horizon, dimension);
    for (int k = 0; k < horizon; ++k) g.row(k) = particular.segment(k * dimension, dimension).transpose();
    return g;
  }
};

/// Extracts j's view of target i from a captured message log.
inline AdversaryView capture_view(const std::vector<LoggedMessage>& log, AgentId adversary, AgentId target,
                                  const GraphSchedule& schedule, std::int64_t horizon, double eta) {
  if (adversary == target) throw ParameterError("adversary and target must differ");
  AdversaryView v;
  v.adversary = adversary;
  v.target = target;
  v.eta = eta;
  for (std::int64_t k = 0; k <= horizon; ++k) v.graphs.push_back(schedule.graph_at(k));
  for (const auto& msg : log) {
    const auto& p = msg.plain;
    const auto k = static_cast<std::int64_t>(p.k);
    std::map<std::int64_t, Triple>* into = nullptr;
    if (static_cast<AgentId>(p.sender) == target && static_cast<AgentId>(p.receiver) == adversary)
      into = &v.received;
    else if (static_cast<AgentId>(p.sender) == adversary && static_cast<AgentId>(p.receiver) == target)
      into = &v.sent;
    if (!into) continue;
    auto& t = (*into)[k];
    const Vector data = Eigen::Map<const Vector>(p.data.data(), static_cast<Eigen::Index>(p.data.size()));
    switch (p.kind) {
      case PayloadKind::kY: t.y = data; v.dimension = static_cast<int>(data.size()); break;
      case PayloadKind::kS: t.s = data; break;
      case PayloadKind::kW: t.w = data(0); break;
    }
  }
  return v;
}

namespace detail {

inline void require_triples(const AdversaryView& v, std::int64_t from, std::int64_t to) {
  for (std::int64_t k = from; k <= to; ++k)
    if (!v.j(k))
      throw ScenarioMismatch("target did not send to the adversary at k = " + std::to_string(k));
}

// i's only in- and out-neighbour is j over [from, to].
inline void require_sole_neighbour(const AdversaryView& v, std::int64_t from, std::int64_t to) {
  for (std::int64_t k = from; k <= to; ++k) {
    const auto& g = v.graphs.at(static_cast<std::size_t>(k));
    const std::vector<AgentId> only{v.adversary};
    if (g.in_neighbors(v.target) != only || g.out_neighbors(v.target) != only)
      throw ScenarioMismatch("adversary is not the target's only neighbour at k = " + std::to_string(k));
  }
}

// Fills rank, dof, minimum-norm solution and null-space gradient block.
inline void solve(InferenceReport& r) {
  const auto& sys = r.system;
  Eigen::JacobiSVD<Matrix> svd(sys.a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double tol = sv.size() > 0 ? 1e-9 * sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  r.rank = rank;

  const Matrix& u = svd.matrixU();
  const Matrix& vv = svd.matrixV();
  Vector x = Vector::Zero(sys.a.cols());
  for (int i = 0; i < rank; ++i) x += (u.col(i).dot(sys.b) / sv(i)) * vv.col(i);

  const int n = static_cast<int>(sys.a.cols());
  const int g = sys.gradient_unknowns;
  Matrix null_g = vv.block(0, rank, g, n - rank);
  r.particular = x.head(g);

  // The gradient solution set is particular + span(null_g); orthonormalize it.
  if (null_g.cols() > 0) {
    Eigen::JacobiSVD<Matrix> ns(null_g, Eigen::ComputeThinU);
    const Vector& nsv = ns.singularValues();
    int keep = 0;
    for (Eigen::Index i = 0; i < nsv.size(); ++i)
      if (nsv(i) > 1e-9 * std::max(1.0, nsv(0))) ++keep;
    r.null_basis = ns.matrixU().leftCols(keep);
    // project the particular solution onto the complement, keeping it minimal
    r.particular -= r.null_basis * (r.null_basis.transpose() * r.particular);
  } else {
    r.null_basis = Matrix(g, 0);
  }
  r.dof = static_cast<int>(r.null_basis.cols());
  r.identifiable = r.dof == 0;
}

inline void put(std::map<std::string, std::vector<double>>& m, const std::string& key, double v) {
  m[key].push_back(v);
}

}  // namespace detail

/// Worst case with a legitimate neighbour only at k = 0: i's only neighbour is
/// j from k = 1 on. w_i(1) = 1 and w_i(k+1) = w_i(k) - J_w(k) + O_w(k) give
/// every w_i(k), hence a_ji(k), y_i(k) and s_i(k). The s-update then yields
///   g(k+1) - g(k) = s_i(k+1) - s_i(k) + J_s(k) - O_s(k),   k = 1..K-1
/// which is (K-1)d equations in Kd unknowns.
inline InferenceReport infer_states_scenario_b(const AdversaryView& v, int K) {
  if (K < 1) throw ParameterError("horizon K must be at least 1");
  if (v.empty()) throw ScenarioMismatch("empty view: the target never sent to the adversary");
  detail::require_sole_neighbour(v, 1, K);
  detail::require_triples(v, 1, K);
  const int d = v.dimension;

  InferenceReport r;
  r.scenario = Scenario::kB;
  r.horizon = K;
  r.dimension = d;

  std::vector<double> w(static_cast<std::size_t>(K + 1));
  std::vector<Vector> s(static_cast<std::size_t>(K + 1));
  w[1] = 1.0;
  for (int k = 1; k <= K; ++k) {
    const Triple& jt = *v.j(k);
    const double a = jt.w / w[static_cast<std::size_t>(k)];
    s[static_cast<std::size_t>(k)] = jt.s / a;
    const Vector y = jt.y / a;
    detail::put(r.recovered, "w", w[static_cast<std::size_t>(k)]);
    detail::put(r.recovered, "a", a);
    for (int c = 0; c < d; ++c) {
      detail::put(r.recovered, "y" + std::to_string(c), y(c));
      detail::put(r.recovered, "s" + std::to_string(c), s[static_cast<std::size_t>(k)](c));
      detail::put(r.recovered, "x" + std::to_string(c), y(c) / w[static_cast<std::size_t>(k)]);
    }
    if (k < K) w[static_cast<std::size_t>(k + 1)] = w[static_cast<std::size_t>(k)] - jt.w + v.o(k).w;
  }

  LinearSystem sys;
  sys.gradient_unknowns = K * d;
  sys.a = Matrix::Zero((K - 1) * d, K * d);
  sys.b = Vector::Zero((K - 1) * d);
  for (int k = 1; k < K; ++k) {
    const int row = (k - 1) * d;
    const Vector rhs = s[static_cast<std::size_t>(k + 1)] - s[static_cast<std::size_t>(k)] + v.j(k)->s - v.o(k).s;
    for (int c = 0; c < d; ++c) {
      sys.a(row + c, (k - 1) * d + c) = -1.0;
      sys.a(row + c, k * d + c) = 1.0;
      sys.b(row + c) = rhs(c);
    }
  }
  r.system = std::move(sys);
  detail::solve(r);
  return r;
}

/// No legitimate neighbour at any k: with s_i(0) = g(0) the k = 0 s-update
/// collapses to g(1) = s_i(1) + J_s(0) - O_s(0), and the rest follows by
/// forward substitution, so the system is square and nonsingular.
inline InferenceReport infer_scenario_c(const AdversaryView& v, int K) {
  if (K < 1) throw ParameterError("horizon K must be at least 1");
  if (v.empty()) throw ScenarioMismatch("empty view: the target never sent to the adversary");
  detail::require_sole_neighbour(v, 0, K);
  detail::require_triples(v, 0, K);
  const int d = v.dimension;

  InferenceReport r;
  r.scenario = Scenario::kC;
  r.horizon = K;
  r.dimension = d;

  std::vector<double> w(static_cast<std::size_t>(K + 1));
  std::vector<Vector> s(static_cast<std::size_t>(K + 1));
  w[1] = 1.0;
  for (int k = 1; k <= K; ++k) {
    const Triple& jt = *v.j(k);
    s[static_cast<std::size_t>(k)] = jt.s * (w[static_cast<std::size_t>(k)] / jt.w);
    detail::put(r.recovered, "w", w[static_cast<std::size_t>(k)]);
    if (k < K) w[static_cast<std::size_t>(k + 1)] = w[static_cast<std::size_t>(k)] - jt.w + v.o(k).w;
  }

  LinearSystem sys;
  sys.gradient_unknowns = K * d;
  sys.a = Matrix::Zero(K * d, K * d);
  sys.b = Vector::Zero(K * d);
  const Vector first = s[1] + v.j(0)->s - v.o(0).s;
  for (int c = 0; c < d; ++c) {
    sys.a(c, c) = 1.0;
    sys.b(c) = first(c);
  }
  for (int k = 1; k < K; ++k) {
    const int row = k * d;
    const Vector rhs = s[static_cast<std::size_t>(k + 1)] - s[static_cast<std::size_t>(k)] + v.j(k)->s - v.o(k).s;
    for (int c = 0; c < d; ++c) {
      sys.a(row + c, (k - 1) * d + c) = -1.0;
      sys.a(row + c, k * d + c) = 1.0;
      sys.b(row + c) = rhs(c);
    }
  }
  r.system = std::move(sys);
  detail::solve(r);
  return r;
}

/// Legitimate neighbours at k = 0 and k = 1, j alone from k = 2. The w-reset
/// gives a_ji(1) = J_w(1), but w_i(2) now contains the unseen legitimate
/// contribution, so with w2 := w_i(2) unknown
///   w_i(k) = w2 + delta_k,   s_i(k) = (J_s(k)/J_w(k)) w_i(k),   y_i(k) likewise.
/// Unknowns: g(1..K), w2, and the legitimate y- and s-inflows at k = 1. The
/// y-updates for k >= 1 are added as constraints so the adversary uses
/// everything it has.
inline InferenceReport infer_scenario_a(const AdversaryView& v, int K) {
  if (K < 2) throw ParameterError("scenario (a) needs K >= 2");
  if (v.empty()) throw ScenarioMismatch("empty view: the target never sent to the adversary");
  detail::require_sole_neighbour(v, 2, K);
  detail::require_triples(v, 1, K);
  {
    const auto out1 = v.graphs.at(1).out_neighbors(v.target);
    if (out1 != std::vector<AgentId>{v.adversary})
      throw ScenarioMismatch("scenario (a) model needs the adversary as the only out-neighbour at k = 1");
  }
  const int d = v.dimension;
  const double eta = v.eta;

  InferenceReport r;
  r.scenario = Scenario::kA;
  r.horizon = K;
  r.dimension = d;

  // column layout: g(1..K) | w2 | Y_in | S_in
  const int col_w2 = K * d;
  const int col_y = col_w2 + 1;
  const int col_s = col_y + d;
  const int n = col_s + d;

  // y_i(k), s_i(k) as (coefficient on w2, constant) for k >= 2; exact for k = 1
  std::vector<double> delta(static_cast<std::size_t>(K + 1), 0.0);
  for (int k = 2; k < K; ++k)
    delta[static_cast<std::size_t>(k + 1)] = delta[static_cast<std::size_t>(k)] - v.j(k)->w + v.o(k).w;
  struct Affine {
    Vector coef, cst;
  };
  auto state = [&](int k, bool is_y) -> Affine {
    const Triple& jt = *v.j(k);
    const Vector ratio = (is_y ? jt.y : jt.s) / jt.w;
    if (k == 1) return {Vector::Zero(d), ratio};  // w_i(1) = 1
    return {ratio, ratio * delta[static_cast<std::size_t>(k)]};
  };

  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  auto add = [&](const Eigen::RowVectorXd& row, double b) {
    rows.push_back(row);
    rhs.push_back(b);
  };

  for (int k = 1; k < K; ++k) {
    const Triple& jt = *v.j(k);
    const Triple ot = v.o(k);
    const Affine s0 = state(k, false), s1 = state(k + 1, false);
    const Affine y0 = state(k, true), y1 = state(k + 1, true);
    // a_ii(k) x_i(k) = x_i(k) - J_x(k) since j is the only out-neighbour
    for (int c = 0; c < d; ++c) {
      // s_i(k+1) = s_i(k) - J_s(k) + O_s(k) [+ S_in at k = 1] + g(k+1) - g(k)
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
      row(col_w2) = s1.coef(c) - s0.coef(c);
      row((k - 1) * d + c) = 1.0;
      row(k * d + c) = -1.0;
      if (k == 1) row(col_s + c) = -1.0;
      add(row, s0.cst(c) - s1.cst(c) - jt.s(c) + ot.s(c));
      // y_i(k+1) = y_i(k) - J_y(k) - eta (s_i(k) - J_s(k)) + O_y(k) - eta O_s(k) [+ Y_in at k = 1]
      Eigen::RowVectorXd ry = Eigen::RowVectorXd::Zero(n);
      ry(col_w2) = y1.coef(c) - y0.coef(c) + eta * s0.coef(c);
      if (k == 1) ry(col_y + c) = -1.0;
      add(ry, y0.cst(c) - y1.cst(c) - jt.y(c) - eta * (s0.cst(c) - jt.s(c)) + ot.y(c) - eta * ot.s(c));
    }
  }

  LinearSystem sys;
  sys.gradient_unknowns = K * d;
  sys.a = Matrix(static_cast<Eigen::Index>(rows.size()), n);
  sys.b = Vector(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    sys.a.row(static_cast<Eigen::Index>(i)) = rows[i];
    sys.b(static_cast<Eigen::Index>(i)) = rhs[i];
  }
  r.system = std::move(sys);
  detail::solve(r);
  return r;
}

/// Attack on a fixed-weight protocol (out-degree weights 1/(d_out + 1),
/// w_i(0) = 1, no reset) where the adversary is i's only in-neighbour. The
/// known weight strips every triple; g(0) = s_i(0) and
///   g(k+1) = s_i(k+1) - a s_i(k) - O_s(k) + g(k).
/// The w-recursion w_i(k+1) = a w_i(k) + O_w(k) is checked as a consistency
/// test of the weight hypothesis.
inline InferenceReport attack_fixed_weight_baseline(const AdversaryView& v, int K, int assumed_out_degree,
                                                    double tolerance = 1e-8) {
  if (K < 0) throw ParameterError("horizon K must be non-negative");
  if (assumed_out_degree < 1) throw ParameterError("assumed out-degree must be positive");
  if (v.empty()) throw ScenarioMismatch("empty view: the target never sent to the adversary");
  detail::require_triples(v, 0, K);
  for (int k = 0; k <= K; ++k)
    for (AgentId l : v.graphs.at(static_cast<std::size_t>(k)).in_neighbors(v.target))
      if (l != v.adversary) throw ScenarioMismatch("target has an in-neighbour other than the adversary");
  const int d = v.dimension;
  const double a = 1.0 / static_cast<double>(assumed_out_degree + 1);

  InferenceReport r;
  r.scenario = Scenario::kFixedWeight;
  r.horizon = K + 1;
  r.dimension = d;
  r.first_k = 0;

  std::vector<Vector> s(static_cast<std::size_t>(K + 1));
  std::vector<double> w(static_cast<std::size_t>(K + 1));
  for (int k = 0; k <= K; ++k) {
    s[static_cast<std::size_t>(k)] = v.j(k)->s / a;
    w[static_cast<std::size_t>(k)] = v.j(k)->w / a;
    detail::put(r.recovered, "w", w[static_cast<std::size_t>(k)]);
  }

  double resid = std::abs(w[0] - 1.0);
  for (int k = 0; k < K; ++k)
    resid = std::max(resid, std::abs(w[static_cast<std::size_t>(k + 1)] - (a * w[static_cast<std::size_t>(k)] + v.o(k).w)));
  r.consistency_residual = resid;
  r.consistent = resid <= tolerance;

  Vector g(static_cast<Eigen::Index>((K + 1) * d));
  Vector cur = s[0];
  g.segment(0, d) = cur;
  for (int k = 0; k < K; ++k) {
    cur = s[static_cast<std::size_t>(k + 1)] - a * s[static_cast<std::size_t>(k)] - v.o(k).s + cur;
    g.segment((k + 1) * d, d) = cur;
  }
  r.particular = g;
  r.null_basis = Matrix(g.size(), 0);
  r.system.gradient_unknowns = static_cast<int>(g.size());
  r.rank = static_cast<int>(g.size());
  // A rejected weight hypothesis leaves one unknown weight per iteration.
  r.weight_unknowns = r.consistent ? 0 : K + 1;
  r.dof = r.weight_unknowns;
  r.identifiable = r.consistent;
  return r;
}

struct SampleStats {
  std::vector<Matrix> samples;  // K x d each
  std::vector<double> distances;
  double min = 0.0, max = 0.0, mean = 0.0, variance = 0.0;
};

/// sum_k ||g_est(k) - g(k)|| / ||g(k)||
inline double relative_distance(const Matrix& estimate, const Matrix& truth) {
  if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
    throw DimensionError("estimate and ground truth shapes differ");
  double sum = 0.0;
  for (Eigen::Index k = 0; k < truth.rows(); ++k) {
    const double den = truth.row(k).norm();
    if (!(den > 0.0)) throw DegenerateState("zero true gradient at row " + std::to_string(k));
    sum += (estimate.row(k) - truth.row(k)).norm() / den;
  }
  return sum;
}

/// Solutions of the gradient system: the minimum-norm solution, then the
/// minimum-norm solution plus each null basis vector, then random null-space
/// combinations with coefficients uniform on [-bound, bound].
inline SampleStats sample_gradient_solutions(const InferenceReport& r, int n, double bound, const Matrix& truth,
                                             std::uint64_t seed) {
  if (n < 1) throw ParameterError("sample count must be positive");
  if (!(bound >= 0.0)) throw ParameterError("sampling bound must be non-negative");
  KeyedRng rng(seed, StreamTag::kSampling, {static_cast<std::uint64_t>(r.dof)});
  const int K = r.horizon, d = r.dimension;
  auto shape = [&](const Vector& flat) {
    Matrix m(K, d);
    for (int k = 0; k < K; ++k) m.row(k) = flat.segment(k * d, d).transpose();
    return m;
  };

  SampleStats st;
  for (int i = 0; i < n; ++i) {
    Vector flat = r.particular;
    if (r.dof > 0) {
      if (i == 0) {
      } else if (i <= r.dof) {
        flat += r.null_basis.col(i - 1);
      } else {
        for (int c = 0; c < r.dof; ++c) flat += rng.uniform(-bound, bound) * r.null_basis.col(c);
      }
    }
    st.samples.push_back(shape(flat));
    st.distances.push_back(relative_distance(st.samples.back(), truth));
  }
  st.min = *std::min_element(st.distances.begin(), st.distances.end());
  st.max = *std::max_element(st.distances.begin(), st.distances.end());
  double sum = 0.0;
  for (double x : st.distances) sum += x;
  st.mean = sum / n;
  double var = 0.0;
  for (double x : st.distances) var += (x - st.mean) * (x - st.mean);
  st.variance = var / n;
  return st;
}

struct EavesdropperReport {
  std::size_t messages = 0;
  std::size_t substring_hits = 0;
  std::size_t repeated_ciphertexts = 0;
  std::size_t repeated_nonces = 0;
  std::vector<std::string> hex_lines;  // "plaintext | ciphertext" per message
};

/// Scans every envelope for 8-byte runs of its own plaintext body (and of the
/// raw payload values) and emits a side-by-side hex dump.
inline EavesdropperReport eavesdropper_report(const std::vector<LoggedMessage>& log, std::size_t dump_limit = 50) {
  EavesdropperReport rep;
  std::set<Bytes> ciphertexts;
  std::set<Bytes> nonces;
  std::vector<Bytes> wire;
  for (const auto& m : log) {
    if (!m.cipher) throw ParameterError("eavesdropper report needs an encrypted message log");
    wire.push_back(serialize_envelope(*m.cipher));
  }
  for (std::size_t idx = 0; idx < log.size(); ++idx) {
    const auto& m = log[idx];
    ++rep.messages;
    const Bytes body = encode_payload(m.plain);
    const auto* raw = reinterpret_cast<const std::uint8_t*>(m.plain.data.data());
    const std::span<const std::uint8_t> values(raw, m.plain.data.size() * sizeof(double));
    const auto& ct = m.cipher->ciphertext;
    if (shares_substring(values, ct) || shares_substring(body, ct))
      ++rep.substring_hits;
    if (!ciphertexts.insert(ct).second) ++rep.repeated_ciphertexts;
    if (!nonces.insert(Bytes(m.cipher->nonce.begin(), m.cipher->nonce.end())).second) ++rep.repeated_nonces;
    if (idx < dump_limit) {
      std::ostringstream os;
      os << "k=" << m.plain.k << ' ' << (m.plain.sender + 1) << "->" << (m.plain.receiver + 1) << ' '
         << kind_char(m.plain.kind) << " plain " << to_hex(values) << " | cipher " << to_hex(ct);
      rep.hex_lines.push_back(os.str());
    }
  }
  return rep;
}

inline void write_report(std::ostream& os, const InferenceReport& r, const std::optional<Matrix>& truth = {}) {
  os << "scenario " << scenario_name(r.scenario) << "\n";
  os << "horizon " << r.horizon << "\ndimension " << r.dimension << "\n";
  os << "equations " << r.system.a.rows() << "\nunknowns " << r.system.a.cols() << "\n";
  os << "rank " << r.rank << "\ndof " << r.dof << "\n";
  if (r.scenario == Scenario::kFixedWeight)
    os << "consistency_residual " << r.consistency_residual << "\nconsistent " << (r.consistent ? 1 : 0) << "\n";
  const Matrix g = r.gradients();
  os << "k,estimate" << (truth ? ",truth" : "") << "\n";
  for (int k = 0; k < r.horizon; ++k) {
    os << (k + r.first_k);
    for (int c = 0; c < r.dimension; ++c) os << ',' << g(k, c);
    if (truth)
      for (int c = 0; c < r.dimension; ++c) os << ',' << (*truth)(k, c);
    os << "\n";
  }
}

}  // namespace ppdo
