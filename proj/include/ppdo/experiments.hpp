#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ppdo/adversary.hpp"
#include "ppdo/baselines.hpp"
#include "ppdo/engine.hpp"
#include "ppdo/graph_io.hpp"
#include "ppdo/objective.hpp"
#include "ppdo/theory.hpp"

namespace ppdo {

enum class Algorithm { kAlgorithm1, kPushDIGing, kSubgradientPush, kABPushPull };

inline std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kAlgorithm1: return "algorithm1";
    case Algorithm::kPushDIGing: return "push_diging";
    case Algorithm::kSubgradientPush: return "subgradient_push";
    case Algorithm::kABPushPull: return "ab_pushpull";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string s) {
  std::replace(s.begin(), s.end(), '-', '_');
  if (s == "algorithm1" || s == "private") return Algorithm::kAlgorithm1;
  if (s == "push_diging") return Algorithm::kPushDIGing;
  if (s == "subgradient_push") return Algorithm::kSubgradientPush;
  if (s == "ab_pushpull" || s == "ab_push_pull" || s == "push_pull") return Algorithm::kABPushPull;
  throw ConfigError("unknown algorithm '" + s + "'");
}

struct ProblemConfig {
  int agents = 6;
  int s = 3;
  int d = 2;
  double omega = 0.01;
  std::uint64_t instance_seed = 1;
};

struct PrivacyConfig {
  std::string scenario = "b";  // a, b, c or addopt
  int K = 20;
  int samples = 1000;
  double box = 10.0;
  int target = 1;     // 1-based
  int adversary = 2;  // 1-based
  int assumed_out_degree = 2;
};

struct TheoryConfig {
  double alpha = 1.0;
  double beta = 1.0;
  bool static_union = false;  // certify the base graph of a random schedule
  std::int64_t certify_horizon = 2000;
  int max_window = 8;
};

struct ExperimentConfig {
  ProblemConfig problem;
  std::string graph = "fig5b";
  double probability = 0.9;
  std::vector<Algorithm> algorithms{Algorithm::kAlgorithm1};
  std::map<Algorithm, double> eta{{Algorithm::kAlgorithm1, 1.1e-3},
                                  {Algorithm::kPushDIGing, 1.2e-3},
                                  {Algorithm::kABPushPull, 1.2e-3},
                                  {Algorithm::kSubgradientPush, 1.1e-3}};
  double subgradient_offset = 3000.0;
  double c0 = 0.05;
  int trials = 100;
  std::optional<std::int64_t> horizon;  // 2000 for converge, 10000 cap for stoptime
  std::vector<double> stop{0.01, 0.001, 0.0005};
  std::uint64_t seed = 1;
  bool encryption = true;
  bool capture = false;
  std::string out = "out";
  PrivacyConfig privacy;
  TheoryConfig theory;

  void validate() const {
    if (trials < 1) throw ConfigError("trials: must be at least 1");
    if (horizon && *horizon < 0) throw ConfigError("horizon: must be non-negative");
    if (problem.agents < 1 || problem.s < 1 || problem.d < 1) throw ConfigError("problem: m, s, d must be >= 1");
    if (!(problem.omega > 0.0)) throw ConfigError("problem.omega: must be positive");
    if (!(probability > 0.0 && probability <= 1.0)) throw ConfigError("schedule.probability: must lie in (0, 1]");
    if (!(c0 > 0.0 && c0 < 1.0 / problem.agents)) throw ConfigError("c0: must lie in (0, 1/m)");
    for (const auto& [a, e] : eta)
      if (!(e > 0.0)) throw ConfigError("eta." + algorithm_name(a) + ": must be positive");
    for (double s : stop)
      if (!(s >= 0.0)) throw ConfigError("stop: criteria must be non-negative");
    if (algorithms.empty()) throw ConfigError("algorithms: list is empty");
  }
};

namespace detail {

// Reads key `k` of object `j` into `out` when present, naming the full key path
// on type errors.
template <class T>
void read(const nlohmann::json& j, const std::string& path, const char* k, T& out) {
  if (!j.contains(k)) return;
  try {
    out = j.at(k).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + k + ": " + e.what());
  }
}

}  // namespace detail

/// Config file layout (JSON, every key optional):
///   {"problem": {"agents", "s", "d", "omega", "instance_seed"},
///    "schedule": {"graph": "fig5b" | "fig5a" | "privacy_a" | "privacy_c" | "addopt" | <path>, "probability"},
///    "algorithms": [...], "eta": {"algorithm1": 1.1e-3, ...}, "subgradient_offset",
///    "c0", "trials", "horizon", "stop": [...], "seed", "encryption", "capture", "out",
///    "privacy": {"scenario", "K", "samples", "box", "target", "adversary", "assumed_out_degree"},
///    "theory": {"alpha", "beta", "static_union", "certify_horizon", "max_window"}}
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config root must be an object");
  static const std::set<std::string> known{"problem", "schedule", "algorithms", "eta", "subgradient_offset",
                                           "c0", "trials", "horizon", "stop", "seed", "encryption",
                                           "capture", "out", "privacy", "theory"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("unknown key '" + k + "'");

  ExperimentConfig c;
  if (j.contains("problem")) {
    const auto& p = j.at("problem");
    detail::read(p, "problem.", "agents", c.problem.agents);
    detail::read(p, "problem.", "s", c.problem.s);
    detail::read(p, "problem.", "d", c.problem.d);
    detail::read(p, "problem.", "omega", c.problem.omega);
    detail::read(p, "problem.", "instance_seed", c.problem.instance_seed);
  }
  if (j.contains("schedule")) {
    const auto& s = j.at("schedule");
    detail::read(s, "schedule.", "graph", c.graph);
    detail::read(s, "schedule.", "probability", c.probability);
  }
  if (j.contains("algorithms")) {
    std::vector<std::string> names;
    detail::read(j, "", "algorithms", names);
    c.algorithms.clear();
    for (const auto& n : names) c.algorithms.push_back(parse_algorithm(n));
  }
  if (j.contains("eta")) {
    const auto& e = j.at("eta");
    if (e.is_number()) {
      for (auto& [a, v] : c.eta) v = e.get<double>();
    } else if (e.is_object()) {
      for (const auto& [k, v] : e.items()) {
        if (!v.is_number()) throw ConfigError("eta." + k + ": must be a number");
        c.eta[parse_algorithm(k)] = v.get<double>();
      }
    } else {
      throw ConfigError("eta: must be a number or an object keyed by algorithm");
    }
  }
  detail::read(j, "", "subgradient_offset", c.subgradient_offset);
  detail::read(j, "", "c0", c.c0);
  detail::read(j, "", "trials", c.trials);
  if (j.contains("horizon")) {
    std::int64_t h = 0;
    detail::read(j, "", "horizon", h);
    c.horizon = h;
  }
  detail::read(j, "", "stop", c.stop);
  detail::read(j, "", "seed", c.seed);
  detail::read(j, "", "encryption", c.encryption);
  detail::read(j, "", "capture", c.capture);
  detail::read(j, "", "out", c.out);
  if (j.contains("privacy")) {
    const auto& p = j.at("privacy");
    detail::read(p, "privacy.", "scenario", c.privacy.scenario);
    detail::read(p, "privacy.", "K", c.privacy.K);
    detail::read(p, "privacy.", "samples", c.privacy.samples);
    detail::read(p, "privacy.", "box", c.privacy.box);
    detail::read(p, "privacy.", "target", c.privacy.target);
    detail::read(p, "privacy.", "adversary", c.privacy.adversary);
    detail::read(p, "privacy.", "assumed_out_degree", c.privacy.assumed_out_degree);
  }
  if (j.contains("theory")) {
    const auto& t = j.at("theory");
    detail::read(t, "theory.", "alpha", c.theory.alpha);
    detail::read(t, "theory.", "beta", c.theory.beta);
    detail::read(t, "theory.", "static_union", c.theory.static_union);
    detail::read(t, "theory.", "certify_horizon", c.theory.certify_horizon);
    detail::read(t, "theory.", "max_window", c.theory.max_window);
  }
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

// Per-trial seed; trial 0 keeps the master seed so single runs are easy to replay.
inline std::uint64_t trial_seed(std::uint64_t master, int trial) {
  return trial == 0 ? master : mix_key(master, StreamTag::kTrial, {static_cast<std::uint64_t>(trial)});
}

// Same schedule with its activation draws re-keyed; fixed schedules unchanged.
inline GraphSchedule reseed(const GraphSchedule& s, std::uint64_t seed) {
  if (const auto* r = std::get_if<RandomActivationSchedule>(&s.variant()))
    return GraphSchedule::random_activation(r->base, r->probability, seed);
  return s;
}

/// Runs fn(trial) for trial = 0..n-1 on up to `threads` workers; results are
/// stored by trial index so the output order never depends on scheduling.
template <class T>
std::vector<T> run_trials(int n, const std::function<T(int)>& fn, unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(n, 1)));
  std::vector<std::optional<T>> out(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        out[static_cast<std::size_t>(i)] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<T> res;
  res.reserve(out.size());
  for (auto& o : out) res.push_back(std::move(*o));
  return res;
}

struct Setup {
  SensorFusionInstance instance;
  std::shared_ptr<const GlobalProblem> problem;
  Vector x_star;
  GraphSchedule schedule = GraphSchedule::fixed(DirectedGraph(1));
};

inline Setup make_setup(const ExperimentConfig& c) {
  Setup s;
  s.instance = generate_sensor_fusion(c.problem.agents, c.problem.s, c.problem.d, c.problem.omega,
                                      c.problem.instance_seed);
  s.problem = std::make_shared<GlobalProblem>(make_problem(s.instance));
  s.x_star = optimal_solution(s.instance);
  try {
    s.schedule = resolve_schedule(c.graph, c.probability, c.seed);
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("schedule: ") + e.what());
  }
  if (s.schedule.agents() != c.problem.agents)
    throw ConfigError("schedule.graph has " + std::to_string(s.schedule.agents()) + " agents but problem.agents is " +
                      std::to_string(c.problem.agents));
  return s;
}

inline RunConfig run_config(const ExperimentConfig& c, const Setup& s, Algorithm a, int trial) {
  RunConfig rc;
  const std::uint64_t seed = trial_seed(c.seed, trial);
  rc.schedule = reseed(s.schedule, seed);
  rc.problem = s.problem;
  rc.x_star = s.x_star;
  rc.eta = c.eta.at(a);
  rc.params.c0 = c.c0;
  rc.horizon = c.horizon.value_or(2000);
  rc.seed = seed;
  rc.encryption = c.encryption;
  rc.capture = c.capture;
  return rc;
}

inline Trajectory run_algorithm(const ExperimentConfig& c, const Setup& s, Algorithm a, int trial,
                                std::optional<double> stop = {}) {
  RunConfig rc = run_config(c, s, a, trial);
  rc.stop = stop;
  BaselineOptions opt;
  opt.subgradient_offset = c.subgradient_offset;
  switch (a) {
    case Algorithm::kAlgorithm1: return run(rc);
    case Algorithm::kPushDIGing: return run_baseline(Baseline::kPushDIGing, rc, opt);
    case Algorithm::kSubgradientPush: return run_baseline(Baseline::kSubgradientPush, rc, opt);
    case Algorithm::kABPushPull: return run_baseline(Baseline::kABPushPull, rc, opt);
  }
  throw ParameterError("unknown algorithm");
}

inline std::string fmt17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline std::ofstream open_out(const std::filesystem::path& p) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw Error("cannot write '" + p.string() + "'");
  return f;
}

struct ConvergeSeries {
  Algorithm algorithm;
  std::vector<double> mean, min, max;
  std::string csv;
};

struct ConvergeResult {
  std::vector<ConvergeSeries> series;
};

/// Mean relative residual per iteration over `trials` runs, one CSV per
/// algorithm with columns iteration,mean_residual,min_residual,max_residual.
inline ConvergeResult cmd_converge(const ExperimentConfig& c, unsigned threads = 0) {
  c.validate();
  const Setup s = make_setup(c);
  ConvergeResult res;
  for (Algorithm a : c.algorithms) {
    auto residuals = run_trials<std::vector<double>>(
        c.trials, [&](int t) { return run_algorithm(c, s, a, t).residual; }, threads);
    ConvergeSeries cs;
    cs.algorithm = a;
    const std::size_t n = residuals.front().size();
    for (std::size_t k = 0; k < n; ++k) {
      double sum = 0.0, lo = INFINITY, hi = -INFINITY;
      for (const auto& r : residuals) {
        sum += r[k];
        lo = std::min(lo, r[k]);
        hi = std::max(hi, r[k]);
      }
      cs.mean.push_back(sum / static_cast<double>(residuals.size()));
      cs.min.push_back(lo);
      cs.max.push_back(hi);
    }
    const auto path = std::filesystem::path(c.out) / ("residual_" + algorithm_name(a) + ".csv");
    auto f = open_out(path);
    f << "iteration,mean_residual,min_residual,max_residual\n";
    for (std::size_t k = 0; k < n; ++k)
      f << k << ',' << fmt17(cs.mean[k]) << ',' << fmt17(cs.min[k]) << ',' << fmt17(cs.max[k]) << '\n';
    cs.csv = path.string();
    res.series.push_back(std::move(cs));
  }
  return res;
}

struct StopRow {
  double criterion = 0.0;
  bool encryption = false;
  double mean_iterations = 0.0;
  std::int64_t min_iterations = 0, max_iterations = 0;
  int reached = 0;  // trials that met the criterion before the cap
  double mean_seconds = 0.0;
  std::vector<std::int64_t> iterations;  // per trial
};

struct StopResult {
  std::vector<StopRow> rows;
};

/// Iterations and iterate+crypto wall time to reach each stop criterion, with
/// encryption on and off. Iteration counts go to stoptime.csv (deterministic);
/// timings go to timing.csv.
inline StopResult cmd_stoptime(const ExperimentConfig& c, unsigned threads = 0) {
  c.validate();
  if (c.stop.empty()) throw ConfigError("stop: at least one criterion is required");
  const Setup s = make_setup(c);
  const Algorithm a = c.algorithms.front();
  const std::int64_t cap = c.horizon.value_or(10000);
  StopResult res;
  for (double crit : c.stop) {
    for (bool enc : {true, false}) {
      ExperimentConfig cc = c;
      cc.encryption = enc;
      cc.horizon = cap;
      auto runs = run_trials<std::pair<std::int64_t, double>>(
          c.trials,
          [&](int t) {
            const Trajectory tr = run_algorithm(cc, s, a, t, crit);
            return std::make_pair(tr.iterations, tr.busy_seconds);
          },
          threads);
      StopRow row;
      row.criterion = crit;
      row.encryption = enc;
      row.min_iterations = runs.front().first;
      row.max_iterations = runs.front().first;
      double it = 0.0, sec = 0.0;
      for (const auto& [n, t] : runs) {
        row.iterations.push_back(n);
        it += static_cast<double>(n);
        sec += t;
        row.min_iterations = std::min(row.min_iterations, n);
        row.max_iterations = std::max(row.max_iterations, n);
        if (n < cap) ++row.reached;
      }
      row.mean_iterations = it / c.trials;
      row.mean_seconds = sec / c.trials;
      res.rows.push_back(row);
    }
  }
  auto f = open_out(std::filesystem::path(c.out) / "stoptime.csv");
  f << "criterion,encryption,mean_iterations,min_iterations,max_iterations,reached\n";
  for (const auto& r : res.rows)
    f << fmt17(r.criterion) << ',' << (r.encryption ? "on" : "off") << ',' << fmt17(r.mean_iterations) << ','
      << r.min_iterations << ',' << r.max_iterations << ',' << r.reached << '\n';
  auto t = open_out(std::filesystem::path(c.out) / "timing.csv");
  t << "criterion,encryption,mean_seconds,seconds_per_iteration\n";
  for (const auto& r : res.rows)
    t << fmt17(r.criterion) << ',' << (r.encryption ? "on" : "off") << ',' << fmt17(r.mean_seconds) << ','
      << fmt17(r.mean_iterations > 0 ? r.mean_seconds / r.mean_iterations : 0.0) << '\n';
  return res;
}

struct PrivacyResult {
  InferenceReport report;
  Matrix truth;  // true gradients of the target, rows aligned with the report
  std::optional<SampleStats> samples;
  EavesdropperReport eavesdropper;
  double recovery_error = 0.0;  // relative Frobenius error of the particular solution
};

// Gradients of agent i at k = from .. from+K-1 from a full record.
inline Matrix true_gradients(const Trajectory& t, int agent, int from, int K) {
  Matrix g(K, t.grad.front().cols());
  for (int k = 0; k < K; ++k) g.row(k) = t.grad.at(static_cast<std::size_t>(from + k)).row(agent);
  return g;
}

/// One captured run on the scenario topology, then the adversary's inference,
/// sampling of the solution set and the eavesdropper scan. Writes report.txt,
/// distances.csv, gradients.csv and hexdump.txt.
inline PrivacyResult cmd_privacy(const ExperimentConfig& c) {
  c.validate();
  if (!c.capture) throw ConfigError("capture: privacy experiments need capture on");
  const auto& pc = c.privacy;
  if (pc.K < 1) throw ConfigError("privacy.K: must be at least 1");
  const Setup s = make_setup(c);
  const int target = pc.target - 1, adversary = pc.adversary - 1;
  if (target < 0 || target >= c.problem.agents || adversary < 0 || adversary >= c.problem.agents)
    throw ConfigError("privacy.target/adversary: out of range");

  const bool fixed_weight = pc.scenario == "addopt";
  const Algorithm a = fixed_weight ? c.algorithms.front() : Algorithm::kAlgorithm1;
  if (fixed_weight && a != Algorithm::kPushDIGing && a != Algorithm::kAlgorithm1)
    throw ConfigError("algorithms: the fixed-weight attack targets push_diging (or algorithm1 for contrast)");
  RunConfig rc = run_config(c, s, a, 0);
  rc.horizon = pc.K + 1;
  rc.capture = true;
  rc.record_full = true;
  const Trajectory t = a == Algorithm::kPushDIGing ? run_baseline(Baseline::kPushDIGing, rc) : run(rc);

  const AdversaryView view = capture_view(t.messages, adversary, target, rc.schedule, pc.K + 1, rc.eta);
  PrivacyResult res;
  if (pc.scenario == "a") res.report = infer_scenario_a(view, pc.K);
  else if (pc.scenario == "b") res.report = infer_states_scenario_b(view, pc.K);
  else if (pc.scenario == "c") res.report = infer_scenario_c(view, pc.K);
  else if (fixed_weight) res.report = attack_fixed_weight_baseline(view, pc.K, pc.assumed_out_degree);
  else throw ConfigError("privacy.scenario: expected a, b, c or addopt");

  res.truth = true_gradients(t, target, res.report.first_k, res.report.horizon);
  res.recovery_error = (res.report.gradients() - res.truth).norm() / res.truth.norm();
  if (res.report.dof > 0 && !fixed_weight)
    res.samples = sample_gradient_solutions(res.report, pc.samples, pc.box, res.truth, c.seed);

  const auto dir = std::filesystem::path(c.out);
  {
    auto f = open_out(dir / "report.txt");
    write_report(f, res.report, res.truth);
    f << "recovery_error " << fmt17(res.recovery_error) << "\n";
    if (res.samples)
      f << "samples " << res.samples->distances.size() << "\nbox " << fmt17(pc.box) << "\ndistance_min "
        << fmt17(res.samples->min) << "\ndistance_max " << fmt17(res.samples->max) << "\ndistance_mean "
        << fmt17(res.samples->mean) << "\ndistance_variance " << fmt17(res.samples->variance) << "\n";
  }
  if (res.samples) {
    auto f = open_out(dir / "distances.csv");
    f << "sample,distance\n";
    for (std::size_t i = 0; i < res.samples->distances.size(); ++i)
      f << i << ',' << fmt17(res.samples->distances[i]) << '\n';
    auto g = open_out(dir / "gradients.csv");
    g << "k,component,true,sample_mean,sample_variance\n";
    const auto& sm = res.samples->samples;
    for (int k = 0; k < res.report.horizon; ++k)
      for (int d = 0; d < res.report.dimension; ++d) {
        double mean = 0.0, var = 0.0;
        for (const auto& m : sm) mean += m(k, d);
        mean /= static_cast<double>(sm.size());
        for (const auto& m : sm) var += (m(k, d) - mean) * (m(k, d) - mean);
        var /= static_cast<double>(sm.size());
        g << (k + res.report.first_k) << ',' << d << ',' << fmt17(res.truth(k, d)) << ',' << fmt17(mean) << ','
          << fmt17(var) << '\n';
      }
  }
  if (c.encryption) {
    res.eavesdropper = eavesdropper_report(t.messages);
    auto f = open_out(dir / "hexdump.txt");
    f << "messages " << res.eavesdropper.messages << "\nplaintext_substring_hits " << res.eavesdropper.substring_hits
      << "\nrepeated_ciphertexts " << res.eavesdropper.repeated_ciphertexts << "\n";
    for (const auto& line : res.eavesdropper.hex_lines) f << line << "\n";
  }
  return res;
}

struct TheoryResult {
  ConnectivityCertificate connectivity;
  std::optional<TheoryConstants> constants;
  std::optional<Certificate> certificate;
  std::string path;
};

/// Certifies the schedule, evaluates every constant and writes
/// certificate.txt. An uncertifiable schedule yields "certificate none".
inline TheoryResult cmd_theory(const ExperimentConfig& c) {
  c.validate();
  const Setup s = make_setup(c);
  GraphSchedule sched = s.schedule;
  if (c.theory.static_union)
    if (const auto* r = std::get_if<RandomActivationSchedule>(&sched.variant())) sched = GraphSchedule::fixed(r->base);
  TheoryResult res;
  res.connectivity = certify_uniform_connectivity(sched, c.theory.certify_horizon, c.theory.max_window);
  const auto path = std::filesystem::path(c.out) / "certificate.txt";
  res.path = path.string();
  auto f = open_out(path);
  f << "schedule " << c.graph << (c.theory.static_union ? " (static union)" : "") << "\n";
  f << "connectivity_horizon " << res.connectivity.horizon << "\nprobabilistic " << res.connectivity.probabilistic
    << "\n";
  if (!res.connectivity.b_tilde) {
    f << "certificate none\n";
    return res;
  }
  f << "B_tilde " << *res.connectivity.b_tilde << "\n";
  res.constants = make_constants(c.c0, c.problem.agents, *res.connectivity.b(), *s.problem, c.theory.alpha,
                                 c.theory.beta);
  res.certificate = convergence_certificate(*res.constants);
  write_constants(f, *res.constants);
  write_certificate(f, *res.certificate);
  const double empirical = c.eta.at(Algorithm::kAlgorithm1);
  PrecisionScope scope(res.constants->contraction.digits);
  f << "empirical_eta " << fmt17(empirical) << "\n";
  f << "empirical_over_bound " << sci(Real(empirical) / res.certificate->eta_upper) << "\n";
  return res;
}

}  // namespace ppdo
