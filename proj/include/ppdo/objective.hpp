#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "ppdo/error.hpp"
#include "ppdo/rng.hpp"

namespace ppdo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Smooth local objective f_i. Implementations must be immutable so gradient
/// evaluation can run concurrently.
class LocalObjective {
 public:
  virtual ~LocalObjective() = default;
  virtual int dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual double lipschitz() const = 0;
  virtual double strong_convexity() const = 0;

 protected:
  void check_dim(const Vector& x) const {
    if (x.size() != dimension())
      throw DimensionError("expected a " + std::to_string(dimension()) + "-vector, got " +
                           std::to_string(x.size()));
  }
};

/// f(x) = ||z - M x||^2 + omega ||x||^2, the sensor-fusion loss of one sensor.
class QuadraticObjective final : public LocalObjective {
 public:
  QuadraticObjective(Matrix m, Vector z, double omega) : m_(std::move(m)), z_(std::move(z)), omega_(omega) {
    if (m_.rows() != z_.size()) throw DimensionError("measurement rows must match observation length");
    if (omega_ < 0.0) throw ParameterError("regularisation must be non-negative");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m_.transpose() * m_, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    lipschitz_ = 2.0 * (ev.maxCoeff() + omega_);
    mu_ = 2.0 * (std::max(ev.minCoeff(), 0.0) + omega_);
  }

  int dimension() const override { return static_cast<int>(m_.cols()); }

  double value(const Vector& x) const override {
    check_dim(x);
    return (z_ - m_ * x).squaredNorm() + omega_ * x.squaredNorm();
  }

  // 2 M^T (M x - z) + 2 omega x
  Vector gradient(const Vector& x) const override {
    check_dim(x);
    return 2.0 * (m_.transpose() * (m_ * x - z_)) + 2.0 * omega_ * x;
  }

  double lipschitz() const override { return lipschitz_; }
  double strong_convexity() const override { return mu_; }

  const Matrix& measurement() const noexcept { return m_; }
  const Vector& observation() const noexcept { return z_; }
  double omega() const noexcept { return omega_; }

 private:
  Matrix m_;
  Vector z_;
  double omega_;
  double lipschitz_ = 0.0;
  double mu_ = 0.0;
};

struct SensorFusionInstance {
  std::vector<Matrix> measurements;  // M_i, s x d
  std::vector<Vector> observations;  // z_i = M_i x_tilde + xi_i
  std::vector<double> omegas;
  std::vector<Vector> noise;         // xi_i
  Vector x_tilde;

  int agents() const { return static_cast<int>(measurements.size()); }
  int dimension() const { return static_cast<int>(x_tilde.size()); }
  int rows() const { return measurements.empty() ? 0 : static_cast<int>(measurements.front().rows()); }
};

/// Draws M_i entries uniform on [0, 10], x_tilde uniform on [0, 1] (both keyed
/// by instance_seed) and unit Gaussian noise keyed by noise_seed.
inline SensorFusionInstance generate_sensor_fusion(int m, int s, int d, double omega, std::uint64_t instance_seed,
                                                   std::uint64_t noise_seed) {
  if (m < 1 || s < 1 || d < 1) throw ParameterError("m, s and d must all be at least 1");
  if (!(omega > 0.0)) throw ParameterError("omega must be positive");
  SensorFusionInstance inst;
  KeyedRng truth(instance_seed, StreamTag::kProblem, {0xffffffffULL});
  inst.x_tilde.resize(d);
  for (int c = 0; c < d; ++c) inst.x_tilde(c) = truth.uniform(0.0, 1.0);
  for (int i = 0; i < m; ++i) {
    KeyedRng rm(instance_seed, StreamTag::kProblem, {static_cast<std::uint64_t>(i)});
    Matrix mi(s, d);
    for (int r = 0; r < s; ++r)
      for (int c = 0; c < d; ++c) mi(r, c) = rm.uniform(0.0, 10.0);
    KeyedRng rn(noise_seed, StreamTag::kNoise, {static_cast<std::uint64_t>(i)});
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector xi(s);
    for (int r = 0; r < s; ++r) xi(r) = gauss(rn);
    inst.observations.push_back(mi * inst.x_tilde + xi);
    inst.measurements.push_back(std::move(mi));
    inst.noise.push_back(std::move(xi));
    inst.omegas.push_back(omega);
  }
  return inst;
}

inline SensorFusionInstance generate_sensor_fusion(int m, int s, int d, double omega, std::uint64_t seed) {
  return generate_sensor_fusion(m, s, d, omega, seed, seed);
}

/// The objectives of all agents plus the aggregate curvature constants.
class GlobalProblem {
 public:
  explicit GlobalProblem(std::vector<std::shared_ptr<const LocalObjective>> objectives)
      : objectives_(std::move(objectives)) {
    if (objectives_.empty()) throw ParameterError("a problem needs at least one agent");
    for (const auto& f : objectives_)
      if (f->dimension() != objectives_.front()->dimension())
        throw DimensionError("all local objectives must share the dimension");
    for (const auto& f : objectives_) {
      l_hat_ = std::max(l_hat_, f->lipschitz());
      mu_hat_ = std::max(mu_hat_, f->strong_convexity());
      l_bar_ += f->lipschitz();
      mu_bar_ += f->strong_convexity();
    }
    l_bar_ /= agents();
    mu_bar_ /= agents();
    if (!(mu_bar_ > 0.0)) throw ParameterError("the sum of strong-convexity constants must be positive");
  }

  int agents() const { return static_cast<int>(objectives_.size()); }
  int dimension() const { return objectives_.front()->dimension(); }
  const LocalObjective& local(int i) const { return *objectives_.at(static_cast<std::size_t>(i)); }
  Vector gradient(int i, const Vector& x) const { return local(i).gradient(x); }

  double l_hat() const { return l_hat_; }
  double l_bar() const { return l_bar_; }
  double mu_hat() const { return mu_hat_; }
  double mu_bar() const { return mu_bar_; }
  double kappa() const { return l_hat_ / mu_bar_; }

 private:
  std::vector<std::shared_ptr<const LocalObjective>> objectives_;
  double l_hat_ = 0.0, l_bar_ = 0.0, mu_hat_ = 0.0, mu_bar_ = 0.0;
};

inline GlobalProblem make_problem(const SensorFusionInstance& inst) {
  std::vector<std::shared_ptr<const LocalObjective>> fs;
  for (int i = 0; i < inst.agents(); ++i)
    fs.push_back(std::make_shared<QuadraticObjective>(inst.measurements[static_cast<std::size_t>(i)],
                                                      inst.observations[static_cast<std::size_t>(i)],
                                                      inst.omegas[static_cast<std::size_t>(i)]));
  return GlobalProblem(std::move(fs));
}

inline Vector gradient(const SensorFusionInstance& inst, int i, const Vector& x) {
  if (i < 0 || i >= inst.agents()) throw ParameterError("agent index out of range");
  const auto& m = inst.measurements[static_cast<std::size_t>(i)];
  if (x.size() != m.cols()) throw DimensionError("gradient point has the wrong dimension");
  return 2.0 * (m.transpose() * (m * x - inst.observations[static_cast<std::size_t>(i)])) +
         2.0 * inst.omegas[static_cast<std::size_t>(i)] * x;
}

struct Curvature {
  double lipschitz;
  double strong_convexity;
};

// L_i = 2 (lambda_max(M^T M) + omega_i), mu_i = 2 (lambda_min(M^T M) + omega_i)
inline Curvature curvature_constants(const SensorFusionInstance& inst, int i) {
  const auto& m = inst.measurements.at(static_cast<std::size_t>(i));
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m.transpose() * m, Eigen::EigenvaluesOnly);
  const double w = inst.omegas[static_cast<std::size_t>(i)];
  return {2.0 * (eig.eigenvalues().maxCoeff() + w), 2.0 * (std::max(eig.eigenvalues().minCoeff(), 0.0) + w)};
}

// x* = (sum_i M_i^T M_i + omega_i I)^{-1} sum_i M_i^T z_i
inline Vector optimal_solution(const SensorFusionInstance& inst) {
  const int d = inst.dimension();
  Matrix h = Matrix::Zero(d, d);
  Vector g = Vector::Zero(d);
  for (int i = 0; i < inst.agents(); ++i) {
    const auto& m = inst.measurements[static_cast<std::size_t>(i)];
    h += m.transpose() * m + inst.omegas[static_cast<std::size_t>(i)] * Matrix::Identity(d, d);
    g += m.transpose() * inst.observations[static_cast<std::size_t>(i)];
  }
  return h.ldlt().solve(g);
}

// Instance files: JSON, matrices row-major, decimal floating point.
inline nlohmann::json instance_to_json(const SensorFusionInstance& inst) {
  auto vec = [](const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  nlohmann::json j;
  j["agents"] = inst.agents();
  j["rows"] = inst.rows();
  j["dimension"] = inst.dimension();
  j["x_tilde"] = vec(inst.x_tilde);
  auto agents = nlohmann::json::array();
  for (int i = 0; i < inst.agents(); ++i) {
    const auto& m = inst.measurements[static_cast<std::size_t>(i)];
    std::vector<double> rows;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) rows.push_back(m(r, c));
    agents.push_back({{"M", rows},
                      {"z", vec(inst.observations[static_cast<std::size_t>(i)])},
                      {"omega", inst.omegas[static_cast<std::size_t>(i)]},
                      {"noise", vec(inst.noise[static_cast<std::size_t>(i)])}});
  }
  j["sensors"] = agents;
  return j;
}

inline SensorFusionInstance instance_from_json(const nlohmann::json& j) {
  try {
    SensorFusionInstance inst;
    const int s = j.at("rows").get<int>();
    const int d = j.at("dimension").get<int>();
    auto vec = [](const nlohmann::json& a) {
      auto v = a.get<std::vector<double>>();
      return Vector(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
    };
    inst.x_tilde = vec(j.at("x_tilde"));
    if (inst.x_tilde.size() != d) throw ConfigError("x_tilde length does not match dimension");
    for (const auto& a : j.at("sensors")) {
      auto rows = a.at("M").get<std::vector<double>>();
      if (rows.size() != static_cast<std::size_t>(s * d)) throw ConfigError("M has the wrong number of entries");
      Matrix m(s, d);
      for (int r = 0; r < s; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = rows[static_cast<std::size_t>(r * d + c)];
      inst.measurements.push_back(std::move(m));
      inst.observations.push_back(vec(a.at("z")));
      inst.omegas.push_back(a.at("omega").get<double>());
      inst.noise.push_back(a.contains("noise") ? vec(a.at("noise")) : Vector::Zero(s));
    }
    if (inst.measurements.empty()) throw ConfigError("instance has no sensors");
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("instance file: ") + e.what());
  }
}

inline void save_instance(const SensorFusionInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file '" + path + "'");
  out << instance_to_json(inst).dump(2) << '\n';
}

inline SensorFusionInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instance file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("instance file '" + path + "': " + e.what());
  }
  return instance_from_json(j);
}

}  // namespace ppdo
