#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ios>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "ppdo/engine.hpp"
#include "ppdo/error.hpp"
#include "ppdo/objective.hpp"
#include "ppdo/rng.hpp"

namespace ppdo {

// The analysis constants reach 1e60 and beyond (and 1 - theta falls below
// 1e-60) for realistic (c0, m, B), so everything here runs in MPFR with a
// precision chosen from the size of sigma^{mB}.
using Real = boost::multiprecision::mpfr_float;

class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : saved_(Real::default_precision()) { Real::default_precision(digits); }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

// Digits needed to resolve theta0. With s = |log10 sigma^{mB}|, eps and B0 are
// about 10^s, C2 about 10^{4s}, 1 - varepsilon about 10^{-s}, and so
// 1 - theta0 falls to roughly 10^{-7s}.
inline unsigned precision_for(double c0, int m, int B) {
  const double mb = static_cast<double>(m) * B;
  const double s = std::abs(mb * (2.0 + mb) * std::log10(c0));
  return static_cast<unsigned>(80.0 + 8.0 * std::ceil(s) + std::ceil(mb * std::abs(std::log10(c0))));
}

inline std::string sci(const Real& x, int digits = 6) { return x.str(digits, std::ios_base::scientific); }

struct ContractionParams {
  double c0 = 0.0;
  int m = 0;
  int B = 0;
  Real B0;
  Real sigma;     // c0^(2 + mB)
  Real sigma_mb;  // sigma^(mB)
  Real epsilon;   // 2m (1 + sigma^-mB) / (1 - sigma^mB)
  Real varepsilon;
  unsigned digits = 0;
  bool valid = false;  // varepsilon < 1
  std::string message;
};

namespace detail {

inline void check_contraction_inputs(double c0, int m, int B) {
  if (m < 1) throw ParameterError("agent count must be positive");
  if (!(c0 > 0.0 && c0 < 1.0 / m)) throw ParameterError("c0 must lie in (0, 1/m)");
  if (B < 1) throw ParameterError("B must be at least 1");
}

// ln(varepsilon) as a function of B0, without forming the tiny power.
inline Real log_varepsilon(const ContractionParams& p, const Real& B0) {
  const Real mb = Real(p.m) * p.B;
  return log(p.epsilon) + (B0 - 1) / mb * boost::multiprecision::log1p(Real(-p.sigma_mb));
}

inline ContractionParams base_params(double c0, int m, int B) {
  check_contraction_inputs(c0, m, B);
  ContractionParams p;
  p.c0 = c0;
  p.m = m;
  p.B = B;
  p.digits = precision_for(c0, m, B);
  PrecisionScope scope(p.digits);
  const Real mb = Real(m) * B;
  p.sigma = pow(Real(c0), Real(2) + mb);
  p.sigma_mb = pow(p.sigma, mb);
  p.epsilon = 2 * Real(m) * (1 + 1 / p.sigma_mb) / (1 - p.sigma_mb);
  return p;
}

}  // namespace detail

inline ContractionParams contraction_params(double c0, int m, int B, const Real& B0) {
  ContractionParams p = detail::base_params(c0, m, B);
  PrecisionScope scope(p.digits);
  if (B0 < B) throw ParameterError("B0 must be at least B");
  p.B0 = Real(B0);
  p.varepsilon = exp(detail::log_varepsilon(p, p.B0));
  p.valid = p.varepsilon < 1;
  if (!p.valid) p.message = "B0 too small: varepsilon = " + sci(p.varepsilon) + " >= 1";
  return p;
}

/// Minimal integer B0 in [B, cap] with varepsilon < 1. Solved in closed form
/// from ln(eps) + (B0 - 1)/(mB) ln(1 - sigma^mB) < 0, then nudged by one in
/// either direction against the direct evaluation.
inline std::optional<Real> smallest_valid_B0(double c0, int m, int B, const std::optional<Real>& cap = {}) {
  ContractionParams p = detail::base_params(c0, m, B);
  PrecisionScope scope(p.digits);
  if (cap && *cap < B) throw ParameterError("cap must be at least B");
  const Real mb = Real(m) * B;
  const Real t = 1 + mb * log(p.epsilon) / -boost::multiprecision::log1p(Real(-p.sigma_mb));
  Real b0 = floor(t) + 1;
  if (b0 < B) b0 = B;
  auto ok = [&](const Real& v) { return detail::log_varepsilon(p, v) < 0; };
  while (!ok(b0)) b0 += 1;
  while (b0 > B && ok(b0 - 1)) b0 -= 1;
  if (cap && b0 > *cap) return std::nullopt;
  return b0;
}

struct TheoryConstants {
  ContractionParams contraction;
  double l_hat = 0.0, l_bar = 0.0, mu_hat = 0.0, mu_bar = 0.0;
  double alpha = 1.0, beta = 1.0;
  Real w_inv_bound;  // 1 / c0^(mB)

  int m() const { return contraction.m; }
  double kappa() const { return l_hat / mu_bar; }
};

/// Builds the constants for (c0, m, B) and a problem's curvature. B0 defaults
/// to the smallest valid value.
inline TheoryConstants make_constants(double c0, int m, int B, const GlobalProblem& problem, double alpha = 1.0,
                                      double beta = 1.0, std::optional<Real> B0 = {}) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw ParameterError("alpha and beta must be positive");
  if (problem.agents() != m) throw ParameterError("problem and constants disagree on the agent count");
  TheoryConstants c;
  if (!B0) {
    B0 = smallest_valid_B0(c0, m, B);
    if (!B0) throw ParameterError("no valid B0");
  }
  c.contraction = contraction_params(c0, m, B, *B0);
  PrecisionScope scope(c.contraction.digits);
  c.l_hat = problem.l_hat();
  c.l_bar = problem.l_bar();
  c.mu_hat = problem.mu_hat();
  c.mu_bar = problem.mu_bar();
  c.alpha = alpha;
  c.beta = beta;
  c.w_inv_bound = 1 / pow(Real(c0), Real(m) * B);
  return c;
}

struct Gains {
  Real gamma1, gamma2, gamma3, gamma4;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  Real product() const { return gamma1 * gamma2 * gamma3 * gamma4; }
};

/// The four gains at (theta, eta). w_inv defaults to the worst-case bound.
inline Gains gain_constants(const TheoryConstants& c, const Real& theta, const Real& eta,
                            std::optional<Real> w_inv = {}) {
  const auto& p = c.contraction;
  PrecisionScope scope(p.digits);
  Gains g;
  const Real th(theta);
  const Real tb0 = pow(th, p.B0);
  if (!(th > 0 && th < 1)) g.violations.push_back("theta must lie in (0, 1)");
  if (!(tb0 > p.varepsilon)) g.violations.push_back("theta^B0 must exceed varepsilon");
  if (eta > 1 / ((1 + Real(c.beta)) * c.l_bar)) g.violations.push_back("eta exceeds 1/((1+beta) L_bar)");
  const Real floor_sq = 1 - Real(c.alpha) * eta * c.mu_bar / (c.alpha + 1);
  if (floor_sq > 0 && th < sqrt(floor_sq)) g.violations.push_back("theta below sqrt(1 - alpha eta mu_bar/(alpha+1))");
  if (!(eta > 0)) g.violations.push_back("eta = 0 forces theta >= 1");

  const Real winv = w_inv ? Real(*w_inv) : c.w_inv_bound;
  const Real sm = sqrt(Real(c.m()));
  g.gamma1 = Real(c.l_hat) * (1 + 1 / th);
  g.gamma2 = p.epsilon * winv * th * (1 - tb0) / ((tb0 - p.varepsilon) * (1 - th));
  g.gamma3 = eta / (tb0 - p.varepsilon) * (p.varepsilon + p.epsilon * (1 - pow(th, p.B0 - 1)) / (1 - th));
  g.gamma4 = (1 + sm) * (1 + sm / th * sqrt((Real(c.l_hat) * (1 + c.beta) + Real(c.alpha) * c.beta * c.mu_hat) /
                                            (Real(c.mu_bar) * c.beta)));
  return g;
}

struct Certificate {
  Real C1, C2;
  Real theta0;
  Real theta;  // max(theta0, 0.5), the rate actually certified
  Real eta_upper;  // min{(1 + 1/alpha)(1 - varepsilon)^2/(mu_bar C2), 1/((1+beta) L_bar)}
  Real eta_at_theta;  // right end of the step interval at theta
  Real left_bound, right_bound;  // both ends of the step interval at theta0
  Gains gains;
  bool theta0_in_range = false;
  bool interval_nonempty = false;
  bool small_gain = false;
  bool theta_floor_applied = false;
  std::vector<std::string> notes;
};

inline Real step_left_bound(const TheoryConstants& c, const Real& theta) {
  return (1 + Real(1) / c.alpha) * (1 - pow(theta, 2 * c.contraction.B0)) / c.mu_bar;
}

inline Real step_right_bound(const TheoryConstants& c, const Real& C2, const Real& theta) {
  const Real d = pow(theta, c.contraction.B0) - c.contraction.varepsilon;
  return (1 + Real(1) / c.alpha) * d * d / (Real(c.mu_bar) * C2);
}

/// Evaluates C1, C2, theta0 and the step-size interval, then checks the
/// small-gain condition at theta = max(theta0, 0.5) with eta at the right end
/// of the interval there (capped by 1/((1+beta) L_bar)).
inline Certificate convergence_certificate(const TheoryConstants& c) {
  const auto& p = c.contraction;
  if (!p.valid) throw ParameterError("varepsilon >= 1: " + p.message);
  PrecisionScope scope(p.digits);
  Certificate cert;
  const Real m(c.m());
  const Real sm = sqrt(m);
  const Real inv_a = 1 / Real(c.alpha);
  cert.C1 = 2 * sqrt((1 + Real(c.beta)) * m * c.l_hat / (Real(c.beta) * c.mu_bar) + Real(c.alpha) * m * c.mu_hat / c.mu_bar);
  cert.C2 = 2 * p.B0 * Real(c.kappa()) * p.epsilon * c.w_inv_bound * (p.varepsilon + p.epsilon * (p.B0 - 1)) *
            (1 + sm) * (1 + inv_a) * (1 + cert.C1);
  const Real lip = 1 / ((1 + Real(c.beta)) * c.l_bar);
  const Real upper = (1 + inv_a) * (1 - p.varepsilon) * (1 - p.varepsilon) / (Real(c.mu_bar) * cert.C2);
  cert.eta_upper = upper < lip ? upper : lip;
  const Real e = p.varepsilon;
  const Real t0 = (e + sqrt(cert.C2 * (cert.C2 - e * e + 1))) / (1 + cert.C2);
  cert.theta0 = pow(t0, 1 / p.B0);
  cert.theta0_in_range = cert.theta0 > pow(e, 1 / p.B0) && cert.theta0 < 1;
  cert.left_bound = step_left_bound(c, cert.theta0);
  cert.right_bound = step_right_bound(c, cert.C2, cert.theta0);

  cert.theta = cert.theta0;
  if (cert.theta < Real(0.5)) {
    cert.theta = Real(0.5);
    cert.theta_floor_applied = true;
    cert.notes.push_back("theta raised to 0.5 as required by the small-gain bound");
  }
  Real eta = step_right_bound(c, cert.C2, cert.theta);
  if (eta > lip) {
    eta = lip;
    cert.notes.push_back("step capped at 1/((1+beta) L_bar)");
  }
  cert.eta_at_theta = eta;
  cert.interval_nonempty = cert.eta_upper > 0 && step_left_bound(c, cert.theta) <= eta * (1 + Real(1e-20));
  cert.gains = gain_constants(c, cert.theta, eta);
  cert.small_gain = cert.gains.product() < 1;
  if (cert.eta_upper < Real(1e-12)) cert.notes.push_back("step-size bound is impractically small");
  return cert;
}

// ||R a||_F with R = I - (1/m) 11^T
inline double r_weighted_norm(const Matrix& a) {
  if (a.rows() == 0) return 0.0;
  const Eigen::RowVectorXd mean = a.colwise().mean();
  return (a.rowwise() - mean).norm();
}

// (1 - theta^B0)/(1 - theta) <= B0, evaluated in extended precision
inline bool check_theta_b0(double theta, std::int64_t B0) {
  if (!(theta > 0.0 && theta < 1.0)) throw ParameterError("theta must lie in (0, 1)");
  if (B0 < 1) throw ParameterError("B0 must be at least 1");
  PrecisionScope scope(120);
  const Real th(theta);
  const Real lhs = (1 - pow(th, Real(B0))) / (1 - th);
  return lhs <= Real(B0);
}

// Phi(k) = W(k+1)^{-1} A(k) W(k)
inline Matrix phi_matrix(const Trajectory& t, std::int64_t k) {
  const auto u = static_cast<std::size_t>(k);
  if (t.a.size() <= u || t.w.size() <= u + 1) throw ParameterError("trajectory lacks A(k) or w(k+1)");
  return t.w[u + 1].cwiseInverse().asDiagonal() * t.a[u] * t.w[u].asDiagonal();
}

// Phi(k) Phi(k-1) ... Phi(k-b+1)
inline Matrix phi_product(const Trajectory& t, std::int64_t k, std::int64_t b) {
  if (b < 1 || k - b + 1 < 0) throw ParameterError("invalid product window");
  Matrix out = phi_matrix(t, k - b + 1);
  for (std::int64_t j = k - b + 2; j <= k; ++j) out = phi_matrix(t, j) * out;
  return out;
}

struct ContractionReport {
  int trials = 0;
  double max_ratio = 0.0;  // max ||C||_R / ||D||_R
  Real varepsilon;
  bool holds = false;
  std::vector<std::int64_t> sampled_k;
};

/// Draws random D (entries N(0,1)) and k in [B0, last], and compares
/// ||Phi_B0(k) D||_R against varepsilon ||D||_R.
inline ContractionReport verify_contraction(const Trajectory& t, const ContractionParams& p, int trials, int d,
                                            std::uint64_t seed) {
  if (t.a.empty()) throw ParameterError("trajectory must be recorded with full state");
  PrecisionScope scope(p.digits);
  if (p.B0 > Real(1e9)) throw ParameterError("B0 too large to form Phi_B0 explicitly");
  const auto b0 = static_cast<std::int64_t>(p.B0.convert_to<double>());
  const auto last = static_cast<std::int64_t>(t.a.size()) - 1;
  if (last < b0) throw ParameterError("trajectory shorter than B0");
  const int m = static_cast<int>(t.w.front().size());

  ContractionReport rep;
  rep.trials = trials;
  rep.varepsilon = p.varepsilon;
  KeyedRng rng(seed, StreamTag::kTheory, {static_cast<std::uint64_t>(b0)});
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> pick(b0, last);
  bool holds = true;
  for (int i = 0; i < trials; ++i) {
    const std::int64_t k = pick(rng);
    rep.sampled_k.push_back(k);
    Matrix D(m, d);
    for (Eigen::Index r = 0; r < D.rows(); ++r)
      for (Eigen::Index c = 0; c < D.cols(); ++c) D(r, c) = gauss(rng);
    const double dn = r_weighted_norm(D);
    const double cn = r_weighted_norm(phi_product(t, k, b0) * D);
    rep.max_ratio = std::max(rep.max_ratio, cn / dn);
    if (!(Real(cn) <= p.varepsilon * dn)) holds = false;
  }
  rep.holds = holds;
  return rep;
}

/// Per-iteration norms of the quantities the lemmas bound.
struct TrajectorySeries {
  std::vector<double> r, v, u_check, x_check;  // Frobenius norms, index k
  std::vector<Vector> ybar;
  double w_inv_max = 0.0;  // sup_{k>=1} max_i 1/w_i(k) over the record
};

inline TrajectorySeries trajectory_series(const Trajectory& t, const Vector& x_star) {
  if (t.w.empty() || t.s.empty()) throw ParameterError("trajectory must be recorded with full state");
  TrajectorySeries s;
  const auto n = t.x.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix& x = t.x[k];
    const Matrix star = Matrix::Ones(x.rows(), 1) * x_star.transpose();
    s.r.push_back((x - star).norm());
    s.v.push_back(k == 0 ? 0.0 : (t.grad[k] - t.grad[k - 1]).norm());
    const Matrix u = t.w[k].cwiseInverse().asDiagonal() * t.s[k];
    s.u_check.push_back(r_weighted_norm(u));
    s.x_check.push_back(r_weighted_norm(x));
    s.ybar.push_back(t.y[k].colwise().mean().transpose());
    if (k >= 1) s.w_inv_max = std::max(s.w_inv_max, t.w[k].cwiseInverse().cwiseAbs().maxCoeff());
  }
  return s;
}

struct LemmaCheck {
  std::string name;
  Real lhs, rhs;
  bool holds = false;
  bool skipped = false;
};

struct LemmaReport {
  Real theta;
  int K = 0;
  Real norm_r, norm_v, norm_u, norm_x;  // ||.||_F^{theta,K}
  Real b1, b2, b3, b4;
  Gains gains;          // with the recorded sup ||W(k)^{-1}||_max
  Gains gains_bound;    // with the 1/c0^{mB} bound
  double w_inv_recorded = 0.0;
  std::vector<LemmaCheck> checks;
  std::optional<Real> C3;

  bool all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.holds && !c.skipped; });
  }
};

// max_{k=1..K} theta^{-k} a(k)
inline Real theta_norm(const std::vector<double>& a, const Real& theta, int K) {
  Real best = 0;
  Real scale = 1;
  for (int k = 1; k <= K; ++k) {
    scale /= theta;
    const Real v = scale * a.at(static_cast<std::size_t>(k));
    if (v > best) best = v;
  }
  return best;
}

/// Evaluates the four lemma inequalities on a recorded run at rate theta over
/// k = 1..K. The b2/b3 prefix sums run over i = 1..min(B0, recorded).
inline LemmaReport verify_lemma_inequalities(const Trajectory& t, const TheoryConstants& c, const Real& theta,
                                             const Real& eta, const Vector& x_star, int K) {
  const auto& p = c.contraction;
  PrecisionScope scope(p.digits);
  if (K < 1) throw ParameterError("K must be at least 1");
  if (static_cast<std::size_t>(K) >= t.x.size()) throw ParameterError("trajectory shorter than K");
  const TrajectorySeries s = trajectory_series(t, x_star);

  LemmaReport rep;
  rep.theta = theta;
  rep.K = K;
  rep.norm_r = theta_norm(s.r, theta, K);
  rep.norm_v = theta_norm(s.v, theta, K);
  rep.norm_u = theta_norm(s.u_check, theta, K);
  rep.norm_x = theta_norm(s.x_check, theta, K);
  rep.w_inv_recorded = s.w_inv_max;
  rep.gains = gain_constants(c, theta, eta, Real(s.w_inv_max));
  rep.gains_bound = gain_constants(c, theta, eta);

  const Real tb0 = pow(theta, p.B0);
  const Real lead = tb0 / (tb0 - p.varepsilon);
  Real su = 0, sx = 0, scale = 1;
  const Real avail = Real(static_cast<double>(t.x.size() - 1));
  const Real top = p.B0 < avail ? p.B0 : avail;
  const auto n = static_cast<std::size_t>(top.convert_to<double>());
  for (std::size_t i = 1; i <= n; ++i) {
    scale /= theta;
    su += scale * s.u_check[i];
    sx += scale * s.x_check[i];
  }
  rep.b1 = s.v.size() > 1 ? Real(s.v[1]) / theta : Real(0);
  rep.b2 = lead * su;
  rep.b3 = lead * sx;
  rep.b4 = 2 * sqrt(Real(c.m())) * Real((s.ybar[1] - x_star).norm());

  const Gains& g = rep.gains;
  auto add = [&](const std::string& name, const Real& lhs, const Real& rhs, bool skip) {
    LemmaCheck chk{name, lhs, rhs, !skip && lhs <= rhs, skip};
    rep.checks.push_back(chk);
  };
  const bool theta_ok = tb0 > p.varepsilon && theta < 1;
  bool r_bound_ok = theta_ok && eta > 0 && eta <= 1 / ((1 + Real(c.beta)) * c.l_bar);
  const Real floor_sq = 1 - Real(c.alpha) * eta * c.mu_bar / (c.alpha + 1);
  if (floor_sq > 0 && theta < sqrt(floor_sq)) r_bound_ok = false;

  add("v <= gamma1 r + b1", rep.norm_v, g.gamma1 * rep.norm_r + rep.b1, !(theta > 0 && theta < 1));
  add("u_check <= gamma2 v + b2", rep.norm_u, g.gamma2 * rep.norm_v + rep.b2, !theta_ok);
  add("x_check <= gamma3 u_check + b3", rep.norm_x, g.gamma3 * rep.norm_u + rep.b3, !theta_ok);
  add("r <= gamma4 x_check + b4", rep.norm_r, g.gamma4 * rep.norm_x + rep.b4, !r_bound_ok);

  const Real prod = g.product();
  if (prod < 1)
    rep.C3 = (rep.b1 * g.gamma2 * g.gamma3 * g.gamma4 + rep.b2 * g.gamma3 * g.gamma4 + rep.b3 * g.gamma4 + rep.b4) /
             (1 - prod);
  return rep;
}

inline void write_constants(std::ostream& os, const TheoryConstants& c) {
  const auto& p = c.contraction;
  os << "c0 " << p.c0 << "\nm " << p.m << "\nB " << p.B << "\ndigits " << p.digits << "\n";
  os << "sigma " << sci(p.sigma) << "\nepsilon " << sci(p.epsilon) << "\nB0 " << sci(p.B0, 12) << "\n";
  os << "varepsilon " << sci(p.varepsilon, 12) << "\none_minus_varepsilon " << sci(Real(1 - p.varepsilon))
     << "\nW_inv_bound " << sci(c.w_inv_bound) << "\n";
  os << "L_hat " << c.l_hat << "\nL_bar " << c.l_bar << "\nmu_hat " << c.mu_hat << "\nmu_bar " << c.mu_bar
     << "\nkappa " << c.kappa() << "\nalpha " << c.alpha << "\nbeta " << c.beta << "\n";
}

inline void write_certificate(std::ostream& os, const Certificate& cert) {
  os << "C1 " << sci(cert.C1) << "\nC2 " << sci(cert.C2) << "\n";
  os << "theta0 " << sci(cert.theta0, 30) << "\none_minus_theta0 " << sci(Real(1 - cert.theta0)) << "\n";
  os << "theta " << sci(cert.theta, 30) << "\n";
  os << "eta_upper " << sci(cert.eta_upper) << "\neta_at_theta " << sci(cert.eta_at_theta) << "\n";
  os << "interval_left_at_theta0 " << sci(cert.left_bound) << "\ninterval_right_at_theta0 " << sci(cert.right_bound)
     << "\n";
  os << "gamma1 " << sci(cert.gains.gamma1) << "\ngamma2 " << sci(cert.gains.gamma2) << "\ngamma3 "
     << sci(cert.gains.gamma3) << "\ngamma4 " << sci(cert.gains.gamma4) << "\n";
  os << "gain_product " << sci(cert.gains.product()) << "\n";
  os << "theta0_in_range " << cert.theta0_in_range << "\ninterval_nonempty " << cert.interval_nonempty
     << "\nsmall_gain " << cert.small_gain << "\n";
  for (const auto& v : cert.gains.violations) os << "violation " << v << "\n";
  for (const auto& n : cert.notes) os << "note " << n << "\n";
}

inline void write_lemmas(std::ostream& os, const LemmaReport& r) {
  os << "K " << r.K << "\ntheta " << sci(r.theta, 30) << "\n";
  os << "b1 " << sci(r.b1) << "\nb2 " << sci(r.b2) << "\nb3 " << sci(r.b3) << "\nb4 " << sci(r.b4) << "\n";
  os << "W_inv_recorded " << r.w_inv_recorded << "\n";
  for (const auto& c : r.checks)
    os << (c.skipped ? "SKIP " : c.holds ? "PASS " : "FAIL ") << c.name << " : " << sci(c.lhs) << " <= "
       << sci(c.rhs) << "\n";
  if (r.C3) os << "C3 " << sci(*r.C3) << "\n";
}

}  // namespace ppdo
