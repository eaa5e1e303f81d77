#include "hlp/bounds.hpp"

#include <cmath>
#include <numbers>

#include "hlp/errors.hpp"

namespace hlp {

namespace {

double lg(double x) { return std::log2(x); }

void check_delta(double delta) {
  if (!(delta > 0.25 && delta < 1)) throw ParamOutOfRange("delta must lie in (1/4, 1)");
}

void check_proven(std::size_t n, std::size_t m, double log_mu, double delta) {
  if (n < 3) throw ParamOutOfRange("proven thresholds need n >= 3");
  if (m <= n) throw ParamOutOfRange("proven thresholds need m > n");
  if (log_mu < 0) throw ParamOutOfRange("mu must be >= 1");
  check_delta(delta);
}

}  // namespace

void AnalysisParams::validate() const {
  if (!(1 <= r && r <= n && n < m)) throw ParamOutOfRange("need 1 <= r <= n < m");
  if (!(theta >= 1)) throw ParamOutOfRange("theta must be >= 1");
  if (!(epsilon > 0 && epsilon < 1)) throw ParamOutOfRange("epsilon must lie in (0, 1)");
  if (log_iota < 0) throw ParamOutOfRange("log iota must be >= 0");
  check_delta(delta);
}

double hermite_gamma(std::size_t n, HermiteMode mode) {
  const double d = static_cast<double>(n);
  if (mode == HermiteMode::upper_bound_2n3) return n <= 1 ? 1.0 : 2.0 * d / 3.0;
  return d / (2 * std::numbers::pi * std::numbers::e);
}

double heuristic_logN_I(const AnalysisParams& p) {
  p.validate();
  const double n = p.n, m = p.m, r = p.r;
  return m * n / (r * (m - n)) * p.log_mu + m * n / r * p.log_iota + n / (2 * r) * lg(m - n);
}

double heuristic_logN_II(const AnalysisParams& p) {
  p.validate();
  const double n = p.n, m = p.m, r = p.r;
  double last = m * n / (r * (m - n)) * lg(p.theta * std::sqrt(n) / std::sqrt(m));
  if (p.clamp_theta_term && last < 0) last = 0;
  return m * n / (r * (m - n)) * p.log_mu + m / (m - n) * (m * n / r) * p.log_iota + last;
}

double heuristic_logN_II_minkowski(const AnalysisParams& p) {
  p.validate();
  const double n = p.n, m = p.m, r = p.r;
  const double log_mm_nn = m * lg(m) - n * lg(n);
  return m * n / (r * (m - n)) * p.log_mu + m * n / r * p.log_iota + n / (2 * r) * lg(n) +
         n / (2 * r) * log_mm_nn - n * (m - n) / (2 * r) * lg(2 * std::numbers::pi * std::numbers::e);
}

Density density_delta(const AnalysisParams& p, double log_N) {
  p.validate();
  const double n = p.n, m = p.m, r = p.r;
  Density d;
  d.delta = r / n * log_N - m / (m - n) * p.log_mu;
  d.delta_I = m * p.log_iota + 0.5 * lg(m - n);
  d.delta_II = m * m / (m - n) * p.log_iota + m / (m - n) * lg(p.theta * std::sqrt(n) / std::sqrt(m));
  return d;
}

double proven_logNeps_I(std::size_t n_, std::size_t m_, double log_mu, double delta) {
  check_proven(n_, m_, log_mu, delta);
  const double n = n_, m = m_, c = 1 / (delta - 0.25);
  return m * n / 2 * lg(c) + n * (n + 1) * log_mu + n * (m - n) / 2 * lg(2.0 / 3.0 * (m - n)) +
         n * lg(3 * std::sqrt(n)) + 1;
}

double proven_logNeps_II(std::size_t n_, std::size_t m_, double log_mu, double delta) {
  check_proven(n_, m_, log_mu, delta);
  const double n = n_, m = m_, c = 1 / (delta - 0.25);
  return m * n / 2 * lg(c) + n * (n + 2) * log_mu + n * lg(3 * n * n) + 1;
}

EpsilonDiagnostics epsilon_diagnostics(std::size_t n_, double log_N, double epsilon) {
  if (n_ < 1) throw ParamOutOfRange("n must be >= 1");
  if (!(epsilon > 0 && epsilon < 1)) throw ParamOutOfRange("epsilon must lie in (0, 1)");
  const double n = n_, pi2 = std::numbers::pi * std::numbers::pi;
  EpsilonDiagnostics e;
  e.log2_k_eps = -lg(3) + (lg(6 * epsilon / pi2) + log_N) / n;
  e.log2_l_eps = lg(3 * n) + lg(pi2 / (6 * epsilon)) / n + (1 - 1 / n) * log_N;
  return e;
}

CostEstimates cost_estimates(std::size_t m_, std::size_t r_, double N_bits, std::size_t n_) {
  if (!(1 <= r_ && r_ < m_)) throw ParamOutOfRange("need 1 <= r < m");
  if (N_bits <= 0) throw ParamOutOfRange("N_bits must be positive");
  const double m = m_, r = r_, n = n_;
  auto l2 = [&](double mult) {
    const double L = 0.5 * lg(mult) + N_bits;  // log(mult^{1/2} N)
    return lg(std::pow(m, 6) * L + std::pow(m, 5) * L * L);
  };
  return {l2(r), l2(m - r), m * n / (r * N_bits)};
}

BoundReport bound_report(const AnalysisParams& p, std::optional<double> log_N) {
  p.validate();
  BoundReport b;
  b.heuristic_I_bits = heuristic_logN_I(p);
  b.heuristic_II_bits = heuristic_logN_II(p);
  b.heuristic_II_minkowski_bits = heuristic_logN_II_minkowski(p);
  if (p.n >= 3) {
    b.proven_I_bits = proven_logNeps_I(p.n, p.m, std::max(0.0, p.log_mu), p.delta);
    b.proven_II_bits = proven_logNeps_II(p.n, p.m, std::max(0.0, p.log_mu), p.delta);
  }
  if (log_N) {
    b.density = density_delta(p, *log_N);
    b.eps = epsilon_diagnostics(p.n, *log_N, p.epsilon);
    b.cost = cost_estimates(p.m, p.r, *log_N, p.n);
  }
  return b;
}

}  // namespace hlp
