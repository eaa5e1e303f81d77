#pragma once

#include <cstddef>
#include <optional>

namespace hlp {

// All logarithms are base 2.
enum class HermiteMode { upper_bound_2n3, gaussian_n_2pie };

struct AnalysisParams {
  std::size_t n = 0, m = 0, r = 0;
  double log_mu = 0;
  double log_iota = 0.03;  // root Hermite factor ≈ 1.021
  double theta = 1;
  double delta = 0.99;
  double epsilon = 0.5;
  HermiteMode hermite = HermiteMode::gaussian_n_2pie;
  bool clamp_theta_term = true;

  void validate() const;  // throws ParamOutOfRange
};

double hermite_gamma(std::size_t n, HermiteMode mode);

double heuristic_logN_I(const AnalysisParams& p);
double heuristic_logN_II(const AnalysisParams& p);
double heuristic_logN_II_minkowski(const AnalysisParams& p);

struct Density {
  double delta, delta_I, delta_II;
};
Density density_delta(const AnalysisParams& p, double log_N);

// Bounds on log(N·ε); c = 1/(δ − 1/4).
double proven_logNeps_I(std::size_t n, std::size_t m, double log_mu, double delta);
double proven_logNeps_II(std::size_t n, std::size_t m, double log_mu, double delta);

struct EpsilonDiagnostics {
  double log2_k_eps, log2_l_eps;
};
EpsilonDiagnostics epsilon_diagnostics(std::size_t n, double log_N, double epsilon);

struct CostEstimates {
  double cost_I_log2, cost_II_log2;  // log2 of the L² bit-operation estimates, constants = 1
  double bkz_lower_log2;             // mn / (r log N)
};
CostEstimates cost_estimates(std::size_t m, std::size_t r, double N_bits, std::size_t n);

struct BoundReport {
  double heuristic_I_bits, heuristic_II_bits, heuristic_II_minkowski_bits;
  std::optional<double> proven_I_bits, proven_II_bits;  // need n >= 3
  std::optional<Density> density;                       // need log N
  std::optional<EpsilonDiagnostics> eps;
  std::optional<CostEstimates> cost;
};
BoundReport bound_report(const AnalysisParams& p, std::optional<double> log_N = std::nullopt);

}  // namespace hlp
