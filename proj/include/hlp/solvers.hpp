#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hlp/transforms.hpp"

namespace hlp {

struct PlantedHlp {
  LatticeBasis L_basis;
  mpq_class mu_sq;  // σ(𝔅)^2 of the planted basis
  std::uint64_t seed = 0;
  IntegerMatrix coefficients;  // r×n, M ≡ coefficients·𝔅 (mod N); may be empty
};

struct HlpInstance {
  std::size_t m = 0, n = 0, r = 0;
  mpz_class N;
  LatticeBasis M_basis;
  std::vector<mpz_class> N_factorization;  // distinct primes; empty when unknown
  std::optional<PlantedHlp> planted;

  // Normalises N to |N| and checks shapes, 1 <= r <= n < m, and the planted
  // congruence M ⊆ L (mod N).  Throws InvalidInstance.
  void validate();
};

struct PlantedNhlp {
  LatticeBasis L_basis;
  IntegerMatrix X_basis;  // r×m noise vectors x_j
  mpq_class mu_sq;
  double rho_actual = 0;
  std::uint64_t seed = 0;
};

struct NhlpInstance {
  std::size_t m = 0, n = 0, r = 0;
  mpz_class N;
  LatticeBasis W_basis;  // rows w_j
  double rho = 0;
  std::vector<mpz_class> N_factorization;
  std::optional<PlantedNhlp> planted;

  void validate();
};

enum class Algorithm { I, II };
enum class CompletionMode { automatic, double_orthogonal, mod_n_local };

struct SolveReport {
  std::string algorithm;
  std::string completion_mode;
  LatticeBasis recovered;
  LatticeBasis intermediate;  // 𝒩_I (rank m−n) or 𝒩_II (rank n)
  double sigma_out = 0;
  double log2_sigma_out = 0;
  ReductionStats reduction;
  double step1_ms = 0, step2_ms = 0;
  std::optional<bool> success;
  // Algorithm I with planted truth: every vector of 𝒩_I lies in L^⊥.
  std::optional<bool> intermediate_in_hidden_orthogonal;
};

struct SolveOptions {
  ReductionParams reduction{};
  ComplementParams complement{};
  CompletionMode completion = CompletionMode::automatic;
  bool verify = true;  // compare with the planted truth when present
};

SolveReport solve_hlp_I(const HlpInstance& inst, const SolveOptions& opt = {});
SolveReport solve_hlp_II(const HlpInstance& inst, const SolveOptions& opt = {});
SolveReport solve_hlp(const HlpInstance& inst, Algorithm algo, const SolveOptions& opt = {});
SolveReport solve_nhlp(const NhlpInstance& inst, const SolveOptions& opt = {}, Algorithm algo = Algorithm::I);

// recovered == completion(planted), by mutual integral membership.
bool matches_planted(const LatticeBasis& recovered, const LatticeBasis& planted);

struct GapProfile {
  std::vector<double> reduced_norms;  // nondecreasing
  std::vector<double> log2_g;         // log2_g[k-1] = log2 g_k, k = 1..m-1
  std::vector<double> log2_jump;      // log2(‖u_{k+1}‖/‖u_k‖), k = 1..m-1
  std::optional<std::size_t> detected_rank;
  double tau_log2 = 32;

  double g_log2(std::size_t k) const { return log2_g.at(k - 1); }
};

// Input: square basis sorted by norm (as returned by lll_reduce).
GapProfile gap_profile(const LatticeBasis& reduced);

enum class DhlpSide { orthogonal, congruence };

struct DhlpVerdict {
  bool exists = false;
  std::optional<std::size_t> detected_rank;
  std::size_t k_star = 0;
  double max_jump_log2 = 0;
  GapProfile profile;
};

DhlpVerdict decide_dhlp(const LatticeBasis& M, const mpz_class& N, double tau_log2 = 32,
                        DhlpSide side = DhlpSide::orthogonal, const ReductionParams& params = {});

}  // namespace hlp
