#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hlp/solvers.hpp"

namespace hlp {

enum class GenKind { hlp, nhlp, crt_acd, hssp, rank2_preset };

const char* to_string(GenKind k);
GenKind gen_kind_from_string(const std::string& s);  // throws InvalidArgument

struct GenSpec {
  GenKind kind = GenKind::hlp;
  std::size_t n = 0, m = 0, r = 1;
  std::optional<unsigned> log_N;
  std::optional<mpz_class> N;  // takes precedence over log_N
  std::int64_t alpha = 1;      // entries of the hidden basis lie in [−α, α]
  double rho = 1;              // NHLP noise bound
  unsigned eta = 0;            // CRT-ACD prime size (bits)
  unsigned rho_acd = 0;        // CRT-ACD residues lie in [−2^ρ, 2^ρ]
  std::uint64_t seed = 0;
  bool prime_modulus = true;   // 𝔭(log N); otherwise 2^log_N + random odd offset
  std::size_t max_attempts = 100;
};

// Smallest prime strictly larger than 2^a.
mpz_class smallest_prime_above_pow2(unsigned a);

// Modulus for a spec: spec.N, or 𝔭(log N), or 2^log N + odd offset.
mpz_class gen_modulus(const GenSpec& spec);

HlpInstance gen_hlp(const GenSpec& spec);
NhlpInstance gen_nhlp(const GenSpec& spec);

struct CrtAcdInstance {
  HlpInstance instance;          // r = 1, m = 2n; N_factorization left empty (secret)
  std::vector<mpz_class> primes;
  IntegerMatrix residues;        // (n+1)×n: row k < n holds x_k mod p_i (centred), row n holds y mod p_i
};
CrtAcdInstance gen_crt_acd(std::size_t n, unsigned eta, unsigned rho, std::uint64_t seed,
                           std::size_t max_attempts = 100);

HlpInstance gen_hssp(std::size_t n, std::size_t m, unsigned log_N, std::uint64_t seed,
                     std::size_t max_attempts = 100);

// Rank-2 HLP: a ≡ −(x + c·y) (mod N) with small x, y ∈ [−α, α]^m.
HlpInstance gen_rank2_preset(std::size_t m, unsigned log_N, std::int64_t alpha, std::uint64_t seed,
                             std::size_t max_attempts = 100);

// Uniform r×m matrix mod N of full rank r with an invertible minor: a DHLP
// "no" instance.
LatticeBasis random_modular_basis(std::size_t r, std::size_t m, const mpz_class& N, std::uint64_t seed,
                                  std::size_t max_attempts = 100);

// α such that uniform entries in [−α, α] give σ ≈ 2^log_mu in dimension m.
std::int64_t alpha_for_log_mu(double log_mu, std::size_t m);

struct BlockwiseOptions {
  std::size_t block_dim = 0;
  Algorithm algo = Algorithm::I;
  SolveOptions solve{};
  std::size_t threads = 1;
};

// Solves π_j(M) ⊆ π_j(L) (mod N) on (shared block ∥ j-th chunk) and glues the
// results along the shared block.  The shared block has width block_dim/2.
SolveReport blockwise_solve(const HlpInstance& inst, const BlockwiseOptions& opt);

// #{a ∈ (Z/NZ)^n : ⟨a, t⟩ ≡ 0 (mod N)} by exhaustion; N^n <= 10^7.
mpz_class count_orthogonal_mod_oracle(const IntVector& t, const mpz_class& N);
// gcd(t, N)·N^{n−1}.
mpz_class count_orthogonal_mod_formula(const IntVector& t, const mpz_class& N);

struct SuccessRateSpec {
  LatticeBasis B;
  mpz_class N;
  std::size_t samples = 200;
  Algorithm algo = Algorithm::I;
  mpq_class delta{99, 100};
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

struct SuccessRate {
  double rate = 0;           // successes / valid
  std::size_t successes = 0;
  std::size_t valid = 0;     // samples with a ≠ 0
  std::size_t excluded = 0;  // a = 0
};

SuccessRate success_rate_experiment(const SuccessRateSpec& spec);

}  // namespace hlp
