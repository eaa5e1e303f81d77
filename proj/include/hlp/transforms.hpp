#pragma once

#include <vector>

#include "hlp/lll.hpp"

namespace hlp {

struct ModularLatticePair {
  LatticeBasis orth_basis;  // M^{⊥_N}
  LatticeBasis cong_basis;  // M_N = M + N Z^m
  mpz_class N;
  std::size_t r = 0;
};

// Bases of M^{⊥_N} and M_N.  The r pivot columns (an invertible r×r minor
// mod N) are found greedily from the last column backwards.
LatticeBasis ortho_mod_basis(const LatticeBasis& M, const mpz_class& N);
LatticeBasis cong_mod_basis(const LatticeBasis& M, const mpz_class& N);
ModularLatticePair modular_lattices(const LatticeBasis& M, const mpz_class& N);

RationalMatrix dual_basis(const LatticeBasis& B);  // (B^T)^{-1}

enum class ComplementMethod {
  k_trick,         // LLL on [K·Bᵀ | 1_m]
  integer_kernel,  // unimodular integer elimination, then LLL
};

struct ComplementParams {
  ComplementMethod method = ComplementMethod::k_trick;
  mpz_class k_multiplier = 1;  // scales K_B; must be >= 1
  ReductionParams reduction{};
};

// Λ^⊥ in Z^m via LLL on [K·Bᵀ | 1_m]; LLL-reduced, sorted by norm.
LatticeBasis orthogonal_complement(const LatticeBasis& B, const ComplementParams& params = {});
// Λ_Q ∩ Z^m as the double orthogonal complement.
LatticeBasis completion(const LatticeBasis& B, const ComplementParams& params = {});
// {v : p^k v ∈ Λ for some k}.
LatticeBasis p_completion(const LatticeBasis& B, const mpz_class& p);

IntVector phi_B(std::span<const mpz_class> u, const LatticeBasis& B);

}  // namespace hlp
