#pragma once

#include <optional>
#include <vector>

#include "hlp/matrix.hpp"

namespace hlp {

// Residue in [0, N).
mpz_class mod_floor(const mpz_class& a, const mpz_class& N);
// Residue in [-N/2, N/2).
mpz_class mod_centered(const mpz_class& a, const mpz_class& N);
mpz_class isqrt_ceil(const mpz_class& a);
bool is_probable_prime(const mpz_class& p);

mpz_class determinant(const IntegerMatrix& a);  // Bareiss, exact
std::size_t rank(const IntegerMatrix& a);
// Leftmost set of columns that are linearly independent over Q (greedy).
std::vector<std::size_t> pivot_columns(const IntegerMatrix& a);
std::size_t rank_mod_p(const IntegerMatrix& a, const mpz_class& p);

// A^{-1} mod N with entries in [0, N).  Throws NotInvertibleMod.
IntegerMatrix invert_mod(const IntegerMatrix& a, const mpz_class& N);

// Basis of {alpha : alpha*B == 0 mod p}, reduced row-echelon, pivots = 1.
std::vector<IntVector> kernel_mod_p(const IntegerMatrix& b, const mpz_class& p);

// Basis of the saturated left kernel {k in Z^{rows} : k*U = 0}.
IntegerMatrix left_integer_kernel(const IntegerMatrix& u);

RationalMatrix inverse(const RationalMatrix& a);  // throws SingularBasis

// X with X*B = C over Q (B of full row rank), or nullopt if inconsistent.
std::optional<RationalMatrix> solve_left(const IntegerMatrix& b, const RationalMatrix& c);
std::optional<RationalMatrix> solve_left(const IntegerMatrix& b, const IntegerMatrix& c);

// Every row of c is an integral combination of rows of b.
bool rows_in_lattice(const IntegerMatrix& c, const IntegerMatrix& b);
// Equal lattices: mutual integral membership.
bool same_lattice(const IntegerMatrix& a, const IntegerMatrix& b);

}  // namespace hlp
