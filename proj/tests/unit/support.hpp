#pragma once

#include <doctest.h>

#include "hlp/linalg.hpp"
#include "hlp/matrix.hpp"
#include "hlp/rng.hpp"

namespace testing {

using hlp::IntegerMatrix;
using hlp::IntVector;

inline IntegerMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  return IntegerMatrix::from_rows(rows);
}

inline IntegerMatrix random_matrix(hlp::Rng& g, std::size_t r, std::size_t c, long bound) {
  IntegerMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = static_cast<long>(g.uniform(-bound, bound));
  return a;
}

// Cofactor expansion; independent of the elimination-based determinant.
inline mpz_class cofactor_det(const IntegerMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  mpz_class d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntegerMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = a(i, k);
    mpz_class t = a(0, j) * cofactor_det(minor);
    d += (j % 2) ? mpz_class(-t) : t;
  }
  return d;
}

inline bool zero_mod(const mpz_class& x, const mpz_class& N) { return hlp::mod_floor(x, N) == 0; }

// Every row of `rows` is orthogonal modulo N to every row of M.
inline bool orthogonal_mod(const IntegerMatrix& M, const IntegerMatrix& rows, const mpz_class& N) {
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < M.rows(); ++j)
      if (!zero_mod(hlp::dot(rows.row(i), M.row(j)), N)) return false;
  return true;
}

inline mpz_class pow_mpz(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline IntegerMatrix scaled_identity(std::size_t n, const mpz_class& N) {
  IntegerMatrix a = IntegerMatrix::identity(n);
  a *= N;
  return a;
}

// Every row of c lies in span(b) + p·Z^m, p prime: adding c does not raise the rank mod p.
inline bool rows_in_span_mod_p(const IntegerMatrix& c, const IntegerMatrix& b, const mpz_class& p) {
  return hlp::rank_mod_p(hlp::vstack(b, c), p) == hlp::rank_mod_p(b, p);
}

inline IntegerMatrix minus(IntegerMatrix a, const IntegerMatrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= b(i, j);
  return a;
}

}  // namespace testing
