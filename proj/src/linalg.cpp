#include "hlp/linalg.hpp"

#include <algorithm>

#include "hlp/errors.hpp"

namespace hlp {

mpz_class mod_floor(const mpz_class& a, const mpz_class& N) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), N.get_mpz_t());
  return r;
}

mpz_class mod_centered(const mpz_class& a, const mpz_class& N) {
  mpz_class r = mod_floor(a, N);
  if (2 * r >= N) r -= N;
  return r;
}

mpz_class isqrt_ceil(const mpz_class& a) {
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), a.get_mpz_t());
  if (s * s < a) ++s;
  return s;
}

bool is_probable_prime(const mpz_class& p) {
  return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

mpz_class determinant(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntegerMatrix m = a;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && m(i, k) == 0) ++i;
      if (i == n) return 0;
      m.swap_rows(i, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<std::size_t> pivot_columns(const IntegerMatrix& a) {
  IntegerMatrix m = a;
  const std::size_t n = m.rows(), cols = m.cols();
  std::vector<std::size_t> piv;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < n; ++c) {
    std::size_t i = r;
    while (i < n && m(i, c) == 0) ++i;
    if (i == n) continue;
    m.swap_rows(i, r);
    for (std::size_t k = r + 1; k < n; ++k) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m(k, j) = m(r, c) * m(k, j) - m(k, c) * m(r, j);
        mpz_divexact(m(k, j).get_mpz_t(), m(k, j).get_mpz_t(), prev.get_mpz_t());
      }
      m(k, c) = 0;
    }
    prev = m(r, c);
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::size_t rank(const IntegerMatrix& a) { return pivot_columns(a).size(); }

namespace {

// In-place reduced row echelon form over F_p; entries end in [0, p).
std::vector<std::size_t> rref_mod_p(IntegerMatrix& m, const mpz_class& p) {
  const std::size_t n = m.rows(), cols = m.cols();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = mod_floor(m(i, j), p);
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  mpz_class inv, t;
  for (std::size_t c = 0; c < cols && r < n; ++c) {
    std::size_t i = r;
    while (i < n && m(i, c) == 0) ++i;
    if (i == n) continue;
    m.swap_rows(i, r);
    mpz_invert(inv.get_mpz_t(), m(r, c).get_mpz_t(), p.get_mpz_t());
    for (std::size_t j = c; j < cols; ++j) m(r, j) = mod_floor(m(r, j) * inv, p);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == r || m(k, c) == 0) continue;
      t = m(k, c);
      for (std::size_t j = c; j < cols; ++j) m(k, j) = mod_floor(m(k, j) - t * m(r, j), p);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

std::size_t rank_mod_p(const IntegerMatrix& a, const mpz_class& p) {
  IntegerMatrix m = a;
  return rref_mod_p(m, p).size();
}

IntegerMatrix invert_mod(const IntegerMatrix& a, const mpz_class& N_in) {
  if (a.rows() != a.cols()) throw DimensionMismatch("invert_mod: non-square");
  if (N_in < 2) throw InvalidArgument("invert_mod: modulus must be >= 2");
  const mpz_class& N = N_in;
  const std::size_t n = a.rows();
  IntegerMatrix m = hstack(a, IntegerMatrix::identity(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) m(i, j) = mod_floor(m(i, j), N);

  auto fail = [&](const mpz_class& hint) {
    mpz_class g;
    mpz_class d = determinant(a);
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), N.get_mpz_t());
    if (g == 1) g = hint;
    throw NotInvertibleMod("matrix not invertible modulo N", g);
  };

  mpz_class q, g, inv;
  for (std::size_t c = 0; c < n; ++c) {
    // Euclid down the column so a single row carries the gcd of the entries.
    for (;;) {
      std::size_t best = n;
      for (std::size_t i = c; i < n; ++i)
        if (m(i, c) != 0 && (best == n || m(i, c) < m(best, c))) best = i;
      if (best == n) fail(N);
      m.swap_rows(best, c);
      bool done = true;
      for (std::size_t i = c + 1; i < n; ++i) {
        if (m(i, c) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(c, c).get_mpz_t());
        for (std::size_t j = c; j < 2 * n; ++j) m(i, j) = mod_floor(m(i, j) - q * m(c, j), N);
        if (m(i, c) != 0) done = false;
      }
      if (done) break;
    }
    mpz_gcd(g.get_mpz_t(), m(c, c).get_mpz_t(), N.get_mpz_t());
    if (g != 1) fail(g);
    mpz_invert(inv.get_mpz_t(), m(c, c).get_mpz_t(), N.get_mpz_t());
    for (std::size_t j = c; j < 2 * n; ++j) m(c, j) = mod_floor(m(c, j) * inv, N);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == c || m(k, c) == 0) continue;
      q = m(k, c);
      for (std::size_t j = c; j < 2 * n; ++j) m(k, j) = mod_floor(m(k, j) - q * m(c, j), N);
    }
  }
  return m.col_range(n, 2 * n);
}

std::vector<IntVector> kernel_mod_p(const IntegerMatrix& b, const mpz_class& p) {
  if (!is_probable_prime(p)) throw CompositeModulus("kernel_mod_p: modulus is not prime");
  const std::size_t n = b.rows();
  IntegerMatrix t = b.transpose();  // alpha*B = 0  <=>  B^T alpha^T = 0
  auto piv = rref_mod_p(t, p);
  std::vector<bool> is_piv(n, false);
  for (auto c : piv) is_piv[c] = true;

  IntegerMatrix ker(0, n);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    IntVector v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = mod_floor(-t(i, f), p);
    ker.append_row(v);
  }
  if (ker.rows() == 0) return {};
  rref_mod_p(ker, p);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < ker.rows(); ++i) out.push_back(ker.row_vector(i));
  return out;
}

IntegerMatrix left_integer_kernel(const IntegerMatrix& u) {
  const std::size_t R = u.rows(), C = u.cols();
  IntegerMatrix a = u;
  IntegerMatrix t = IntegerMatrix::identity(R);
  std::size_t p = 0;
  mpz_class q;
  // Unimodular row reduction: T*U ends in echelon form, trailing rows of T span the kernel.
  for (std::size_t c = 0; c < C && p < R; ++c) {
    for (;;) {
      std::size_t best = R;
      for (std::size_t i = p; i < R; ++i)
        if (a(i, c) != 0 && (best == R || abs(a(i, c)) < abs(a(best, c)))) best = i;
      if (best == R) break;
      a.swap_rows(best, p);
      t.swap_rows(best, p);
      bool done = true;
      for (std::size_t i = p + 1; i < R; ++i) {
        if (a(i, c) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(p, c).get_mpz_t());
        for (std::size_t j = c; j < C; ++j) a(i, j) -= q * a(p, j);
        for (std::size_t j = 0; j < R; ++j) t(i, j) -= q * t(p, j);
        if (a(i, c) != 0) done = false;
      }
      if (done) {
        ++p;
        break;
      }
    }
  }
  if (p < C) throw RankDeficient("left_integer_kernel: column rank of U is below its column count");
  return t.row_range(p, R);
}

RationalMatrix inverse(const RationalMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse: non-square");
  const std::size_t n = a.rows();
  RationalMatrix m = a, inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t i = c;
    while (i < n && m(i, c) == 0) ++i;
    if (i == n) throw SingularBasis("inverse: singular matrix");
    if (i != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(i, j), m(c, j));
        std::swap(inv(i, j), inv(c, j));
      }
    mpq_class piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (k == c || m(k, c) == 0) continue;
      mpq_class f = m(k, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(k, j) -= f * m(c, j);
        inv(k, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::optional<RationalMatrix> solve_left(const IntegerMatrix& b, const RationalMatrix& c) {
  if (b.cols() != c.cols()) throw DimensionMismatch("solve_left");
  auto piv = pivot_columns(b);
  if (piv.size() != b.rows()) throw RankDeficient("solve_left: B lacks full row rank");
  RationalMatrix bp(b.select_cols(piv));
  RationalMatrix cp(c.rows(), piv.size());
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < piv.size(); ++j) cp(i, j) = c(i, piv[j]);
  RationalMatrix x = cp * inverse(bp);
  if (!(x * RationalMatrix(b) == c)) return std::nullopt;
  return x;
}

std::optional<RationalMatrix> solve_left(const IntegerMatrix& b, const IntegerMatrix& c) {
  return solve_left(b, RationalMatrix(c));
}

bool rows_in_lattice(const IntegerMatrix& c, const IntegerMatrix& b) {
  if (c.cols() != b.cols()) return false;
  auto x = solve_left(b, c);
  return x && x->is_integral();
}

bool same_lattice(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return rows_in_lattice(a, b) && rows_in_lattice(b, a);
}

}  // namespace hlp
