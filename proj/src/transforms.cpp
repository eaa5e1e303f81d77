#include "hlp/transforms.hpp"

#include "hlp/errors.hpp"
#include "hlp/linalg.hpp"

namespace hlp {

namespace {

struct Echelon {
  IntegerMatrix R;                 // r×m, identity on the pivot columns, entries mod N
  std::vector<std::size_t> pivot;  // pivot[t] = column of the t-th unit
  std::vector<bool> is_pivot;
};

// Gauss-Jordan mod N with unit pivots; the trailing columns are tried first so
// that the invertible block sits at the end whenever possible.
Echelon unit_echelon(const IntegerMatrix& M, const mpz_class& N) {
  const std::size_t r = M.rows(), m = M.cols();
  Echelon e{M, {}, std::vector<bool>(m, false)};
  IntegerMatrix& R = e.R;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m; ++j) R(i, j) = mod_floor(R(i, j), N);

  mpz_class g, inv, f;
  std::optional<mpz_class> factor;
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t col = m;
    for (std::size_t j = m; j-- > 0;) {
      if (e.is_pivot[j] || R(i, j) == 0) continue;
      mpz_gcd(g.get_mpz_t(), R(i, j).get_mpz_t(), N.get_mpz_t());
      if (g == 1) {
        col = j;
        break;
      }
      if (!factor && g != N) factor = g;
    }
    if (col == m) throw NoInvertibleMinor("no invertible r×r minor of M modulo N found", factor);
    mpz_invert(inv.get_mpz_t(), R(i, col).get_mpz_t(), N.get_mpz_t());
    for (std::size_t j = 0; j < m; ++j) R(i, j) = mod_floor(R(i, j) * inv, N);
    for (std::size_t k = 0; k < r; ++k) {
      if (k == i || R(k, col) == 0) continue;
      f = R(k, col);
      for (std::size_t j = 0; j < m; ++j) R(k, j) = mod_floor(R(k, j) - f * R(i, j), N);
    }
    e.pivot.push_back(col);
    e.is_pivot[col] = true;
  }
  return e;
}

mpz_class checked_modulus(const mpz_class& N) {
  mpz_class a = abs(N);
  if (a < 2) throw InvalidArgument("modulus must satisfy |N| >= 2");
  return a;
}

}  // namespace

LatticeBasis ortho_mod_basis(const LatticeBasis& Mb, const mpz_class& N_in) {
  const mpz_class N = checked_modulus(N_in);
  const IntegerMatrix& M = Mb.matrix();
  const std::size_t r = M.rows(), m = M.cols();
  Echelon e = unit_echelon(M, N);
  IntegerMatrix B(m, m);
  std::size_t row = 0;
  // Free column f: e_f - sum_t R(t,f) e_{pivot t}; these are the [1 | M~] rows.
  for (std::size_t f = 0; f < m; ++f) {
    if (e.is_pivot[f]) continue;
    B(row, f) = 1;
    for (std::size_t t = 0; t < r; ++t) B(row, e.pivot[t]) = mod_centered(-e.R(t, f), N);
    ++row;
  }
  for (std::size_t t = 0; t < r; ++t) B(row++, e.pivot[t]) = N;
  mpz_class det;
  mpz_pow_ui(det.get_mpz_t(), N.get_mpz_t(), 2 * r);
  return LatticeBasis::trusted(std::move(B), det);
}

LatticeBasis cong_mod_basis(const LatticeBasis& Mb, const mpz_class& N_in) {
  const mpz_class N = checked_modulus(N_in);
  const IntegerMatrix& M = Mb.matrix();
  const std::size_t r = M.rows(), m = M.cols();
  Echelon e = unit_echelon(M, N);
  IntegerMatrix B(m, m);
  std::size_t row = 0;
  for (std::size_t f = 0; f < m; ++f)
    if (!e.is_pivot[f]) B(row++, f) = N;
  for (std::size_t t = 0; t < r; ++t, ++row)
    for (std::size_t j = 0; j < m; ++j) B(row, j) = mod_centered(e.R(t, j), N);
  mpz_class det;
  mpz_pow_ui(det.get_mpz_t(), N.get_mpz_t(), 2 * (m - r));
  return LatticeBasis::trusted(std::move(B), det);
}

ModularLatticePair modular_lattices(const LatticeBasis& M, const mpz_class& N) {
  return {ortho_mod_basis(M, N), cong_mod_basis(M, N), checked_modulus(N), M.rank()};
}

RationalMatrix dual_basis(const LatticeBasis& B) {
  if (B.rank() != B.ambient_dim()) throw DimensionMismatch("dual_basis needs a square basis");
  return inverse(RationalMatrix(B.matrix().transpose()));
}

LatticeBasis orthogonal_complement(const LatticeBasis& Bb, const ComplementParams& params) {
  const IntegerMatrix& B = Bb.matrix();
  const std::size_t k = B.rows(), m = B.cols();
  if (k >= m) throw InvalidArgument("orthogonal_complement needs rank < ambient dimension");
  if (params.k_multiplier < 1) throw InvalidArgument("K multiplier must be >= 1");
  if (params.method == ComplementMethod::integer_kernel)
    return lll_reduce(LatticeBasis(left_integer_kernel(B.transpose())), params.reduction).basis;

  // K = ceil(2^l * prod ||b_i||), l = (m-1)/2 + (m-k)(m-k-1)/4, rounded up.
  const std::size_t c = m - k;
  const std::size_t l = (2 * (m - 1) + c * (c - 1) + 3) / 4;
  mpz_class K = 1;
  K <<= static_cast<mp_bitcnt_t>(l);
  for (std::size_t i = 0; i < k; ++i) K *= isqrt_ceil(norm_sq(B.row(i)));
  K *= params.k_multiplier;

  ReductionParams rp = params.reduction;
  rp.max_swaps.reset();
  for (int attempt = 0;; ++attempt) {
    IntegerMatrix Bt = B.transpose();
    Bt *= K;
    IntegerMatrix Q = hstack(Bt, IntegerMatrix::identity(m));
    rp.certify = attempt > 0;
    lll_reduce_rows(Q, rp);
    bool ok = true;
    for (std::size_t i = 0; i < c && ok; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (Q(i, j) != 0) {
          ok = false;
          break;
        }
    if (ok) {
      IntegerMatrix C = Q.row_range(0, c).col_range(k, k + m);
      return lll_reduce(LatticeBasis(std::move(C)), params.reduction).basis;
    }
    if (attempt >= 4) throw RankMismatch("orthogonal_complement: kernel vectors not separated");
    K *= K;
  }
}

LatticeBasis completion(const LatticeBasis& B, const ComplementParams& params) {
  if (B.rank() == B.ambient_dim()) return LatticeBasis(IntegerMatrix::identity(B.ambient_dim()));
  return orthogonal_complement(orthogonal_complement(B, params), params);
}

LatticeBasis p_completion(const LatticeBasis& B, const mpz_class& p) {
  if (!is_probable_prime(p)) throw CompositeModulus("p_completion: modulus is not prime");
  IntegerMatrix cur = B.matrix();
  mpz_class det = B.gram_det();
  const mpz_class p2 = p * p;
  // Each pass adjoins x = α·B/p for a whole kernel basis at once.  The kernel
  // basis is in reduced echelon form, so α_k is 1 at its own pivot and 0 at
  // the others: replacing the pivot rows scales the volume by exactly p^{-d}.
  for (;;) {
    auto ker = kernel_mod_p(cur, p);
    if (ker.empty()) break;
    std::vector<std::pair<std::size_t, IntVector>> repl;
    for (auto& alpha : ker) {
      std::size_t i = 0;
      while (alpha[i] == 0) ++i;
      for (auto& a : alpha) a = mod_centered(a, p);
      IntVector x = vec_mat(alpha, cur);
      for (auto& v : x) {
        if (!mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) throw InvalidArgument("p_completion: kernel lift not divisible");
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
      }
      repl.emplace_back(i, std::move(x));
      mpz_divexact(det.get_mpz_t(), det.get_mpz_t(), p2.get_mpz_t());
    }
    for (auto& [i, x] : repl) cur.set_row(i, x);
    // Untouched rows keep their order in front, so an already reduced prefix
    // stays reduced and a later LLL only has to insert the new vectors.
    std::vector<bool> moved(cur.rows(), false);
    for (const auto& [i, x] : repl) moved[i] = true;
    IntegerMatrix next(0, cur.cols());
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < cur.rows(); ++i)
        if (moved[i] == (pass == 1)) next = vstack(next, cur.row_range(i, i + 1));
    cur = std::move(next);
  }
  return LatticeBasis::trusted(std::move(cur), det);
}

IntVector phi_B(std::span<const mpz_class> u, const LatticeBasis& B) {
  if (u.size() != B.ambient_dim()) throw DimensionMismatch("phi_B: dimension");
  IntVector out(B.rank());
  for (std::size_t i = 0; i < B.rank(); ++i) out[i] = dot(u, B.matrix().row(i));
  return out;
}

}  // namespace hlp
