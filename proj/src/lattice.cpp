#include "hlp/lattice.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "hlp/errors.hpp"
#include "hlp/linalg.hpp"
#include "hlp/lll.hpp"

namespace hlp {

double log2_mpz(const mpz_class& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double d = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log2(d) + static_cast<double>(e);
}

double log2_mpq(const mpq_class& x) { return log2_mpz(x.get_num()) - log2_mpz(x.get_den()); }

LatticeBasis::LatticeBasis(IntegerMatrix rows) : b_(std::move(rows)) {
  if (b_.rows() < 1 || b_.cols() < 1) throw InvalidArgument("lattice basis must be non-empty");
  if (b_.rows() > b_.cols()) throw SingularBasis("more basis vectors than the ambient dimension");
  gram_det_ = determinant(gram(b_));
  if (gram_det_ == 0) throw SingularBasis("basis rows are linearly dependent");
  sigma_sq_ = hlp::sigma_sq(b_);
}

LatticeBasis LatticeBasis::trusted(IntegerMatrix rows, mpz_class gram_det) {
  LatticeBasis b;
  b.b_ = std::move(rows);
  b.gram_det_ = std::move(gram_det);
  b.sigma_sq_ = hlp::sigma_sq(b.b_);
  return b;
}

double LatticeBasis::sigma() const { return std::sqrt(sigma_sq_.get_d()); }
double LatticeBasis::log2_sigma() const { return 0.5 * log2_mpq(sigma_sq_); }

mpq_class sigma_sq(const IntegerMatrix& b) {
  mpz_class s;
  for (std::size_t i = 0; i < b.rows(); ++i) s += norm_sq(b.row(i));
  mpq_class q(s, b.rows());
  q.canonicalize();
  return q;
}

double sigma_size(const LatticeBasis& b) { return b.sigma(); }

Volume lattice_volume(const LatticeBasis& b) {
  if (b.gram_det() == 0) throw SingularBasis("zero Gram determinant");
  double l = 0.5 * log2_mpz(b.gram_det());
  return {b.gram_det(), std::exp2(l), l};
}

MinimaProfile successive_minima_bruteforce(const LatticeBasis& lb, double radius) {
  const IntegerMatrix& b = lb.matrix();
  const std::size_t n = b.rows(), m = b.cols();
  if (n > 5) throw EnumerationBudgetExceeded("oracle limited to rank <= 5");
  if (!(radius > 0)) throw InvalidArgument("radius must be positive");

  // |x_i| <= R * ||d_i|| with d_i the dual vectors; ||d_i||^2 = (G^{-1})_{ii}.
  RationalMatrix ginv = inverse(RationalMatrix(gram(b)));
  std::vector<std::int64_t> bound(n);
  double box = 1;
  for (std::size_t i = 0; i < n; ++i) {
    double bi = std::floor(radius * std::sqrt(ginv(i, i).get_d()) * (1 + 1e-12) + 1e-9);
    bound[i] = static_cast<std::int64_t>(bi);
    box *= 2.0 * bi + 1;
  }
  if (box > 1e7) throw EnumerationBudgetExceeded("coefficient box exceeds 1e7 points");

  // Entries must keep x*B inside int64.
  double mag = 0;
  for (std::size_t i = 0; i < n; ++i) mag += static_cast<double>(bound[i]) * std::ldexp(1.0, int(b.max_bits()));
  if (mag > 4e18) throw EnumerationBudgetExceeded("entries too large for the oracle");

  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) rows[i][j] = b(i, j).get_si();

  const __int128 r2 = static_cast<__int128>(std::floor(radius * radius * (1 + 1e-12) + 1e-9));
  IntegerMatrix chosen(0, n);
  MinimaProfile out;

  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::int64_t> x(n), best_x;
    std::vector<std::int64_t> v(m, 0);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = -bound[i];
      for (std::size_t j = 0; j < m; ++j) v[j] += x[i] * rows[i][j];
    }
    __int128 best = -1;
    for (;;) {
      __int128 s = 0;
      for (std::size_t j = 0; j < m; ++j) s += static_cast<__int128>(v[j]) * v[j];
      if (s > 0 && s <= r2 && (best < 0 || s < best || (s == best && x < best_x))) {
        IntVector xv(n);
        for (std::size_t i = 0; i < n; ++i) xv[i] = static_cast<long>(x[i]);
        IntegerMatrix t = chosen;
        t.append_row(xv);
        if (rank(t) == k + 1) {
          best = s;
          best_x = x;
        }
      }
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (x[i] < bound[i]) {
          ++x[i];
          for (std::size_t j = 0; j < m; ++j) v[j] += rows[i][j];
          break;
        }
        for (std::size_t j = 0; j < m; ++j) v[j] -= 2 * bound[i] * rows[i][j];
        x[i] = -bound[i];
      }
      if (i == n) break;
    }
    if (best < 0) throw RadiusTooSmall("radius does not certify all successive minima");
    IntVector xv(n);
    for (std::size_t i = 0; i < n; ++i) xv[i] = static_cast<long>(best_x[i]);
    chosen.append_row(xv);
    mpz_class e = norm_sq(vec_mat(xv, b));
    out.exact_sq.push_back(e);
    out.values.push_back(std::sqrt(e.get_d()));
  }
  return out;
}

MinimaProfile successive_minima(const LatticeBasis& b) {
  auto red = lll_reduce(b, ReductionParams{});
  mpz_class mx = 0;
  for (std::size_t i = 0; i < red.basis.rank(); ++i) mx = std::max(mx, norm_sq(red.basis.matrix().row(i)));
  return successive_minima_bruteforce(red.basis, std::sqrt(mx.get_d()) * (1 + 1e-9) + 1e-9);
}

}  // namespace hlp
