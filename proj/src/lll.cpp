#include "hlp/lll.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hlp/errors.hpp"

namespace hlp {

namespace {

using ld = long double;

ld to_ld(const mpz_class& z) {
  const int s = mpz_sgn(z.get_mpz_t());
  if (s == 0) return 0;
  const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
  thread_local mpz_class t;
  unsigned long long top;
  long shift = 0;
  if (bits <= 64) {
    mpz_abs(t.get_mpz_t(), z.get_mpz_t());
  } else {
    shift = static_cast<long>(bits - 64);
    mpz_abs(t.get_mpz_t(), z.get_mpz_t());
    mpz_tdiv_q_2exp(t.get_mpz_t(), t.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  }
  static_assert(sizeof(mp_limb_t) == 8);
  top = mpz_getlimbn(t.get_mpz_t(), 0);
  ld v = std::ldexp(static_cast<ld>(top), static_cast<int>(shift));
  return s < 0 ? -v : v;
}

// q is an integer-valued long double.
void from_ld(mpz_class& out, ld q) {
  if (std::fabs(q) < 9.0e18L) {
    out = static_cast<long>(std::llround(q));
    return;
  }
  int e = 0;
  ld f = std::frexp(q, &e);  // q = f * 2^e, 0.5 <= |f| < 1
  long long mant = std::llround(std::ldexp(f, 63));
  out = static_cast<long>(mant);
  if (e > 63) out <<= static_cast<mp_bitcnt_t>(e - 63);
  else out >>= static_cast<mp_bitcnt_t>(63 - e);
}

void submul_row(IntegerMatrix& b, std::size_t k, std::size_t j, const mpz_class& q) {
  auto rk = b.row(k);
  auto rj = b.row(j);
  if (q.fits_slong_p()) {
    long qs = q.get_si();
    if (qs == 1) {
      for (std::size_t t = 0; t < rk.size(); ++t) rk[t] -= rj[t];
    } else if (qs == -1) {
      for (std::size_t t = 0; t < rk.size(); ++t) rk[t] += rj[t];
    } else if (qs > 0) {
      for (std::size_t t = 0; t < rk.size(); ++t)
        mpz_submul_ui(rk[t].get_mpz_t(), rj[t].get_mpz_t(), static_cast<unsigned long>(qs));
    } else {
      for (std::size_t t = 0; t < rk.size(); ++t)
        mpz_addmul_ui(rk[t].get_mpz_t(), rj[t].get_mpz_t(), static_cast<unsigned long>(-qs));
    }
    return;
  }
  for (std::size_t t = 0; t < rk.size(); ++t) mpz_submul(rk[t].get_mpz_t(), rj[t].get_mpz_t(), q.get_mpz_t());
}

std::size_t row_bits(const IntegerMatrix& b, std::size_t k) {
  std::size_t m = 0;
  for (auto& x : b.row(k))
    if (x != 0) m = std::max(m, mpz_sizeinbase(x.get_mpz_t(), 2));
  return m;
}

void check_budget(const ReductionStats& st, const ReductionParams& p) {
  if (p.max_swaps && st.swap_count > *p.max_swaps)
    throw BudgetExceeded("LLL swap budget exhausted; partial basis is not reduced");
}

// Schnorr-Euchner style pass: exact basis, floating-point Gram-Schmidt in T.
// Returns false when it gives up (precision trouble); the basis is still a
// valid basis of the same lattice in that case.
template <class T>
class FloatingLll {
 public:
  FloatingLll(IntegerMatrix& b, T delta, ReductionStats& st, const ReductionParams& p)
      : b_(b), d_(b.rows()), n_(b.cols()), delta_(delta), st_(st), p_(p),
        bf_(d_, std::vector<T>(n_)), mu_(d_, std::vector<T>(d_)), a_(d_, std::vector<T>(d_)),
        c_(d_), b2_(d_) {}

  bool run() {
    if (d_ <= 1) return true;
    for (std::size_t i = 0; i < d_; ++i) refresh(i);
    c_[0] = b2_[0];
    std::size_t k = 1;
    std::uint64_t iters = 0;
    const std::uint64_t iter_cap = 2000000ULL + 400ULL * d_ * d_ * 64;
    while (k < d_) {
      if (++iters > iter_cap) return false;
      int passes = 0;
      for (;;) {
        gso_row(k);
        bool reduced = false;
        for (std::size_t jj = k; jj-- > 0;) {
          T x = mu_[k][jj];
          if (std::fabs(x) <= T(0.51)) continue;
          T q = std::nearbyint(x);
          from_ld(qz_, q);
          submul_row(b_, k, jj, qz_);
          for (std::size_t i = 0; i < jj; ++i) mu_[k][i] -= q * mu_[jj][i];
          mu_[k][jj] -= q;
          ++st_.size_reduction_count;
          reduced = true;
        }
        if (!reduced) break;
        refresh(k);
        st_.max_intermediate_bitlength = std::max(st_.max_intermediate_bitlength, row_bits(b_, k));
        if (b2_[k] == 0) throw SingularBasis("LLL: rows are linearly dependent");
        if (++passes > 60) return false;
      }
      const T m1 = mu_[k][k - 1];
      if (c_[k] < (delta_ - m1 * m1) * c_[k - 1]) {
        swap(k);
        ++st_.swap_count;
        check_budget(st_, p_);
        if (k == 1) {
          c_[0] = b2_[0];
        } else {
          --k;
        }
      } else {
        ++k;
      }
    }
    return true;
  }

 private:
  void refresh(std::size_t i) {
    auto r = b_.row(i);
    for (std::size_t j = 0; j < n_; ++j) bf_[i][j] = static_cast<T>(to_ld(r[j]));
    b2_[i] = static_cast<T>(to_ld(norm_sq(r)));
  }

  void swap(std::size_t k) {
    b_.swap_rows(k, k - 1);
    std::swap(bf_[k], bf_[k - 1]);
    std::swap(b2_[k], b2_[k - 1]);
  }

  void gso_row(std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      T r = 0;
      for (std::size_t t = 0; t < n_; ++t) r += bf_[k][t] * bf_[j][t];
      if (std::fabs(r) < kCancel * std::sqrt(b2_[k]) * std::sqrt(b2_[j]))
        r = static_cast<T>(to_ld(dot(b_.row(k), b_.row(j))));
      for (std::size_t i = 0; i < j; ++i) r -= mu_[j][i] * a_[k][i];
      a_[k][j] = r;
      mu_[k][j] = r / c_[j];
    }
    T ck = b2_[k];
    for (std::size_t j = 0; j < k; ++j) ck -= mu_[k][j] * a_[k][j];
    c_[k] = ck;
  }

  IntegerMatrix& b_;
  std::size_t d_, n_;
  // Below this relative size the floating dot product has lost too many bits.
  static constexpr T kCancel = sizeof(T) > sizeof(double) ? T(1e-11L) : T(1e-7);
  T delta_;
  ReductionStats& st_;
  const ReductionParams& p_;
  std::vector<std::vector<T>> bf_, mu_, a_;
  std::vector<T> c_, b2_;
  mpz_class qz_;
};

// Fraction-free LLL on exact integers (de Weger / Cohen 2.6.7).
// lam[k][l] = D[l+1] * mu_{k,l}, D[i] = prod_{j<i} ||b*_j||^2, D[0] = 1.
class IntegralLll {
 public:
  IntegralLll(IntegerMatrix& b, const mpq_class& delta, ReductionStats* st, const ReductionParams* p)
      : b_(b), d_(b.rows()), num_(delta.get_num()), den_(delta.get_den()), st_(st), p_(p),
        lam_(d_, std::vector<mpz_class>(d_)), D_(d_ + 1) {
    D_[0] = 1;
    mpz_class u;
    for (std::size_t i = 0; i < d_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        u = dot(b_.row(i), b_.row(j));
        for (std::size_t l = 0; l < j; ++l) {
          u = D_[l + 1] * u - lam_[i][l] * lam_[j][l];
          mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), D_[l].get_mpz_t());
        }
        if (j < i) lam_[i][j] = u;
        else D_[i + 1] = u;
      }
      if (D_[i + 1] == 0) throw SingularBasis("LLL: rows are linearly dependent");
    }
  }

  // Checks the conditions without modifying anything.
  bool reduced() const {
    for (std::size_t k = 0; k < d_; ++k)
      for (std::size_t l = 0; l < k; ++l)
        if (2 * abs(lam_[k][l]) > D_[l + 1]) return false;
    for (std::size_t k = 1; k < d_; ++k)
      if (lovasz_fails(k)) return false;
    return true;
  }

  void run() {
    std::size_t k = 1;
    while (k < d_) {
      redi(k, k - 1);
      if (lovasz_fails(k)) {
        swapi(k);
        if (st_) {
          ++st_->swap_count;
          ++st_->exact_swaps;
          if (p_) check_budget(*st_, *p_);
        }
        k = std::max<std::size_t>(1, k - 1);
      } else {
        for (std::size_t l = k - 1; l-- > 0;) redi(k, l);
        ++k;
      }
    }
  }

 private:
  bool lovasz_fails(std::size_t k) const {
    const mpz_class& l = lam_[k][k - 1];
    mpz_class lhs = den_ * (D_[k + 1] * D_[k - 1] + l * l);
    mpz_class rhs = num_ * D_[k] * D_[k];
    return lhs < rhs;
  }

  void redi(std::size_t k, std::size_t l) {
    const mpz_class& dl = D_[l + 1];
    if (2 * abs(lam_[k][l]) <= dl) return;
    // q = round(lam / dl)
    mpz_class q = 2 * lam_[k][l] + dl;
    mpz_class den = 2 * dl;
    mpz_fdiv_q(q.get_mpz_t(), q.get_mpz_t(), den.get_mpz_t());
    submul_row(b_, k, l, q);
    lam_[k][l] -= q * dl;
    for (std::size_t i = 0; i < l; ++i) lam_[k][i] -= q * lam_[l][i];
    if (st_) {
      ++st_->size_reduction_count;
      st_->max_intermediate_bitlength = std::max(st_->max_intermediate_bitlength, row_bits(b_, k));
    }
  }

  void swapi(std::size_t k) {
    b_.swap_rows(k, k - 1);
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam_[k][j], lam_[k - 1][j]);
    const mpz_class lam = lam_[k][k - 1];
    mpz_class B = D_[k - 1] * D_[k + 1] + lam * lam;
    mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), D_[k].get_mpz_t());
    mpz_class t;
    for (std::size_t i = k + 1; i < d_; ++i) {
      t = lam_[i][k];
      lam_[i][k] = D_[k + 1] * lam_[i][k - 1] - lam * t;
      mpz_divexact(lam_[i][k].get_mpz_t(), lam_[i][k].get_mpz_t(), D_[k].get_mpz_t());
      lam_[i][k - 1] = B * t + lam * lam_[i][k];
      mpz_divexact(lam_[i][k - 1].get_mpz_t(), lam_[i][k - 1].get_mpz_t(), D_[k + 1].get_mpz_t());
    }
    D_[k] = B;
  }

  IntegerMatrix& b_;
  std::size_t d_;
  mpz_class num_, den_;
  ReductionStats* st_;
  const ReductionParams* p_;
  std::vector<std::vector<mpz_class>> lam_;
  std::vector<mpz_class> D_;
};

}  // namespace

void validate_delta(const mpq_class& delta) {
  if (!(delta > mpq_class(1, 4) && delta < 1)) throw ParamOutOfRange("LLL delta must lie in (1/4, 1)");
}

ReductionStats lll_reduce_rows(IntegerMatrix& b, const ReductionParams& params) {
  validate_delta(params.delta);
  ReductionStats st;
  st.max_intermediate_bitlength = b.max_bits();
  if (b.rows() <= 1) {
    st.certified = true;
    return st;
  }
  const ld dfp = std::min<ld>(static_cast<ld>(params.delta.get_d()) + 0.002L,
                              (static_cast<ld>(params.delta.get_d()) + 1) / 2);
  // Doubles are several times faster than x87 long doubles; they are tried
  // first while norms stay inside their exponent range, and any failure falls
  // through to long doubles and finally to the exact pass.
  bool ok = false;
  const bool use_double = b.max_bits() <= 400;
  // A cheap δ = 1/2 pass first: it does most of the size shrinking with far
  // fewer swaps, leaving little for the pass at the target δ.
  if (use_double && dfp > 0.6L && b.rows() >= 8) FloatingLll<double>(b, 0.5, st, params).run();
  if (use_double) ok = FloatingLll<double>(b, static_cast<double>(dfp), st, params).run();
  if (!ok) ok = FloatingLll<ld>(b, dfp, st, params).run();
  if (params.certify || !ok) {
    IntegralLll ex(b, params.delta, &st, &params);
    ex.run();
    st.certified = true;
  }
  return st;
}

bool is_lll_reduced(const IntegerMatrix& b, const mpq_class& delta) {
  IntegerMatrix copy = b;
  IntegralLll ex(copy, delta, nullptr, nullptr);
  return ex.reduced();
}

IntegerMatrix sort_by_norm(const IntegerMatrix& b) {
  std::vector<mpz_class> n(b.rows());
  for (std::size_t i = 0; i < b.rows(); ++i) n[i] = norm_sq(b.row(i));
  std::vector<std::size_t> idx(b.rows());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    if (n[x] != n[y]) return n[x] < n[y];
    auto rx = b.row(x), ry = b.row(y);
    return std::lexicographical_compare(rx.begin(), rx.end(), ry.begin(), ry.end());
  });
  IntegerMatrix out(b.rows(), b.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.set_row(i, b.row(idx[i]));
  return out;
}

ReductionResult lll_reduce(const LatticeBasis& basis, const ReductionParams& params) {
  IntegerMatrix b = basis.matrix();
  ReductionStats st = lll_reduce_rows(b, params);
  IntegerMatrix sorted = sort_by_norm(b);
  if (params.provide_stats)
    for (std::size_t i = 0; i < sorted.rows(); ++i) st.norms.push_back(std::sqrt(norm_sq(sorted.row(i)).get_d()));
  return {LatticeBasis::trusted(std::move(sorted), basis.gram_det()), std::move(b), std::move(st)};
}

}  // namespace hlp
