#include <cmath>

#include "hlp/errors.hpp"
#include "hlp/lll.hpp"
#include "support.hpp"

using namespace hlp;
using namespace testing;

namespace {

double c_of(const mpq_class& delta) { return 1.0 / (delta.get_d() - 0.25); }

// ‖b'_j‖ ≤ c^{(n−1)/2} λ_i for all j ≤ i, on the reduction-order basis.
void check_contract(const ReductionResult& res, const MinimaProfile& lam, const mpq_class& delta) {
  const std::size_t n = lam.values.size();
  const double f = std::pow(c_of(delta), (n - 1) / 2.0) * (1 + 1e-9);
  const IntegerMatrix& b = res.lll_order;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) CHECK(std::sqrt(norm_sq(b.row(j)).get_d()) <= f * lam.values[i]);
}

}  // namespace

TEST_CASE("identity is already reduced") {
  ReductionResult r = lll_reduce(LatticeBasis(IntegerMatrix::identity(4)));
  for (std::size_t i = 0; i < 4; ++i) CHECK(norm_sq(r.basis.matrix().row(i)) == 1);
  CHECK(r.stats.swap_count == 0);
}

TEST_CASE("small examples satisfy the LLL contract") {
  ReductionParams p;
  p.delta = mpq_class(3, 4);
  LatticeBasis b(mat({{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}}));
  MinimaProfile lam = successive_minima(b);
  CHECK(lam.exact_sq[0] == 1);
  ReductionResult r = lll_reduce(b, p);
  CHECK(norm_sq(r.basis.matrix().row(0)) == 1);
  check_contract(r, lam, p.delta);

  LatticeBasis b2(mat({{201, 37}, {1648, 297}}));
  ReductionResult r2 = lll_reduce(b2);
  MinimaProfile lam2 = successive_minima(b2);
  const double bound = std::sqrt(c_of(mpq_class(99, 100))) * lam2.values[1];
  CHECK(std::sqrt(norm_sq(r2.basis.matrix().row(0)).get_d()) <= bound);
  CHECK(std::sqrt(norm_sq(r2.basis.matrix().row(1)).get_d()) <= bound);
}

TEST_CASE("reduction preserves the lattice and certifies exactly") {
  Rng g(31);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 1 + g.below(std::uint64_t{4}), m = n + g.below(std::uint64_t{3});
    IntegerMatrix a = random_matrix(g, n, m, 1000);
    if (rank(a) != n) continue;
    LatticeBasis b(a);
    ReductionResult r = lll_reduce(b);
    CHECK(r.basis.gram_det() == b.gram_det());
    CHECK(determinant(gram(r.basis.matrix())) == b.gram_det());
    CHECK(same_lattice(r.basis.matrix(), a));
    CHECK(is_lll_reduced(r.lll_order, mpq_class(99, 100)));
    CHECK(r.stats.certified);
    CHECK(r.stats.norms.size() == n);
    for (std::size_t i = 1; i < n; ++i) CHECK(r.stats.norms[i - 1] <= r.stats.norms[i]);
    if (n <= 4) check_contract(r, successive_minima(b), mpq_class(99, 100));
  }
}

TEST_CASE("large entries") {
  Rng g(32);
  IntegerMatrix a(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) a(i, j) = g.bits(300) - g.bits(300);
  LatticeBasis b(a);
  ReductionResult r = lll_reduce(b);
  CHECK(is_lll_reduced(r.lll_order, mpq_class(99, 100)));
  CHECK(same_lattice(r.basis.matrix(), a));
}

TEST_CASE("determinism and ordering") {
  Rng g(33);
  IntegerMatrix a = random_matrix(g, 5, 7, 1 << 20);
  ReductionResult r1 = lll_reduce(LatticeBasis(a)), r2 = lll_reduce(LatticeBasis(a));
  CHECK(r1.basis.matrix() == r2.basis.matrix());
  CHECK(r1.lll_order == r2.lll_order);

  IntegerMatrix s = sort_by_norm(mat({{0, 2}, {1, 0}, {0, -1}, {-1, 0}}));
  CHECK(s == mat({{-1, 0}, {0, -1}, {1, 0}, {0, 2}}));
}

TEST_CASE("parameter and budget errors") {
  CHECK_THROWS_AS(validate_delta(mpq_class(1, 4)), ParamOutOfRange);
  CHECK_THROWS_AS(validate_delta(1), ParamOutOfRange);
  ReductionParams p;
  p.delta = 1;
  CHECK_THROWS_AS(lll_reduce(LatticeBasis(IntegerMatrix::identity(2)), p), ParamOutOfRange);
  p.delta = mpq_class(99, 100);
  p.max_swaps = 0;
  CHECK_THROWS_AS(lll_reduce(LatticeBasis(mat({{1648, 297}, {201, 37}})), p), BudgetExceeded);
  CHECK_FALSE(is_lll_reduced(mat({{1648, 297}, {201, 37}}), mpq_class(99, 100)));
}
