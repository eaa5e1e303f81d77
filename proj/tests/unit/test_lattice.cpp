#include <cmath>

#include "hlp/errors.hpp"
#include "hlp/lattice.hpp"
#include "support.hpp"

using namespace hlp;
using namespace testing;

TEST_CASE("sigma examples") {
  CHECK(sigma_size(LatticeBasis(IntegerMatrix::identity(2))) == doctest::Approx(1));
  CHECK(sigma_size(LatticeBasis(mat({{3, 4}}))) == doctest::Approx(5));
  LatticeBasis b(mat({{1, 1}, {1, -1}}));
  CHECK(b.sigma_sq() == 2);
  CHECK(b.sigma() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("volume examples") {
  CHECK(lattice_volume(LatticeBasis(IntegerMatrix::identity(3))).value == doctest::Approx(1));
  CHECK(lattice_volume(LatticeBasis(mat({{2, 0}, {0, 3}}))).squared == 36);
  Volume v = lattice_volume(LatticeBasis(mat({{1, 2, 3}})));
  CHECK(v.squared == 14);
  CHECK(v.value == doctest::Approx(std::sqrt(14.0)));
  CHECK_THROWS_AS(LatticeBasis(mat({{1, 2}, {2, 4}})), SingularBasis);
}

TEST_CASE("Gram determinant, Hadamard and sigma bounds on random bases") {
  Rng g(21);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = 1 + g.below(std::uint64_t{4}), m = n + g.below(std::uint64_t{3});
    IntegerMatrix a = random_matrix(g, n, m, 30);
    if (rank(a) != n) continue;
    LatticeBasis b(a);
    CHECK(b.gram_det() == cofactor_det(gram(a)));
    mpz_class prod = 1;
    for (std::size_t i = 0; i < n; ++i) prod *= norm_sq(a.row(i));
    CHECK(b.gram_det() <= prod);  // Vol² ≤ Π‖v‖²
    // σ^{2n} ≥ Vol²
    mpq_class s = 1;
    for (std::size_t i = 0; i < n; ++i) s *= b.sigma_sq();
    CHECK(s >= mpq_class(b.gram_det()));
  }
}

TEST_CASE("successive minima examples") {
  auto p = successive_minima_bruteforce(LatticeBasis(IntegerMatrix::identity(2)), 2);
  CHECK(p.exact_sq == std::vector<mpz_class>{1, 1});
  p = successive_minima_bruteforce(LatticeBasis(mat({{2, 0}, {0, 3}})), 4);
  CHECK(p.exact_sq == std::vector<mpz_class>{4, 9});

  // Independent enumeration: a(5,0) + b(3,1), |a|,|b| <= 10.
  long best = -1;
  for (long a = -10; a <= 10; ++a)
    for (long b = -10; b <= 10; ++b) {
      if (!a && !b) continue;
      long x = 5 * a + 3 * b, y = b, n2 = x * x + y * y;
      if (best < 0 || n2 < best) best = n2;
    }
  p = successive_minima_bruteforce(LatticeBasis(mat({{5, 0}, {3, 1}})), 6);
  CHECK(p.exact_sq[0] == best);
  CHECK(best == 5);
  CHECK(p.exact_sq[1] == 5);  // (-2,1) and (1,2) are independent

  CHECK_THROWS_AS(successive_minima_bruteforce(LatticeBasis(IntegerMatrix::identity(2)), 0.5), RadiusTooSmall);
  CHECK_THROWS_AS(successive_minima_bruteforce(LatticeBasis(IntegerMatrix::identity(6)), 2), EnumerationBudgetExceeded);
}

TEST_CASE("Minkowski bounds hold for oracle minima") {
  Rng g(22);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 2 + g.below(std::uint64_t{2}), m = n + g.below(std::uint64_t{2});
    IntegerMatrix a = random_matrix(g, n, m, 6);
    if (rank(a) != n) continue;
    LatticeBasis b(a);
    MinimaProfile p = successive_minima(b);
    REQUIRE(p.values.size() == n);
    const double vol = lattice_volume(b).value;
    double prod = 1;
    for (std::size_t k = 1; k <= n; ++k) {
      prod *= p.values[k - 1];
      if (k > 1) CHECK(p.values[k - 1] >= p.values[k - 2]);
      CHECK(std::pow(prod, 1.0 / k) <= std::sqrt(2.0 * n / 3.0) * std::pow(vol, 1.0 / n) * (1 + 1e-9));
    }
    CHECK(vol <= prod * (1 + 1e-9));
  }
}
