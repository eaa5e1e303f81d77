#include <algorithm>
#include <cmath>

#include "hlp/errors.hpp"
#include "hlp/transforms.hpp"
#include "support.hpp"

using namespace hlp;
using namespace testing;

namespace {

// Every row of c is ≡ x·M (mod N) for some x ∈ (Z/NZ)^r, by exhaustion over x.
bool rows_congruent_to_combinations(const IntegerMatrix& c, const IntegerMatrix& M, long N) {
  const std::size_t r = M.rows(), m = M.cols();
  std::vector<IntVector> span;
  std::vector<long> x(r, 0);
  for (;;) {
    IntVector v(m, 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < m; ++j) v[j] += x[i] * M(i, j);
    for (auto& e : v) e = mod_floor(e, N);
    span.push_back(std::move(v));
    std::size_t i = 0;
    while (i < r && ++x[i] == N) x[i++] = 0;
    if (i == r) break;
  }
  for (std::size_t k = 0; k < c.rows(); ++k) {
    IntVector w(c.row(k).begin(), c.row(k).end());
    for (auto& e : w) e = mod_floor(e, N);
    if (std::find(span.begin(), span.end(), w) == span.end()) return false;
  }
  return true;
}

// #{u ∈ (Z/NZ)^m : M·uᵀ ≡ 0}, by exhaustion.
long count_orthogonal_residues(const IntegerMatrix& M, long N) {
  const std::size_t m = M.cols();
  std::vector<long> u(m, 0);
  long count = 0;
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < M.rows() && ok; ++i) {
      mpz_class s = 0;
      for (std::size_t t = 0; t < m; ++t) s += M(i, t) * u[t];
      ok = mod_floor(s, N) == 0;
    }
    count += ok;
    std::size_t t = 0;
    while (t < m && ++u[t] == N) u[t++] = 0;
    if (t == m) return count;
  }
}

IntegerMatrix random_mod_matrix(Rng& g, std::size_t r, std::size_t m, const mpz_class& N) {
  IntegerMatrix a(r, m);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t t = 0; t < m; ++t) a(i, t) = g.below(N);
  return a;
}

ComplementParams kernel_method() {
  ComplementParams cp;
  cp.method = ComplementMethod::integer_kernel;
  return cp;
}

}  // namespace

TEST_CASE("ortho_mod_basis examples") {
  LatticeBasis o = ortho_mod_basis(LatticeBasis(mat({{1, 1}})), 5);
  CHECK(o.matrix().rows() == 2);
  CHECK(orthogonal_mod(mat({{1, 1}}), o.matrix(), 5));
  CHECK(o.gram_det() == 25);
  CHECK(same_lattice(o.matrix(), mat({{1, -1}, {0, 5}})));

  o = ortho_mod_basis(LatticeBasis(mat({{1, 0}})), 3);
  CHECK(same_lattice(o.matrix(), mat({{0, 1}, {3, 0}})));

  o = ortho_mod_basis(LatticeBasis(mat({{2, 1, 1}})), 7);
  CHECK(o.rank() == 3);
  CHECK(orthogonal_mod(mat({{2, 1, 1}}), o.matrix(), 7));
  CHECK(o.gram_det() == 49);
}

TEST_CASE("cong_mod_basis examples") {
  LatticeBasis c = cong_mod_basis(LatticeBasis(mat({{1, 1}})), 5);
  CHECK(c.gram_det() == 25);
  for (std::size_t i = 0; i < 2; ++i) CHECK(mod_floor(c.matrix()(i, 0) - c.matrix()(i, 1), 5) == 0);
  CHECK(same_lattice(c.matrix(), mat({{5, 0}, {1, 1}})));
  c = cong_mod_basis(LatticeBasis(mat({{1, 0}})), 3);
  CHECK(same_lattice(c.matrix(), mat({{1, 0}, {0, 3}})));
}

TEST_CASE("no invertible minor") {
  CHECK_THROWS_AS(ortho_mod_basis(LatticeBasis(mat({{5, 10}})), 5), NoInvertibleMinor);
  try {
    ortho_mod_basis(LatticeBasis(mat({{2, 4}})), 6);
    FAIL("expected NoInvertibleMinor");
  } catch (const NoInvertibleMinor& e) {
    if (e.factor()) CHECK(6 % *e.factor() == 0);
  }
}

TEST_CASE("modular lattices: counting oracle, volumes and duality") {
  Rng g(41);
  int done = 0;
  for (int it = 0; it < 300 && done < 100; ++it) {
    const std::size_t m = 2 + g.below(std::uint64_t{4}), r = 1 + g.below(std::uint64_t{m - 1});
    const long N = 2 + static_cast<long>(g.below(std::uint64_t{10}));
    IntegerMatrix Mraw = random_mod_matrix(g, r, m, N);
    if (rank(Mraw) != r) continue;
    LatticeBasis M(Mraw);
    ModularLatticePair pair;
    try {
      pair = modular_lattices(M, N);
    } catch (const NoInvertibleMinor&) {
      continue;
    }
    ++done;
    const mpz_class Nm = pow_mpz(N, m);
    // Vol(orth)·Vol(cong) = N^m
    CHECK(pair.orth_basis.gram_det() * pair.cong_basis.gram_det() == Nm * Nm);
    CHECK(pair.orth_basis.gram_det() == pow_mpz(N, 2 * r));
    CHECK(orthogonal_mod(M.matrix(), pair.orth_basis.matrix(), N));
    // index of M^⊥_N in Z^m is N^m / #solutions
    if (std::pow(double(N), double(m)) <= 1e5) {
      long cnt = count_orthogonal_residues(M.matrix(), N);
      CHECK(pair.orth_basis.gram_det() * cnt * cnt == Nm * Nm);
    }
    // rows of M_N lie in M + N·Z^m and M ⊆ M_N
    CHECK(rows_congruent_to_combinations(pair.cong_basis.matrix(), M.matrix(), N));
    CHECK(rows_in_lattice(M.matrix(), pair.cong_basis.matrix()));
    // M_N = N·(M^⊥_N)^∨
    RationalMatrix d = dual_basis(pair.orth_basis);
    d *= mpq_class(N);
    REQUIRE(d.is_integral());
    CHECK(same_lattice(d.to_integer(), pair.cong_basis.matrix()));
  }
  CHECK(done == 100);
}

TEST_CASE("dual_basis examples") {
  CHECK(dual_basis(LatticeBasis(IntegerMatrix::identity(3))) == RationalMatrix(IntegerMatrix::identity(3)));
  RationalMatrix d = dual_basis(LatticeBasis(mat({{2, 0}, {0, 4}})));
  CHECK(d(0, 0) == mpq_class(1, 2));
  CHECK(d(1, 1) == mpq_class(1, 4));
  CHECK(d(0, 1) == 0);
  LatticeBasis o = ortho_mod_basis(LatticeBasis(mat({{1, 1}})), 5);
  RationalMatrix od = dual_basis(o);
  od *= mpq_class(5);
  CHECK(same_lattice(od.to_integer(), cong_mod_basis(LatticeBasis(mat({{1, 1}})), 5).matrix()));
  CHECK_THROWS_AS(dual_basis(LatticeBasis(mat({{1, 2, 3}}))), DimensionMismatch);
}

TEST_CASE("orthogonal_complement examples") {
  LatticeBasis c = orthogonal_complement(LatticeBasis(mat({{1, 0, 0}})));
  CHECK(same_lattice(c.matrix(), mat({{0, 1, 0}, {0, 0, 1}})));
  c = orthogonal_complement(LatticeBasis(mat({{1, 2, 3}})));
  CHECK(c.rank() == 2);
  CHECK(c.gram_det() == 14);
  c = orthogonal_complement(LatticeBasis(mat({{2, 4}})));
  CHECK(((c.matrix() == mat({{2, -1}})) || (c.matrix() == mat({{-2, 1}}))));
}

TEST_CASE("completion examples") {
  CHECK(same_lattice(completion(LatticeBasis(mat({{2, 0}, {0, 2}}))).matrix(), IntegerMatrix::identity(2)));
  CHECK(same_lattice(completion(LatticeBasis(mat({{2, 4}}))).matrix(), mat({{1, 2}})));
  LatticeBasis full(mat({{1, 0, 1}, {0, 1, 1}}));
  CHECK(completion(full).gram_det() == full.gram_det());
}

TEST_CASE("complements and completions on random bases") {
  Rng g(42);
  for (int it = 0; it < 60; ++it) {
    const std::size_t m = 2 + g.below(std::uint64_t{5}), n = 1 + g.below(std::uint64_t{std::min<std::size_t>(4, m - 1)});
    IntegerMatrix a = random_matrix(g, n, m, 12);
    if (rank(a) != n) continue;
    LatticeBasis L(a);
    LatticeBasis perp = orthogonal_complement(L);
    CHECK(perp.rank() == m - n);
    for (std::size_t i = 0; i < perp.rank(); ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(dot(perp.matrix().row(i), a.row(j)) == 0);
    LatticeBasis comp = completion(L);
    LatticeBasis comp2 = completion(L, kernel_method());
    CHECK(same_lattice(comp.matrix(), comp2.matrix()));          // two independent constructions
    CHECK(same_lattice(orthogonal_complement(perp).matrix(), comp.matrix()));  // (Λ^⊥)^⊥ = Λ̄
    CHECK(completion(comp).gram_det() == comp.gram_det());     // idempotent
    CHECK(perp.gram_det() == comp.gram_det());                 // Vol(Λ^⊥) = Vol(Λ̄)
    CHECK(comp.gram_det() <= L.gram_det());
    CHECK(rows_in_lattice(a, comp.matrix()));
    // the index is finite: L.gram_det / comp.gram_det is a perfect square integer
    mpz_class q = L.gram_det() / comp.gram_det();
    CHECK(q * comp.gram_det() == L.gram_det());
    CHECK(mpz_perfect_square_p(q.get_mpz_t()) != 0);
  }
}

TEST_CASE("complement with a generous K multiplier") {
  ComplementParams cp;
  cp.k_multiplier = mpz_class(1) << 40;
  LatticeBasis c = orthogonal_complement(LatticeBasis(mat({{3, 5, 7, 11}})), cp);
  CHECK(c.gram_det() == 9 + 25 + 49 + 121);
  cp.k_multiplier = 0;
  CHECK_THROWS_AS(orthogonal_complement(LatticeBasis(mat({{1, 2}})), cp), InvalidArgument);
}

TEST_CASE("p_completion examples") {
  CHECK(same_lattice(p_completion(LatticeBasis(mat({{2, 4}})), 2).matrix(), mat({{1, 2}})));
  CHECK(same_lattice(p_completion(LatticeBasis(mat({{3, 0}, {0, 1}})), 2).matrix(), mat({{3, 0}, {0, 1}})));
  LatticeBasis pc = p_completion(LatticeBasis(mat({{2, 0}, {1, 1}})), 2);
  CHECK(kernel_mod_p(pc.matrix(), 2).empty());
  CHECK(same_lattice(pc.matrix(), IntegerMatrix::identity(2)));
  CHECK_THROWS_AS(p_completion(LatticeBasis(mat({{2, 4}})), 4), CompositeModulus);
}

TEST_CASE("p_completion removes exactly the p-part of the index") {
  Rng g(43);
  const long ps[] = {2, 3, 5};
  for (int it = 0; it < 60; ++it) {
    const std::size_t m = 2 + g.below(std::uint64_t{4}), n = 1 + g.below(std::uint64_t{m - 1});
    const long p = ps[g.below(std::uint64_t{3})];
    IntegerMatrix a = random_matrix(g, n, m, 4);
    if (rank(a) != n) continue;
    // inflate the index by a random sublattice of p-power and small other index
    IntegerMatrix T = random_matrix(g, n, n, 3);
    if (determinant(T) == 0) continue;
    IntegerMatrix b = T * a;
    LatticeBasis B(b);
    LatticeBasis pc = p_completion(B, p);
    CHECK(kernel_mod_p(pc.matrix(), p).empty());
    CHECK(rows_in_lattice(b, pc.matrix()));
    mpz_class ratio = B.gram_det() / pc.gram_det();
    CHECK(ratio * pc.gram_det() == B.gram_det());
    mpz_class rest = ratio;
    while (rest % p == 0) rest /= p;
    CHECK(rest == 1);  // index is a power of p
    LatticeBasis full = completion(B, kernel_method());
    mpz_class leftover = pc.gram_det() / full.gram_det();
    CHECK(leftover % p != 0);  // nothing p-primary left
  }
}

TEST_CASE("phi_B") {
  LatticeBasis B(mat({{1, 0, 0}, {0, 1, 0}}));
  CHECK(phi_B(IntVector{0, 0, 1}, B) == IntVector{0, 0});
  CHECK(phi_B(IntVector{1, 2, 3}, B) == IntVector{1, 2});
  CHECK_THROWS_AS(phi_B(IntVector{1, 2}, B), DimensionMismatch);
  Rng g(44);
  for (int it = 0; it < 50; ++it) {
    IntegerMatrix a = random_matrix(g, 3, 6, 20);
    if (rank(a) != 3) continue;
    LatticeBasis L(a);
    IntegerMatrix u = random_matrix(g, 1, 6, 50);
    IntVector ph = phi_B(u.row(0), L);
    // ‖Φ(u)‖² ≤ ‖u‖²·n·σ²
    CHECK(mpq_class(norm_sq(ph)) <= mpq_class(norm_sq(u.row(0))) * 3 * L.sigma_sq());
  }
}

TEST_CASE("transference products for tiny modular lattices") {
  Rng g(45);
  int done = 0;
  for (int it = 0; it < 200 && done < 25; ++it) {
    const std::size_t m = 2 + g.below(std::uint64_t{3}), r = 1 + g.below(std::uint64_t{m - 1});
    const long N = 3 + static_cast<long>(g.below(std::uint64_t{20}));
    IntegerMatrix a = random_mod_matrix(g, r, m, N);
    if (rank(a) != r) continue;
    ModularLatticePair pair;
    try {
      pair = modular_lattices(LatticeBasis(a), N);
    } catch (const NoInvertibleMinor&) {
      continue;
    }
    ++done;
    MinimaProfile lo = successive_minima(pair.orth_basis), lc = successive_minima(pair.cong_basis);
    for (std::size_t j = 0; j < m; ++j) {
      // λ_j(M^⊥_N)² · λ_{m−j+1}(M_N)² ∈ [N², m²N²]
      mpz_class prod = lo.exact_sq[j] * lc.exact_sq[m - 1 - j];
      CHECK(prod >= N * N);
      CHECK(prod <= mpz_class(m * m) * N * N);
    }
  }
  CHECK(done == 25);
}
