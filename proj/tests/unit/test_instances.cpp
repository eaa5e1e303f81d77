#include <cmath>
#include <numeric>

#include "hlp/errors.hpp"
#include "hlp/instances.hpp"
#include "support.hpp"

using namespace hlp;
using namespace testing;

namespace {

GenSpec hlp_spec(std::size_t n, std::size_t m, std::size_t r, unsigned log_N, std::int64_t alpha, std::uint64_t seed) {
  GenSpec s;
  s.n = n;
  s.m = m;
  s.r = r;
  s.log_N = log_N;
  s.alpha = alpha;
  s.seed = seed;
  return s;
}

// M ≡ coefficients·L (mod N), re-verified from the stored planted data (N prime).
bool congruence_holds(const HlpInstance& inst) {
  const IntegerMatrix& C = inst.planted->coefficients;
  IntegerMatrix P = C * inst.planted->L_basis.matrix();
  const IntegerMatrix& M = inst.M_basis.matrix();
  return rows_in_span_mod_p(M, P, inst.N);
}

}  // namespace

TEST_CASE("modulus selection") {
  CHECK(smallest_prime_above_pow2(4) == 17);
  CHECK(smallest_prime_above_pow2(5) == 37);
  CHECK(smallest_prime_above_pow2(1) == 3);
  GenSpec s = hlp_spec(2, 4, 1, 20, 2, 5);
  s.prime_modulus = false;
  mpz_class N = gen_modulus(s);
  CHECK(N > pow_mpz(2, 20));
  CHECK(N < pow_mpz(2, 21));
  CHECK(N % 2 == 1);
  s.N = mpz_class(1000003);
  CHECK(gen_modulus(s) == 1000003);
}

TEST_CASE("gen_hlp is deterministic and congruent") {
  GenSpec s = hlp_spec(2, 4, 1, 60, 2, 42);
  HlpInstance a = gen_hlp(s), b = gen_hlp(s);
  CHECK(a.M_basis.matrix() == b.M_basis.matrix());
  CHECK(a.planted->L_basis.matrix() == b.planted->L_basis.matrix());
  CHECK(a.N == smallest_prime_above_pow2(60));
  CHECK(congruence_holds(a));
  CHECK(a.planted->mu_sq == a.planted->L_basis.sigma_sq());
  s.seed = 43;
  CHECK(gen_hlp(s).M_basis.matrix() != a.M_basis.matrix());

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    HlpInstance inst = gen_hlp(hlp_spec(4, 10, 3, 40, 7, seed));
    CHECK(congruence_holds(inst));
    const IntegerMatrix& L = inst.planted->L_basis.matrix();
    for (std::size_t i = 0; i < L.rows(); ++i)
      for (const auto& x : L.row(i)) CHECK(abs(x) <= 7);
    mpz_class g;
    mpz_class d = inst.planted->L_basis.gram_det();
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), inst.N.get_mpz_t());
    CHECK(g == 1);
  }
  CHECK_THROWS_AS(gen_hlp(hlp_spec(4, 4, 1, 40, 7, 1)), Error);
}

TEST_CASE("gen_nhlp noise and planted data") {
  GenSpec s = hlp_spec(2, 6, 1, 100, 3, 9);
  s.kind = GenKind::nhlp;
  s.rho = 2;
  NhlpInstance inst = gen_nhlp(s);
  const auto& P = *inst.planted;
  CHECK(P.X_basis.rows() == 1);
  CHECK(norm_sq(P.X_basis.row(0)) <= 4);
  CHECK(rank(vstack(P.L_basis.matrix(), P.X_basis)) == 3);
  // w − x ∈ L (mod N)
  CHECK(rows_in_span_mod_p(minus(inst.W_basis.matrix(), P.X_basis), P.L_basis.matrix(), inst.N));
  s.n = 5;
  CHECK_THROWS_AS(gen_nhlp(s), Error);
}

TEST_CASE("CRT-ACD instances") {
  CrtAcdInstance c = gen_crt_acd(2, 100, 5, 3);
  const HlpInstance& inst = c.instance;
  REQUIRE(c.primes.size() == 2);
  CHECK(c.primes[0] * c.primes[1] == inst.N);
  for (const auto& p : c.primes) {
    CHECK(is_probable_prime(p));
    CHECK(mpz_sizeinbase(p.get_mpz_t(), 2) == 100);
  }
  CHECK(inst.N_factorization.empty());
  CHECK(inst.m == 4);
  // Public b reduces to the residues modulo every prime: b ≡ (x, y·x).
  const IntegerMatrix& M = inst.M_basis.matrix();
  REQUIRE(M.rows() == 1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t t = 0; t < 2; ++t) {
      CHECK(mod_floor(M(0, t) - c.residues(t, i), c.primes[i]) == 0);
      CHECK(mod_floor(M(0, 2 + t) - c.residues(2, i) * c.residues(t, i), c.primes[i]) == 0);
    }
  // Reconstruct the CRT coefficients independently and check b ≡ Σ c_i b^{(i)}.
  IntegerMatrix coef(1, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    mpz_class q = inst.N / c.primes[i], inv;
    mpz_invert(inv.get_mpz_t(), q.get_mpz_t(), c.primes[i].get_mpz_t());
    coef(0, i) = q * inv;
  }
  IntegerMatrix rhs = coef * inst.planted->L_basis.matrix();
  for (std::size_t j = 0; j < 4; ++j) CHECK(mod_floor(M(0, j) - rhs(0, j), inst.N) == 0);

  CrtAcdInstance z = gen_crt_acd(3, 8, 0, 4);
  for (std::size_t i = 0; i < z.residues.rows(); ++i)
    for (const auto& x : z.residues.row(i)) CHECK(abs(x) <= 1);
  CHECK_THROWS_AS(gen_crt_acd(2, 6, 5, 1), ParamOutOfRange);

  CrtAcdInstance e = gen_crt_acd(3, 80, 8, 11);
  SolveReport rep = solve_hlp_I(e.instance);
  CHECK(rep.success.value_or(false));
}

TEST_CASE("HSSP instances") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    HlpInstance inst = gen_hssp(4, 16, 40, seed);
    CHECK(inst.planted->mu_sq <= 16);
    const IntegerMatrix& X = inst.planted->L_basis.matrix();
    for (std::size_t i = 0; i < X.rows(); ++i)
      for (const auto& x : X.row(i)) CHECK((x == 0 || x == 1));
    CHECK(congruence_holds(inst));
    CHECK(solve_hlp_I(inst).success.value_or(false));
    CHECK(solve_hlp_II(inst).success.value_or(false));
  }
  CHECK_THROWS_AS(gen_hssp(4, 4, 40, 1), ParamOutOfRange);
}

TEST_CASE("rank-2 preset and random modular bases") {
  HlpInstance inst = gen_rank2_preset(8, 40, 3, 5);
  CHECK(inst.n == 2);
  CHECK(inst.r == 1);
  CHECK(inst.planted->coefficients(0, 0) == inst.N - 1);
  CHECK(congruence_holds(inst));
  CHECK(solve_hlp_I(inst).success.value_or(false));

  LatticeBasis R = random_modular_basis(3, 8, 101, 1);
  CHECK(R.rank() == 3);
  CHECK(rank_mod_p(R.matrix(), 101) == 3);
  CHECK(random_modular_basis(3, 8, 101, 1).matrix() == R.matrix());
}

TEST_CASE("alpha for a target size") {
  // σ² ≈ m·α(α+1)/3 for uniform entries in [−α, α] on m coordinates.
  const std::int64_t a = alpha_for_log_mu(18, 100);
  CHECK(std::abs(std::log2(std::sqrt(100.0 * a * (a + 1) / 3)) - 18) < 0.01);
  HlpInstance inst = gen_hlp(hlp_spec(10, 100, 5, 80, 32767, 1));
  CHECK(std::abs(0.5 * std::log2(inst.planted->mu_sq.get_d()) - 18) < 0.5);
}

TEST_CASE("blockwise solving agrees with the direct solve") {
  HlpInstance inst = gen_hlp(hlp_spec(3, 12, 2, 80, 3, 17));
  SolveReport direct = solve_hlp_I(inst);
  REQUIRE(direct.success.value_or(false));

  BlockwiseOptions o;
  o.block_dim = 6;
  o.threads = 2;
  SolveReport bw = blockwise_solve(inst, o);
  CHECK(bw.success.value_or(false));
  CHECK(same_lattice(bw.recovered.matrix(), direct.recovered.matrix()));

  o.algo = Algorithm::II;
  CHECK(same_lattice(blockwise_solve(inst, o).recovered.matrix(), direct.recovered.matrix()));

  o.block_dim = 12;
  o.algo = Algorithm::I;
  SolveReport single = blockwise_solve(inst, o);
  CHECK(single.recovered.matrix() == direct.recovered.matrix());

  o.block_dim = 5;
  CHECK_THROWS_AS(blockwise_solve(inst, o), InvalidArgument);
  o.block_dim = 13;
  CHECK_THROWS_AS(blockwise_solve(inst, o), InvalidArgument);
}

TEST_CASE("blockwise solving of a long HSSP instance") {
  HlpInstance inst = gen_hssp(4, 64, 60, 2);
  BlockwiseOptions o;
  o.block_dim = 16;
  o.threads = 2;
  SolveReport rep = blockwise_solve(inst, o);
  CHECK(rep.success.value_or(false));
  CHECK(rep.recovered.rank() == 4);
}

TEST_CASE("counting oracle matches the closed form exhaustively") {
  CHECK(count_orthogonal_mod_oracle({1, 0}, 5) == 5);
  CHECK(count_orthogonal_mod_oracle({2, 4}, 6) == 12);
  CHECK(count_orthogonal_mod_oracle({3, 3}, 9) == 27);

  int cases = 0;
  for (long N = 2; N <= 8; ++N)
    for (std::size_t n = 1; n <= 3; ++n) {
      const std::size_t total = static_cast<std::size_t>(std::pow(N, n));
      for (std::size_t code = 1; code < total; ++code) {
        IntVector t(n);
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i, c /= N) t[i] = static_cast<long>(c % N);
        // Independent closed form: gcd(t_1, ..., t_n, N) · N^{n−1}.
        long d = N;
        for (const auto& x : t) d = std::gcd(d, x.get_si());
        const mpz_class expect = d * pow_mpz(N, n - 1);
        CHECK(count_orthogonal_mod_oracle(t, N) == expect);
        CHECK(count_orthogonal_mod_formula(t, N) == expect);
        ++cases;
      }
    }
  CHECK(cases > 1000);

  // Entries outside [0, N) reduce first.
  CHECK(count_orthogonal_mod_oracle({-2, 10}, 6) == 12);
  CHECK_THROWS_AS(count_orthogonal_mod_oracle({1, 1, 1, 1, 1}, 40), BudgetExceeded);
  CHECK_THROWS_AS(count_orthogonal_mod_oracle({0, 0}, 5), InvalidArgument);
}

TEST_CASE("success-rate experiment") {
  // Generous modulus: every nonzero sample should succeed.
  LatticeBasis B(mat({{1, 0, 1, 0, 0, 1}, {0, 1, 1, 0, 1, 0}, {1, 1, 0, 1, 0, 0}}));
  SuccessRateSpec s{B, smallest_prime_above_pow2(60), 40, Algorithm::I, mpq_class(99, 100), 1, 2};
  SuccessRate r = success_rate_experiment(s);
  CHECK(r.valid + r.excluded == 40);
  CHECK(r.rate == doctest::Approx(1.0));

  // N = 3: almost every a gives a nonzero M, so nothing is excluded, and the
  // modulus is far too small for recovery.
  s.N = 3;
  s.samples = 60;
  r = success_rate_experiment(s);
  CHECK(r.valid + r.excluded == 60);
  CHECK(r.rate < 0.5);

  // With N = 2 and n = 3, a = 0 has probability 1/8: excluded, not counted.
  s.N = 2;
  s.samples = 200;
  r = success_rate_experiment(s);
  CHECK(r.excluded > 5);
  CHECK(r.excluded < 50);
  CHECK(r.rate == doctest::Approx(static_cast<double>(r.successes) / r.valid));

  SuccessRateSpec s2 = s;
  s2.threads = 1;
  SuccessRate r2 = success_rate_experiment(s2);
  CHECK(r2.successes == r.successes);
}
