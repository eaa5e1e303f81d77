#include "hlp/instances.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "hlp/errors.hpp"
#include "hlp/linalg.hpp"
#include "hlp/parallel.hpp"
#include "hlp/rng.hpp"

namespace hlp {

std::size_t default_threads() {
  if (const char* s = std::getenv("HLP_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errs(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

const char* to_string(GenKind k) {
  switch (k) {
    case GenKind::hlp: return "hlp";
    case GenKind::nhlp: return "nhlp";
    case GenKind::crt_acd: return "crt_acd";
    case GenKind::hssp: return "hssp";
    case GenKind::rank2_preset: return "rank2_preset";
  }
  return "?";
}

GenKind gen_kind_from_string(const std::string& s) {
  for (GenKind k : {GenKind::hlp, GenKind::nhlp, GenKind::crt_acd, GenKind::hssp, GenKind::rank2_preset})
    if (s == to_string(k)) return k;
  if (s == "crt-acd") return GenKind::crt_acd;
  if (s == "rank2") return GenKind::rank2_preset;
  throw InvalidArgument("unknown instance kind: " + s);
}

namespace {

std::string tag(const char* name, std::size_t k) { return std::string(name) + "/" + std::to_string(k); }

IntegerMatrix uniform_matrix(Rng& g, std::size_t rows, std::size_t cols, std::int64_t alpha) {
  IntegerMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = static_cast<long>(g.uniform(-alpha, alpha));
  return a;
}

IntegerMatrix reduce_mod(IntegerMatrix a, const mpz_class& N) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (auto& x : a.row(i)) x = mod_floor(x, N);
  return a;
}

std::vector<mpz_class> public_factorization(const mpz_class& N) {
  if (is_probable_prime(N)) return {N};
  return {};
}

// M must have full rank r over Q and an invertible r×r minor mod N.
std::optional<LatticeBasis> usable_public_basis(IntegerMatrix M, const mpz_class& N) {
  if (rank(M) != M.rows()) return std::nullopt;
  LatticeBasis B(std::move(M));
  try {
    (void)ortho_mod_basis(B, N);
  } catch (const NoInvertibleMinor&) {
    return std::nullopt;
  }
  return B;
}

// Hidden basis with entries in [−α, α] and gcd(Gram det, N) = 1.
LatticeBasis sample_hidden_basis(const Rng& root, std::size_t n, std::size_t m, std::int64_t alpha,
                                 const mpz_class& N, std::size_t budget) {
  for (std::size_t k = 0; k < budget; ++k) {
    Rng g = root.stream(tag("basis", k));
    IntegerMatrix b = uniform_matrix(g, n, m, alpha);
    mpz_class d = determinant(gram(b));
    if (d == 0) continue;
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), d.get_mpz_t(), N.get_mpz_t());
    if (c == 1) return LatticeBasis::trusted(std::move(b), d);
  }
  throw ResampleBudgetExceeded("no Z/NZ-independent hidden basis within the resample budget");
}

void check_shape(const GenSpec& s) {
  if (s.alpha < 1) throw ParamOutOfRange("alpha must be >= 1");
  if (!(1 <= s.r && s.r <= s.n && s.n < s.m)) throw ParamOutOfRange("need 1 <= r <= n < m");
  if (s.max_attempts == 0) throw ParamOutOfRange("max_attempts must be >= 1");
}

}  // namespace

mpz_class smallest_prime_above_pow2(unsigned a) {
  mpz_class p = 1, q;
  p <<= a;
  mpz_nextprime(q.get_mpz_t(), p.get_mpz_t());
  return q;
}

mpz_class gen_modulus(const GenSpec& spec) {
  if (spec.N) {
    mpz_class N = abs(*spec.N);
    if (N < 2) throw ParamOutOfRange("N must satisfy |N| >= 2");
    return N;
  }
  if (!spec.log_N) throw InvalidArgument("either N or log_N is required");
  if (*spec.log_N < 1) throw ParamOutOfRange("log_N must be >= 1");
  if (spec.prime_modulus) return smallest_prime_above_pow2(*spec.log_N);
  Rng g = Rng(spec.seed).stream("modulus");
  mpz_class N = 1;
  N <<= *spec.log_N;
  mpz_class half = 1;
  half <<= (*spec.log_N - 1);
  return N + 2 * g.below(half) + 1;
}

HlpInstance gen_hlp(const GenSpec& spec) {
  check_shape(spec);
  const Rng root(spec.seed);
  HlpInstance inst;
  inst.m = spec.m;
  inst.n = spec.n;
  inst.r = spec.r;
  inst.N = gen_modulus(spec);
  inst.N_factorization = public_factorization(inst.N);
  LatticeBasis L = sample_hidden_basis(root, spec.n, spec.m, spec.alpha, inst.N, spec.max_attempts);

  for (std::size_t k = 0; k < spec.max_attempts; ++k) {
    Rng g = root.stream(tag("coefficients", k));
    IntegerMatrix coef(spec.r, spec.n);
    for (std::size_t i = 0; i < spec.r; ++i)
      for (std::size_t j = 0; j < spec.n; ++j) coef(i, j) = g.below(inst.N);
    auto M = usable_public_basis(reduce_mod(coef * L.matrix(), inst.N), inst.N);
    if (!M) continue;
    inst.M_basis = std::move(*M);
    inst.planted = PlantedHlp{L, L.sigma_sq(), spec.seed, std::move(coef)};
    inst.validate();
    return inst;
  }
  throw ResampleBudgetExceeded("public combinations never had rank r modulo N");
}

namespace {

// Random walk on Z^m that only ever increases the norm and stops at ⌊ρ²⌋.
IntVector sample_noise(Rng& g, std::size_t m, double rho) {
  const mpz_class cap = static_cast<long>(std::floor(rho * rho + 1e-9));
  IntVector x(m, 0);
  mpz_class cur = 0;
  std::size_t misses = 0;
  while (cur < cap && misses < 8 * m) {
    std::size_t t = g.below(static_cast<std::uint64_t>(m));
    long s = g.below(std::uint64_t{2}) ? 1 : -1;
    mpz_class next = cur + 2 * s * x[t] + 1;
    if (next > cur && next <= cap) {
      x[t] += s;
      cur = next;
      misses = 0;
    } else {
      ++misses;
    }
  }
  return x;
}

}  // namespace

NhlpInstance gen_nhlp(const GenSpec& spec) {
  check_shape(spec);
  if (spec.n + spec.r >= spec.m) throw ParamOutOfRange("NHLP needs n + r < m");
  if (!(spec.rho >= 1)) throw ParamOutOfRange("rho must be >= 1");
  const Rng root(spec.seed);
  NhlpInstance inst;
  inst.m = spec.m;
  inst.n = spec.n;
  inst.r = spec.r;
  inst.rho = spec.rho;
  inst.N = gen_modulus(spec);
  inst.N_factorization = public_factorization(inst.N);
  LatticeBasis L = sample_hidden_basis(root, spec.n, spec.m, spec.alpha, inst.N, spec.max_attempts);

  for (std::size_t k = 0; k < spec.max_attempts; ++k) {
    Rng gn = root.stream(tag("noise", k));
    IntegerMatrix X(spec.r, spec.m);
    double rho_actual = 0;
    for (std::size_t j = 0; j < spec.r; ++j) {
      IntVector x = sample_noise(gn, spec.m, spec.rho);
      X.set_row(j, x);
      rho_actual = std::max(rho_actual, std::sqrt(norm_sq(x).get_d()));
    }
    if (rank(vstack(L.matrix(), X)) != spec.n + spec.r) continue;  // L ∩ 𝒳 = {0}, x_j independent

    Rng gc = root.stream(tag("coefficients", k));
    IntegerMatrix coef(spec.r, spec.n);
    for (std::size_t i = 0; i < spec.r; ++i)
      for (std::size_t j = 0; j < spec.n; ++j) coef(i, j) = gc.below(inst.N);
    IntegerMatrix W = coef * L.matrix();
    for (std::size_t i = 0; i < spec.r; ++i)
      for (std::size_t t = 0; t < spec.m; ++t) W(i, t) = mod_floor(W(i, t) + X(i, t), inst.N);
    if (rank(W) != spec.r) continue;
    inst.W_basis = LatticeBasis(std::move(W));
    inst.planted = PlantedNhlp{L, std::move(X), L.sigma_sq(), rho_actual, spec.seed};
    inst.validate();
    return inst;
  }
  throw ResampleBudgetExceeded("no admissible noise within the resample budget");
}

CrtAcdInstance gen_crt_acd(std::size_t n, unsigned eta, unsigned rho, std::uint64_t seed, std::size_t max_attempts) {
  if (n < 2) throw ParamOutOfRange("CRT-ACD needs n >= 2");
  if (eta < rho + 3 || eta < 4) throw ParamOutOfRange("CRT-ACD needs eta >= rho + 3");
  const Rng root(seed);

  std::vector<mpz_class> primes;
  Rng gp = root.stream("primes");
  for (std::size_t tries = 0; primes.size() < n; ++tries) {
    if (tries >= max_attempts * n) throw PrimeGenFailure("could not sample distinct eta-bit primes");
    mpz_class c = gp.bits(eta), p;
    mpz_setbit(c.get_mpz_t(), eta - 1);
    mpz_nextprime(p.get_mpz_t(), c.get_mpz_t());
    if (mpz_sizeinbase(p.get_mpz_t(), 2) != eta) continue;
    if (std::find(primes.begin(), primes.end(), p) != primes.end()) continue;
    primes.push_back(p);
  }
  mpz_class N = 1;
  for (const auto& p : primes) N *= p;

  // CRT idempotents: c_i ≡ 1 (mod p_i), ≡ 0 (mod p_j), j ≠ i.
  std::vector<mpz_class> idem(n);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class rest = N / primes[i], inv;
    mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), primes[i].get_mpz_t());
    idem[i] = mod_floor(rest * inv, N);
  }
  auto crt = [&](std::span<const mpz_class> res) {
    mpz_class v = 0;
    for (std::size_t i = 0; i < n; ++i) v += res[i] * idem[i];
    return mod_floor(v, N);
  };

  const std::int64_t bound = std::int64_t{1} << rho;
  for (std::size_t k = 0; k < max_attempts; ++k) {
    Rng g = root.stream(tag("residues", k));
    IntegerMatrix res = uniform_matrix(g, n + 1, n, bound);  // rows x_1..x_n, then y
    IntegerMatrix L(n, 2 * n);                                // b^{(i)} = (x^{(i)}, y^{(i)} x^{(i)})
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t) {
        L(i, t) = res(t, i);
        L(i, n + t) = res(n, i) * res(t, i);
      }
    if (rank(L) != n) continue;

    IntegerMatrix b(1, 2 * n);
    mpz_class y = crt(res.row(n));
    for (std::size_t t = 0; t < n; ++t) {
      b(0, t) = crt(res.row(t));
      b(0, n + t) = mod_floor(y * b(0, t), N);
    }
    auto M = usable_public_basis(std::move(b), N);
    if (!M) continue;

    CrtAcdInstance out;
    HlpInstance& inst = out.instance;
    inst.m = 2 * n;
    inst.n = n;
    inst.r = 1;
    inst.N = N;
    inst.M_basis = std::move(*M);
    IntegerMatrix coef(1, n);
    for (std::size_t i = 0; i < n; ++i) coef(0, i) = idem[i];
    LatticeBasis Lb(std::move(L));
    inst.planted = PlantedHlp{Lb, Lb.sigma_sq(), seed, std::move(coef)};
    inst.validate();
    out.primes = primes;
    out.residues = std::move(res);
    return out;
  }
  throw ResampleBudgetExceeded("CRT-ACD residues never gave a usable instance");
}

HlpInstance gen_hssp(std::size_t n, std::size_t m, unsigned log_N, std::uint64_t seed, std::size_t max_attempts) {
  if (!(1 <= n && n < m)) throw ParamOutOfRange("HSSP needs 1 <= n < m");
  const Rng root(seed);
  HlpInstance inst;
  inst.m = m;
  inst.n = n;
  inst.r = 1;
  inst.N = smallest_prime_above_pow2(log_N);
  inst.N_factorization = {inst.N};

  for (std::size_t k = 0; k < max_attempts; ++k) {
    Rng gx = root.stream(tag("hidden", k));
    IntegerMatrix X(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < m; ++t) X(i, t) = static_cast<long>(gx.below(std::uint64_t{2}));
    if (rank(X) != n) continue;
    Rng ga = root.stream(tag("weights", k));
    IntegerMatrix coef(1, n);
    for (std::size_t i = 0; i < n; ++i) coef(0, i) = ga.below(inst.N);
    auto M = usable_public_basis(reduce_mod(coef * X, inst.N), inst.N);
    if (!M) continue;
    LatticeBasis L(std::move(X));
    if (L.sigma_sq() > m) throw InvalidInstance("binary hidden basis with sigma above sqrt(m)");
    inst.M_basis = std::move(*M);
    inst.planted = PlantedHlp{L, L.sigma_sq(), seed, std::move(coef)};
    inst.validate();
    return inst;
  }
  throw ResampleBudgetExceeded("no independent binary hidden vectors within the resample budget");
}

HlpInstance gen_rank2_preset(std::size_t m, unsigned log_N, std::int64_t alpha, std::uint64_t seed,
                             std::size_t max_attempts) {
  if (m < 3) throw ParamOutOfRange("rank-2 preset needs m >= 3");
  if (alpha < 1) throw ParamOutOfRange("alpha must be >= 1");
  const Rng root(seed);
  HlpInstance inst;
  inst.m = m;
  inst.n = 2;
  inst.r = 1;
  inst.N = smallest_prime_above_pow2(log_N);
  inst.N_factorization = {inst.N};
  LatticeBasis L = sample_hidden_basis(root, 2, m, alpha, inst.N, max_attempts);
  for (std::size_t k = 0; k < max_attempts; ++k) {
    Rng g = root.stream(tag("coefficients", k));
    IntegerMatrix coef(1, 2);
    coef(0, 0) = inst.N - 1;
    coef(0, 1) = g.below(inst.N);
    auto M = usable_public_basis(reduce_mod(coef * L.matrix(), inst.N), inst.N);
    if (!M) continue;
    inst.M_basis = std::move(*M);
    inst.planted = PlantedHlp{L, L.sigma_sq(), seed, std::move(coef)};
    inst.validate();
    return inst;
  }
  throw ResampleBudgetExceeded("rank-2 preset: no usable public vector");
}

LatticeBasis random_modular_basis(std::size_t r, std::size_t m, const mpz_class& N, std::uint64_t seed,
                                  std::size_t max_attempts) {
  if (!(1 <= r && r < m)) throw ParamOutOfRange("need 1 <= r < m");
  const Rng root(seed);
  for (std::size_t k = 0; k < max_attempts; ++k) {
    Rng g = root.stream(tag("random", k));
    IntegerMatrix M(r, m);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t t = 0; t < m; ++t) M(i, t) = g.below(N);
    if (auto B = usable_public_basis(std::move(M), N)) return *B;
  }
  throw ResampleBudgetExceeded("no usable random modular basis");
}

// E[x²] = α(α+1)/3 for x uniform in [−α, α], so σ² ≈ m·α(α+1)/3.
std::int64_t alpha_for_log_mu(double log_mu, std::size_t m) {
  const double s2 = std::exp2(2 * log_mu) * 3.0 / static_cast<double>(m);
  const double a = (-1 + std::sqrt(1 + 4 * s2)) / 2;
  return std::max<std::int64_t>(1, std::llround(a));
}

SolveReport blockwise_solve(const HlpInstance& inst, const BlockwiseOptions& opt) {
  const std::size_t m = inst.m, n = inst.n, bd = opt.block_dim;
  if (bd < 2 * n) throw InvalidArgument("block_dim must be >= 2n");
  if (bd > m) throw InvalidArgument("block_dim exceeds m");
  if (bd == m) return solve_hlp(inst, opt.algo, opt.solve);

  const std::size_t h = bd / 2;
  std::vector<std::pair<std::size_t, std::size_t>> chunks;  // [begin, end) after the shared block
  for (std::size_t s = h; s < m; s += h) chunks.emplace_back(s, std::min(m, s + h));
  const std::size_t b = chunks.size();

  std::vector<std::size_t> shared(h);
  for (std::size_t t = 0; t < h; ++t) shared[t] = t;
  auto project_cols = [&](std::size_t j) {
    std::vector<std::size_t> cols = shared;
    for (std::size_t t = chunks[j].first; t < chunks[j].second; ++t) cols.push_back(t);
    return cols;
  };

  SolveOptions inner = opt.solve;
  inner.verify = false;
  std::vector<SolveReport> parts(b);
  parallel_for(b, opt.threads, [&](std::size_t j) {
    try {
      std::vector<std::size_t> cols = project_cols(j);
      HlpInstance sub;
      sub.m = cols.size();
      sub.n = n;
      sub.r = inst.r;
      sub.N = inst.N;
      sub.N_factorization = inst.N_factorization;
      IntegerMatrix pm = inst.M_basis.matrix().select_cols(cols);
      if (rank(pm) != inst.r) throw RankDeficient("projected M lost rank");
      sub.M_basis = LatticeBasis(std::move(pm));
      parts[j] = solve_hlp(sub, opt.algo, inner);
    } catch (const Error& e) {
      throw PerBlockFailure(j, "block " + std::to_string(j) + ": " + e.what());
    }
  });

  // Align on the shared block: Q_j·C_{0,j} = C_{0,1}.
  const IntegerMatrix& V1 = parts[0].recovered.matrix();
  IntegerMatrix C01 = V1.col_range(0, h);
  if (rank(C01) != n) throw BlockAlignmentFailure("shared block of block 0 is rank-deficient");
  RationalMatrix full(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < V1.cols(); ++t) full(i, t) = V1(i, t);
  for (std::size_t j = 1; j < b; ++j) {
    const IntegerMatrix& Vj = parts[j].recovered.matrix();
    IntegerMatrix C0j = Vj.col_range(0, h);
    if (rank(C0j) != n) throw BlockAlignmentFailure("shared block of block " + std::to_string(j) + " is rank-deficient");
    auto Q = solve_left(C0j, C01);  // Q·C0j = C01
    if (!Q) throw BlockAlignmentFailure("shared blocks span different spaces");
    const std::size_t w = chunks[j].second - chunks[j].first;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < w; ++t) {
        mpq_class s = 0;
        for (std::size_t k = 0; k < n; ++k) s += (*Q)(i, k) * Vj(k, h + t);
        full(i, chunks[j].first + t) = s;
      }
  }

  // Saturate: the glued rows span L_Q; their completion is L̄.
  full *= mpq_class(full.common_denominator());
  auto t0 = std::chrono::steady_clock::now();
  ComplementParams cp = opt.solve.complement;
  cp.method = ComplementMethod::integer_kernel;
  LatticeBasis glued = completion(LatticeBasis(full.to_integer()), cp);

  SolveReport rep;
  rep.algorithm = "blockwise/" + parts[0].algorithm;
  rep.completion_mode = parts[0].completion_mode;
  rep.intermediate = parts[0].intermediate;
  rep.recovered = lll_reduce(glued, opt.solve.reduction).basis;
  for (const auto& p : parts) {
    rep.step1_ms += p.step1_ms;
    rep.step2_ms += p.step2_ms;
    rep.reduction.swap_count += p.reduction.swap_count;
  }
  rep.step2_ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rep.sigma_out = rep.recovered.sigma();
  rep.log2_sigma_out = rep.recovered.log2_sigma();
  if (opt.solve.verify && inst.planted) rep.success = matches_planted(rep.recovered, inst.planted->L_basis);
  return rep;
}

mpz_class count_orthogonal_mod_formula(const IntVector& t, const mpz_class& N) {
  if (N < 2) throw InvalidArgument("N must be >= 2");
  mpz_class d = N;
  for (const auto& x : t) mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), x.get_mpz_t());
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), N.get_mpz_t(), t.size() - 1);
  return d * p;
}

mpz_class count_orthogonal_mod_oracle(const IntVector& t, const mpz_class& N) {
  if (t.empty()) throw InvalidArgument("t must be nonempty");
  if (N < 2) throw InvalidArgument("N must be >= 2");
  if (std::all_of(t.begin(), t.end(), [](const mpz_class& x) { return x == 0; }))
    throw InvalidArgument("t must be nonzero");
  mpz_class space;
  mpz_pow_ui(space.get_mpz_t(), N.get_mpz_t(), t.size());
  if (space > 10'000'000) throw BudgetExceeded("N^n exceeds the brute-force budget 10^7");

  const std::size_t n = t.size();
  const long Nl = N.get_si();
  std::vector<long> tr(n), a(n, 0);
  for (std::size_t i = 0; i < n; ++i) tr[i] = mod_floor(t[i], N).get_si();
  std::uint64_t count = 0;
  for (;;) {
    long s = 0;
    for (std::size_t i = 0; i < n; ++i) s = (s + a[i] * tr[i]) % Nl;
    if (s == 0) ++count;
    std::size_t i = 0;
    while (i < n && ++a[i] == Nl) a[i++] = 0;
    if (i == n) break;
  }
  return mpz_class(static_cast<unsigned long>(count));
}

SuccessRate success_rate_experiment(const SuccessRateSpec& spec) {
  if (spec.samples < 1) throw InvalidArgument("sample_count must be >= 1");
  const LatticeBasis& B = spec.B;
  const std::size_t n = B.rank(), m = B.ambient_dim();
  const mpz_class N = abs(spec.N);
  ComplementParams cp;
  cp.method = ComplementMethod::integer_kernel;
  const LatticeBasis target = completion(B, cp);
  const std::vector<mpz_class> fac = public_factorization(N);
  const Rng root(spec.seed);

  enum Outcome { excluded, failure, success };
  std::vector<Outcome> out(spec.samples, failure);
  parallel_for(spec.samples, spec.threads, [&](std::size_t i) {
    Rng g = root.stream(tag("sample", i));
    IntVector a(n);
    bool zero = true;
    for (auto& x : a) {
      x = g.below(N);
      zero = zero && x == 0;
    }
    if (zero) {
      out[i] = excluded;
      return;
    }
    try {
      IntegerMatrix M(1, m);
      M.set_row(0, vec_mat(a, B.matrix()));
      M = reduce_mod(std::move(M), N);
      if (rank(M) == 0) return;
      HlpInstance inst;
      inst.m = m;
      inst.n = n;
      inst.r = 1;
      inst.N = N;
      inst.N_factorization = fac;
      inst.M_basis = LatticeBasis(std::move(M));
      SolveOptions opt;
      opt.reduction.delta = spec.delta;
      opt.verify = false;
      SolveReport rep = solve_hlp(inst, spec.algo, opt);
      if (rep.recovered.gram_det() == target.gram_det() && rows_in_lattice(target.matrix(), rep.recovered.matrix()))
        out[i] = success;
    } catch (const Error&) {
      // any module error counts as a failed recovery
    }
  });

  SuccessRate r;
  for (Outcome o : out) {
    if (o == excluded) {
      ++r.excluded;
      continue;
    }
    ++r.valid;
    if (o == success) ++r.successes;
  }
  r.rate = r.valid ? static_cast<double>(r.successes) / r.valid : 0.0;
  return r;
}

}  // namespace hlp
