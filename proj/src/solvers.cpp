#include "hlp/solvers.hpp"

#include <chrono>
#include <cmath>

#include "hlp/errors.hpp"
#include "hlp/linalg.hpp"

namespace hlp {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

// Rows of `rows` lie in L + N·Z^m.
bool congruent_into(const IntegerMatrix& rows, const LatticeBasis& L, const mpz_class& N,
                    const IntegerMatrix& coefficients) {
  if (!coefficients.empty()) {
    if (coefficients.rows() != rows.rows() || coefficients.cols() != L.rank()) return false;
    IntegerMatrix prod = coefficients * L.matrix();
    for (std::size_t i = 0; i < rows.rows(); ++i)
      for (std::size_t j = 0; j < rows.cols(); ++j)
        if (mod_floor(prod(i, j) - rows(i, j), N) != 0) return false;
    return true;
  }
  return rows_in_lattice(rows, cong_mod_basis(L, N).matrix());
}

std::vector<mpz_class> normalise_factors(const std::vector<mpz_class>& f, const mpz_class& N) {
  std::vector<mpz_class> out;
  mpz_class rest = N;
  for (const auto& p : f) {
    if (!is_probable_prime(p)) throw InvalidInstance("N_factorization entries must be prime");
    if (!mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      if (mpz_divisible_p(N.get_mpz_t(), p.get_mpz_t())) continue;  // repeated prime
      throw InvalidInstance("N_factorization entry does not divide N");
    }
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    out.push_back(p);
  }
  if (!out.empty() && rest != 1) throw InvalidInstance("N_factorization is incomplete");
  return out;
}

void finish_report(SolveReport& rep, const std::optional<PlantedHlp>& planted, const SolveOptions& opt) {
  rep.sigma_out = rep.recovered.sigma();
  rep.log2_sigma_out = rep.recovered.log2_sigma();
  if (opt.verify && planted) rep.success = matches_planted(rep.recovered, planted->L_basis);
}

LatticeBasis first_rows(const LatticeBasis& sorted, std::size_t k) {
  return LatticeBasis(sorted.matrix().row_range(0, k));
}

}  // namespace

void HlpInstance::validate() {
  N = abs(N);
  if (N < 2) throw InvalidInstance("N must satisfy |N| >= 2");
  if (M_basis.rank() == 0) throw InvalidInstance("empty M basis");
  if (M_basis.rank() != r || M_basis.ambient_dim() != m) throw InvalidInstance("M basis shape disagrees with (r, m)");
  if (!(1 <= r && r <= n && n < m)) throw InvalidInstance("need 1 <= r <= n < m");
  N_factorization = normalise_factors(N_factorization, N);
  if (planted) {
    if (planted->L_basis.rank() != n || planted->L_basis.ambient_dim() != m)
      throw InvalidInstance("planted basis shape disagrees with (n, m)");
    if (!congruent_into(M_basis.matrix(), planted->L_basis, N, planted->coefficients))
      throw InvalidInstance("M is not contained in the planted lattice modulo N");
  }
}

void NhlpInstance::validate() {
  N = abs(N);
  if (N < 2) throw InvalidInstance("N must satisfy |N| >= 2");
  if (W_basis.rank() != r || W_basis.ambient_dim() != m) throw InvalidInstance("W basis shape disagrees with (r, m)");
  if (!(1 <= r && r <= n && n < m)) throw InvalidInstance("need 1 <= r <= n < m");
  N_factorization = normalise_factors(N_factorization, N);
  if (planted) {
    const auto& X = planted->X_basis;
    if (X.rows() != r || X.cols() != m) throw InvalidInstance("noise matrix shape disagrees with (r, m)");
    const double rho2 = rho * rho * (1 + 1e-12);
    for (std::size_t j = 0; j < r; ++j)
      if (norm_sq(X.row(j)).get_d() > rho2) throw InvalidInstance("noise vector exceeds rho");
    IntegerMatrix diff = W_basis.matrix();
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t t = 0; t < m; ++t) diff(j, t) -= X(j, t);
    if (!congruent_into(diff, planted->L_basis, N, {}))
      throw InvalidInstance("w_j - x_j not in the planted lattice modulo N");
  }
}

bool matches_planted(const LatticeBasis& recovered, const LatticeBasis& planted) {
  if (recovered.rank() != planted.rank() || recovered.ambient_dim() != planted.ambient_dim()) return false;
  ComplementParams cp;
  cp.method = ComplementMethod::integer_kernel;
  LatticeBasis full = completion(planted, cp);
  return recovered.gram_det() == full.gram_det() && rows_in_lattice(full.matrix(), recovered.matrix());
}

SolveReport solve_hlp_I(const HlpInstance& inst, const SolveOptions& opt) {
  const std::size_t m = inst.m, n = inst.n;
  if (n >= m) throw InvalidInstance("Algorithm I needs n < m");
  SolveReport rep;
  rep.algorithm = "I";
  rep.completion_mode = "orthogonal-complement";

  auto t0 = clock_type::now();
  LatticeBasis B = ortho_mod_basis(inst.M_basis, inst.N);
  ReductionResult red = lll_reduce(B, opt.reduction);
  rep.reduction = red.stats;
  rep.intermediate = first_rows(red.basis, m - n);
  rep.step1_ms = ms_since(t0);

  auto t1 = clock_type::now();
  rep.recovered = orthogonal_complement(rep.intermediate, opt.complement);
  rep.step2_ms = ms_since(t1);
  if (rep.recovered.rank() != n) throw RankMismatch("complement of 𝒩_I does not have rank n");

  if (opt.verify && inst.planted) {
    bool all = true;
    for (std::size_t i = 0; i < rep.intermediate.rank() && all; ++i)
      for (const auto& v : phi_B(rep.intermediate.matrix().row(i), inst.planted->L_basis))
        if (v != 0) {
          all = false;
          break;
        }
    rep.intermediate_in_hidden_orthogonal = all;
  }
  finish_report(rep, inst.planted, opt);
  return rep;
}

SolveReport solve_hlp_II(const HlpInstance& inst, const SolveOptions& opt) {
  const std::size_t n = inst.n;
  SolveReport rep;
  rep.algorithm = "II";
  CompletionMode mode = opt.completion;
  if (mode == CompletionMode::automatic)
    mode = inst.N_factorization.empty() ? CompletionMode::double_orthogonal : CompletionMode::mod_n_local;
  if (mode == CompletionMode::mod_n_local && inst.N_factorization.empty())
    throw CompletionModeUnavailable("mod-N completion requires the factorization of N");
  rep.completion_mode = mode == CompletionMode::mod_n_local ? "mod-n" : "double-orth";

  auto t0 = clock_type::now();
  LatticeBasis B = cong_mod_basis(inst.M_basis, inst.N);
  ReductionResult red = lll_reduce(B, opt.reduction);
  rep.reduction = red.stats;
  rep.intermediate = first_rows(red.basis, n);
  rep.step1_ms = ms_since(t0);

  auto t1 = clock_type::now();
  if (mode == CompletionMode::mod_n_local) {
    LatticeBasis cur = rep.intermediate;
    for (const auto& p : inst.N_factorization) cur = p_completion(cur, p);
    rep.recovered = lll_reduce(cur, opt.reduction).basis;
  } else {
    rep.recovered = completion(rep.intermediate, opt.complement);
  }
  rep.step2_ms = ms_since(t1);
  if (rep.recovered.rank() != n) throw RankMismatch("completion of 𝒩_II does not have rank n");
  finish_report(rep, inst.planted, opt);
  return rep;
}

SolveReport solve_hlp(const HlpInstance& inst, Algorithm algo, const SolveOptions& opt) {
  return algo == Algorithm::I ? solve_hlp_I(inst, opt) : solve_hlp_II(inst, opt);
}

SolveReport solve_nhlp(const NhlpInstance& inst, const SolveOptions& opt, Algorithm algo) {
  const std::size_t m = inst.m, n = inst.n, r = inst.r;
  // w'_j = (w_j, e_j): an HLP of rank n + r in dimension m + r.
  IntegerMatrix Wp(r, m + r);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t t = 0; t < m; ++t) Wp(j, t) = inst.W_basis.matrix()(j, t);
    Wp(j, m + j) = 1;
  }
  HlpInstance emb;
  emb.m = m + r;
  emb.n = n + r;
  emb.r = r;
  emb.N = inst.N;
  emb.M_basis = LatticeBasis(std::move(Wp));
  emb.N_factorization = inst.N_factorization;
  if (emb.n >= emb.m) throw InvalidInstance("NHLP embedding needs n < m");

  SolveOptions inner = opt;
  inner.verify = false;
  SolveReport rep = solve_hlp(emb, algo, inner);

  auto t1 = clock_type::now();
  const IntegerMatrix& B = rep.recovered.matrix();
  IntegerMatrix V = B.col_range(0, m), U = B.col_range(m, m + r);
  IntegerMatrix K;
  try {
    K = left_integer_kernel(U);
  } catch (const RankDeficient&) {
    throw KernelRankMismatch("U has column rank below r; embedded HLP not solved");
  }
  if (K.rows() != n) throw KernelRankMismatch("left kernel of U does not have rank n");
  IntegerMatrix KV = K * V;
  SolveReport out;
  out.algorithm = std::string("NHLP/") + rep.algorithm;
  out.completion_mode = rep.completion_mode;
  out.intermediate = rep.intermediate;
  out.reduction = rep.reduction;
  out.recovered = lll_reduce(LatticeBasis(std::move(KV)), opt.reduction).basis;
  out.step1_ms = rep.step1_ms;
  out.step2_ms = rep.step2_ms + ms_since(t1);
  out.sigma_out = out.recovered.sigma();
  out.log2_sigma_out = out.recovered.log2_sigma();
  if (opt.verify && inst.planted) out.success = matches_planted(out.recovered, inst.planted->L_basis);
  return out;
}

GapProfile gap_profile(const LatticeBasis& reduced) {
  const IntegerMatrix& u = reduced.matrix();
  const std::size_t m = u.rows();
  GapProfile g;
  std::vector<double> l2(m);  // log2 ||u_k||^2
  for (std::size_t k = 0; k < m; ++k) {
    mpz_class s = norm_sq(u.row(k));
    l2[k] = log2_mpz(s);
    g.reduced_norms.push_back(std::exp2(0.5 * l2[k]));
  }
  double total = 0;
  for (double x : l2) total += x;
  double lower = 0;
  for (std::size_t k = 1; k < m; ++k) {
    lower += l2[k - 1];
    g.log2_g.push_back(0.5 * ((total - lower) - lower));
    g.log2_jump.push_back(0.5 * (l2[k] - l2[k - 1]));
  }
  return g;
}

DhlpVerdict decide_dhlp(const LatticeBasis& M, const mpz_class& N, double tau_log2, DhlpSide side,
                        const ReductionParams& params) {
  LatticeBasis B = side == DhlpSide::orthogonal ? ortho_mod_basis(M, N) : cong_mod_basis(M, N);
  ReductionResult red = lll_reduce(B, params);
  DhlpVerdict v;
  v.profile = gap_profile(red.basis);
  v.profile.tau_log2 = tau_log2;
  const std::size_t m = B.rank();
  if (m < 2) return v;
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.profile.log2_jump.size(); ++i)
    if (v.profile.log2_jump[i] > v.profile.log2_jump[best]) best = i;
  v.k_star = best + 1;
  v.max_jump_log2 = v.profile.log2_jump[best];
  v.exists = v.max_jump_log2 >= tau_log2;
  if (v.exists) {
    v.detected_rank = side == DhlpSide::orthogonal ? m - v.k_star : v.k_star;
    v.profile.detected_rank = v.detected_rank;
  }
  return v;
}

}  // namespace hlp
