#include "hlp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <tuple>

#include "hlp/bounds.hpp"
#include "hlp/errors.hpp"
#include "hlp/parallel.hpp"

namespace hlp {

namespace {

std::string fmt(double x, const char* f = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<std::uint64_t> seeds_of(const json& p) {
  std::vector<std::uint64_t> s;
  for (const auto& x : p.at("seeds")) s.push_back(x.get<std::uint64_t>());
  return s;
}

bool probe(const GenSpec& spec, Algorithm algo, const SolveOptions& opt, SolveReport* out) {
  try {
    HlpInstance inst = gen_hlp(spec);
    SolveOptions o = opt;
    o.verify = true;
    SolveReport rep = solve_hlp(inst, algo, o);
    bool ok = rep.success.value_or(false);
    if (out) *out = std::move(rep);
    return ok;
  } catch (const Error&) {
    return false;
  }
}

const char* algo_name(Algorithm a) { return a == Algorithm::I ? "I" : "II"; }

std::vector<ExperimentRow> table4(const json& p, std::size_t threads) {
  struct Task {
    std::size_t n;
    std::uint64_t seed;
    Algorithm algo;
  };
  const std::size_t m = p.at("m"), r = p.at("r");
  const std::int64_t alpha = p.at("alpha");
  const unsigned lo = p.value("lo", 4u), slack = p.value("hi_slack", 8u);
  std::vector<Task> tasks;
  for (std::size_t n : p.at("n_values").get<std::vector<std::size_t>>())
    for (auto s : seeds_of(p))
      for (Algorithm a : {Algorithm::I, Algorithm::II}) tasks.push_back({n, s, a});

  std::vector<ExperimentRow> rows(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    GenSpec spec;
    spec.n = t.n, spec.m = m, spec.r = r, spec.alpha = alpha, spec.seed = t.seed, spec.log_N = 64;
    double log_mu = gen_hlp(spec).planted->L_basis.log2_sigma();
    AnalysisParams ap;
    ap.n = t.n, ap.m = m, ap.r = r, ap.log_mu = log_mu;
    unsigned hi = static_cast<unsigned>(std::ceil(std::max(heuristic_logN_I(ap), heuristic_logN_II(ap)))) + slack;
    ExperimentRow& row = rows[i];
    row.n = t.n, row.m = m, row.r = r, row.seed = t.seed, row.algo = algo_name(t.algo), row.log_mu = log_mu;
    auto res = minimal_log_n(spec, t.algo, lo, hi);
    if (res) {
      row.log_N = res->log_N;
      row.success = "1";
      row.sigma_out = res->report.log2_sigma_out;
      row.step1_ms = res->report.step1_ms;
      row.step2_ms = res->report.step2_ms;
    } else {
      row.log_N = hi;
      row.success = "0";
    }
  });
  return rows;
}

std::vector<ExperimentRow> table5(const json& p, std::size_t threads) {
  struct Task {
    json row;
    std::uint64_t seed;
    bool planted;
  };
  std::vector<Task> tasks;
  for (const auto& row : p.at("rows"))
    for (auto s : seeds_of(p))
      for (bool planted : {true, false}) tasks.push_back({row, s, planted});

  const double tau = p.value("tau_log2", 32.0);
  std::vector<ExperimentRow> rows(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    const std::size_t m = t.row.at("m"), n = t.row.at("n"), r = t.row.at("r");
    const unsigned logN = t.row.at("log_N");
    GenSpec spec;
    spec.n = n, spec.m = m, spec.r = r, spec.log_N = logN, spec.seed = t.seed;
    spec.alpha = t.row.contains("alpha") ? t.row.at("alpha").get<std::int64_t>()
                                          : alpha_for_log_mu(t.row.at("log_mu").get<double>(), m);
    HlpInstance inst = gen_hlp(spec);
    LatticeBasis M = t.planted ? inst.M_basis : random_modular_basis(r, m, inst.N, t.seed);
    DhlpVerdict v = decide_dhlp(M, inst.N, tau);
    ExperimentRow& row = rows[i];
    row.n = n, row.m = m, row.r = r, row.log_N = logN, row.seed = t.seed;
    row.log_mu = inst.planted->L_basis.log2_sigma();
    row.algo = t.planted ? "DHLP-planted" : "DHLP-random";
    bool correct = t.planted ? (v.exists && v.detected_rank == n) : !v.exists;
    row.success = correct ? "1" : "0";
    row.g_gap_log2 = v.profile.g_log2(m - n);
  });
  return rows;
}

std::vector<ExperimentRow> table2(const json& p, std::size_t threads) {
  struct Task {
    std::size_t m;
    std::uint64_t seed;
    Algorithm algo;
  };
  const unsigned logN = p.at("log_N");
  std::vector<Task> tasks;
  for (std::size_t m : p.at("m_values").get<std::vector<std::size_t>>())
    for (auto s : seeds_of(p))
      for (Algorithm a : {Algorithm::I, Algorithm::II}) tasks.push_back({m, s, a});

  std::vector<ExperimentRow> rows(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    GenSpec spec;
    spec.m = t.m, spec.n = t.m / 2, spec.r = t.m / 4, spec.log_N = logN, spec.seed = t.seed;
    spec.alpha = alpha_for_log_mu(logN / 4.0 - 10, t.m);
    HlpInstance inst = gen_hlp(spec);
    ExperimentRow& row = rows[i];
    row.n = spec.n, row.m = t.m, row.r = spec.r, row.log_N = logN, row.seed = t.seed;
    row.algo = algo_name(t.algo);
    row.log_mu = inst.planted->L_basis.log2_sigma();
    try {
      SolveReport rep = solve_hlp(inst, t.algo);
      row.success = rep.success.value_or(false) ? "1" : "0";
      row.sigma_out = rep.log2_sigma_out;
      row.step1_ms = rep.step1_ms;
      row.step2_ms = rep.step2_ms;
    } catch (const Error&) {
      row.success = "0";
    }
  });
  return rows;
}

std::vector<ExperimentRow> success_rate(const json& p, std::size_t threads) {
  const std::size_t n = p.at("n"), m = p.at("m");
  const double eps = p.value("epsilon", 0.5), delta = p.value("delta", 0.99);
  const std::uint64_t seed = p.at("seed");
  std::vector<ExperimentRow> rows;
  for (Algorithm a : {Algorithm::I, Algorithm::II}) {
    GenSpec spec;
    spec.n = n, spec.m = m, spec.r = 1, spec.alpha = p.at("alpha"), spec.seed = seed, spec.log_N = 64;
    const double log_mu = gen_hlp(spec).planted->L_basis.log2_sigma();
    const double bound = a == Algorithm::I ? proven_logNeps_I(n, m, log_mu, delta) : proven_logNeps_II(n, m, log_mu, delta);
    spec.log_N = static_cast<unsigned>(std::ceil(bound - std::log2(eps))) + p.value("extra_bits", 1u);
    HlpInstance inst = gen_hlp(spec);
    SuccessRateSpec s;
    s.B = inst.planted->L_basis;
    s.N = inst.N;
    s.samples = p.value("samples", std::size_t{200});
    s.algo = a;
    s.delta = mpq_class(static_cast<long>(std::lround(delta * 1000)), 1000);
    s.seed = seed;
    s.threads = threads;
    SuccessRate res = success_rate_experiment(s);
    ExperimentRow row;
    row.n = n, row.m = m, row.r = 1, row.log_N = *spec.log_N, row.log_mu = log_mu, row.seed = seed;
    row.algo = algo_name(a);
    row.success = fmt(res.rate, "%.4f");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::optional<MinimalLogN> minimal_log_n(GenSpec spec, Algorithm algo, unsigned lo, unsigned hi, const SolveOptions& opt) {
  if (lo < 2) lo = 2;
  if (hi < lo) throw InvalidArgument("minimal_log_n: empty range");
  SolveReport best;
  spec.N.reset();
  spec.log_N = hi;
  if (!probe(spec, algo, opt, &best)) return std::nullopt;
  unsigned good = hi;
  while (lo < good) {
    unsigned mid = lo + (good - lo) / 2;
    spec.log_N = mid;
    SolveReport rep;
    if (probe(spec, algo, opt, &rep)) {
      good = mid;
      best = std::move(rep);
    } else {
      lo = mid + 1;
    }
  }
  return MinimalLogN{good, std::move(best)};
}

double gap_log2(const LatticeBasis& M, const mpz_class& N, std::size_t n, const ReductionParams& params) {
  DhlpVerdict v = decide_dhlp(M, N, 32, DhlpSide::orthogonal, params);
  return v.profile.g_log2(M.ambient_dim() - n);
}

json default_suite_params(const std::string& suite) {
  if (suite == "table4")
    return {{"m", 40}, {"r", 4}, {"alpha", 32768}, {"n_values", {4, 8}}, {"seeds", {1, 2}}, {"lo", 4}, {"hi_slack", 8}};
  if (suite == "table5")
    return {{"rows", {{{"r", 10}, {"m", 50}, {"n", 25}, {"log_N", 100}, {"alpha", 499}}}},
            {"seeds", {1, 2}},
            {"tau_log2", 32}};
  if (suite == "table2") return {{"m_values", {16, 32}}, {"log_N", 100}, {"seeds", {1, 2, 3}}};
  if (suite == "success-rate")
    return {{"n", 3}, {"m", 6}, {"alpha", 2}, {"samples", 200}, {"epsilon", 0.5}, {"delta", 0.99}, {"seed", 1}, {"extra_bits", 1}};
  throw InvalidArgument("unknown suite: " + suite);
}

std::vector<ExperimentRow> run_suite(const std::string& suite, const json& params, std::size_t threads) {
  std::vector<ExperimentRow> rows;
  try {
    if (suite == "table4") rows = table4(params, threads);
    else if (suite == "table5") rows = table5(params, threads);
    else if (suite == "table2") rows = table2(params, threads);
    else if (suite == "success-rate") rows = success_rate(params, threads);
    else throw InvalidArgument("unknown suite: " + suite);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad suite parameters: ") + e.what());
  }
  std::sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
    return std::tie(a.n, a.m, a.r, a.log_N, a.seed, a.algo) < std::tie(b.n, b.m, b.r, b.log_N, b.seed, b.algo);
  });
  return rows;
}

void write_rows_csv(std::ostream& os, const std::vector<ExperimentRow>& rows, bool timings) {
  write_csv_row(os, {"n", "m", "r", "log_N", "log_mu", "seed", "algo", "success", "sigma_out", "g_gap_log2", "step1_ms",
                     "step2_ms"});
  for (const auto& r : rows) {
    write_csv_row(os, {std::to_string(r.n), std::to_string(r.m), std::to_string(r.r), fmt(r.log_N, "%.0f"),
                       fmt(r.log_mu, "%.4f"), std::to_string(r.seed), r.algo, r.success,
                       r.sigma_out ? fmt(*r.sigma_out, "%.4f") : "", r.g_gap_log2 ? fmt(*r.g_gap_log2, "%.4f") : "",
                       timings ? fmt(r.step1_ms, "%.3f") : "", timings ? fmt(r.step2_ms, "%.3f") : ""});
  }
}

}  // namespace hlp
