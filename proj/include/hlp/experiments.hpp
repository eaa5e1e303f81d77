#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hlp/instances.hpp"
#include "hlp/io.hpp"

namespace hlp {

struct ExperimentRow {
  std::size_t n = 0, m = 0, r = 0;
  double log_N = 0, log_mu = 0;
  std::uint64_t seed = 0;
  std::string algo;
  std::string success;  // "1"/"0", or a rate for the success-rate suite
  std::optional<double> sigma_out;
  std::optional<double> g_gap_log2;
  double step1_ms = 0, step2_ms = 0;
};

// Smallest log N in [lo, hi] at which `algo` recovers the planted lattice of
// gen_hlp(spec with that log N), by bisection (success assumed monotone).
// nullopt when hi itself fails.
struct MinimalLogN {
  unsigned log_N = 0;
  SolveReport report;
};
std::optional<MinimalLogN> minimal_log_n(GenSpec spec, Algorithm algo, unsigned lo, unsigned hi,
                                         const SolveOptions& opt = {});

// log2 g_{m−n} from the reduced orthogonal-side basis of M.
double gap_log2(const LatticeBasis& M, const mpz_class& N, std::size_t n, const ReductionParams& params = {});

// Built-in scaled parameters for each suite (also shipped under bench/).
json default_suite_params(const std::string& suite);

// Runs a suite; rows come back sorted by (n, m, r, log_N, seed, algo).
std::vector<ExperimentRow> run_suite(const std::string& suite, const json& params, std::size_t threads);

// Timing columns are left empty unless `timings` is set, so that the file is
// byte-identical across runs.
void write_rows_csv(std::ostream& os, const std::vector<ExperimentRow>& rows, bool timings);

}  // namespace hlp
