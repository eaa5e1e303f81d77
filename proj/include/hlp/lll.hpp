#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hlp/lattice.hpp"

namespace hlp {

struct ReductionParams {
  mpq_class delta{99, 100};
  std::optional<std::uint64_t> max_swaps;
  bool provide_stats = true;
  // Exact fraction-free pass after the floating-point pass.  Turning it off
  // drops the certificate; only internal callers that verify by other means do so.
  bool certify = true;
};

struct ReductionStats {
  std::uint64_t swap_count = 0;
  std::uint64_t size_reduction_count = 0;
  std::uint64_t exact_swaps = 0;  // swaps the certification pass still had to make
  std::size_t max_intermediate_bitlength = 0;
  std::vector<double> norms;  // of the sorted output rows
  bool certified = false;
};

struct ReductionResult {
  LatticeBasis basis;       // rows sorted by nondecreasing norm, ties lexicographic
  IntegerMatrix lll_order;  // the δ-reduced basis in reduction order
  ReductionStats stats;
};

ReductionResult lll_reduce(const LatticeBasis& b, const ReductionParams& params = {});

// In-place reduction of independent rows; no sorting.
ReductionStats lll_reduce_rows(IntegerMatrix& b, const ReductionParams& params = {});

// Exact check of size reduction (|mu| <= 1/2) and the δ-Lovász condition.
bool is_lll_reduced(const IntegerMatrix& b, const mpq_class& delta);

IntegerMatrix sort_by_norm(const IntegerMatrix& b);

void validate_delta(const mpq_class& delta);

}  // namespace hlp
