#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace hlp {

// Every module error carries a stable kind string; the CLI serialises it.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define HLP_DEFINE_ERROR(Name)                                     \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}   \
  };

HLP_DEFINE_ERROR(InvalidArgument)
HLP_DEFINE_ERROR(DimensionMismatch)
HLP_DEFINE_ERROR(SingularBasis)
HLP_DEFINE_ERROR(RankDeficient)
HLP_DEFINE_ERROR(CompositeModulus)
HLP_DEFINE_ERROR(RadiusTooSmall)
HLP_DEFINE_ERROR(EnumerationBudgetExceeded)
HLP_DEFINE_ERROR(RankMismatch)
HLP_DEFINE_ERROR(CompletionModeUnavailable)
HLP_DEFINE_ERROR(KernelRankMismatch)
HLP_DEFINE_ERROR(ParamOutOfRange)
HLP_DEFINE_ERROR(ResampleBudgetExceeded)
HLP_DEFINE_ERROR(PrimeGenFailure)
HLP_DEFINE_ERROR(BlockAlignmentFailure)
HLP_DEFINE_ERROR(BudgetExceeded)
HLP_DEFINE_ERROR(InvalidInstance)

#undef HLP_DEFINE_ERROR

// gcd(det, N) > 1.  factor is a nontrivial divisor of N when one was exposed.
class NotInvertibleMod : public Error {
 public:
  NotInvertibleMod(const std::string& msg, mpz_class factor)
      : Error("NotInvertibleMod", msg), factor_(std::move(factor)) {}
  const mpz_class& factor() const noexcept { return factor_; }

 private:
  mpz_class factor_;
};

class NoInvertibleMinor : public Error {
 public:
  NoInvertibleMinor(const std::string& msg, std::optional<mpz_class> factor)
      : Error("NoInvertibleMinor", msg), factor_(std::move(factor)) {}
  const std::optional<mpz_class>& factor() const noexcept { return factor_; }

 private:
  std::optional<mpz_class> factor_;
};

class PerBlockFailure : public Error {
 public:
  PerBlockFailure(std::size_t block, const std::string& msg)
      : Error("PerBlockFailure", msg), block_(block) {}
  std::size_t block() const noexcept { return block_; }

 private:
  std::size_t block_;
};

}  // namespace hlp
