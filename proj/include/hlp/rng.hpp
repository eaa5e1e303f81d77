#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string_view>

namespace hlp {

// Seeded, splittable generator.  A child stream for name s under seed x is
// seeded with splitmix64(x ^ fnv1a64(s)); the engine is std::mt19937_64, whose
// output sequence is fixed by the C++ standard, and all range sampling below is
// done by explicit rejection so results do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  static std::uint64_t splitmix64(std::uint64_t x);
  static std::uint64_t fnv1a64(std::string_view s);
  static std::uint64_t derive(std::uint64_t seed, std::string_view stream);

  Rng stream(std::string_view name) const { return Rng(derive(seed_, name)); }
  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t bound);                  // [0, bound)
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);    // [lo, hi]
  mpz_class below(const mpz_class& bound);                   // [0, bound)
  mpz_class uniform(const mpz_class& lo, const mpz_class& hi);  // [lo, hi]
  mpz_class bits(std::size_t nbits);                         // [0, 2^nbits)

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace hlp
