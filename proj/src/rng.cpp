#include "hlp/rng.hpp"

#include "hlp/errors.hpp"

namespace hlp {

std::uint64_t Rng::splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Rng::derive(std::uint64_t seed, std::string_view stream) { return splitmix64(seed ^ fnv1a64(stream)); }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("Rng::below(0)");
  const std::uint64_t lim = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t x = next();
    if (x < lim) return x % bound;
  }
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InvalidArgument("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  return lo + static_cast<std::int64_t>(below(span));
}

mpz_class Rng::bits(std::size_t nbits) {
  mpz_class x = 0;
  std::size_t have = 0;
  while (have < nbits) {
    std::size_t take = std::min<std::size_t>(64, nbits - have);
    std::uint64_t w = next();
    if (take < 64) w &= (std::uint64_t{1} << take) - 1;
    mpz_class t;
    mpz_import(t.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
    x <<= static_cast<mp_bitcnt_t>(take);
    x += t;
    have += take;
  }
  return x;
}

mpz_class Rng::below(const mpz_class& bound) {
  if (bound <= 0) throw InvalidArgument("Rng::below: non-positive bound");
  const std::size_t nb = mpz_sizeinbase(bound.get_mpz_t(), 2);
  for (;;) {
    mpz_class x = bits(nb);
    if (x < bound) return x;
  }
}

mpz_class Rng::uniform(const mpz_class& lo, const mpz_class& hi) {
  if (hi < lo) throw InvalidArgument("Rng::uniform: empty range");
  return lo + below(hi - lo + 1);
}

}  // namespace hlp
