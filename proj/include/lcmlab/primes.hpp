#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "lcmlab/bigint.hpp"
#include "lcmlab/error.hpp"

namespace lcmlab {

struct PrimeList {
  u64 limit = 0;
  std::vector<u64> primes;  // ascending, exactly the primes <= limit
};

namespace detail {

inline std::vector<u64> simple_sieve(u64 limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<u64> out;
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace detail

// Sieve of Eratosthenes; above 10^6 the range is processed in 2^18-wide
// segments using the base primes up to sqrt(limit).
inline PrimeList primes_up_to(u64 limit) {
  if (limit < 2) throw PreconditionError("primes_up_to: limit must be >= 2");
  constexpr u64 kDirect = 1'000'000;
  constexpr u64 kSegment = u64{1} << 18;
  PrimeList list;
  list.limit = limit;
  if (limit <= kDirect) {
    list.primes = detail::simple_sieve(limit);
    return list;
  }
  list.primes = detail::simple_sieve(kDirect);
  u64 root = static_cast<u64>(std::sqrt(static_cast<long double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;
  std::vector<u64> base = detail::simple_sieve(std::max<u64>(root, 2));
  std::vector<char> seg(kSegment);
  for (u64 lo = kDirect + 1; lo <= limit; lo += kSegment) {
    u64 hi = std::min(limit, lo + kSegment - 1);
    std::fill(seg.begin(), seg.end(), 0);
    for (u64 p : base) {
      if (p * p > hi) break;
      u64 start = std::max(p * p, (lo + p - 1) / p * p);
      for (u64 j = start; j <= hi; j += p) seg[j - lo] = 1;
    }
    for (u64 n = lo; n <= hi; ++n)
      if (!seg[n - lo]) list.primes.push_back(n);
  }
  return list;
}

// Primes in [lo, hi] by segmented sieve; used for sampling windows.
inline std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2 || hi < lo) return out;
  lo = std::max<u64>(lo, 2);
  u64 root = static_cast<u64>(std::sqrt(static_cast<long double>(hi))) + 1;
  std::vector<u64> base = detail::simple_sieve(std::max<u64>(root, 2));
  std::vector<char> seg(hi - lo + 1, 0);
  for (u64 p : base) {
    if (p * p > hi) break;
    u64 start = std::max(p * p, (lo + p - 1) / p * p);
    for (u64 j = start; j <= hi; j += p) seg[j - lo] = 1;
  }
  for (u64 n = lo; n <= hi; ++n)
    if (!seg[n - lo]) out.push_back(n);
  return out;
}

}  // namespace lcmlab
