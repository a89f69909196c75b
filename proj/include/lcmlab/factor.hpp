#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "lcmlab/bigint.hpp"
#include "lcmlab/error.hpp"
#include "lcmlab/primality.hpp"
#include "lcmlab/primes.hpp"

namespace lcmlab {

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;  // ascending by prime

inline BigInt recombine(const Factorization& fac) {
  BigInt n = 1;
  for (const auto& [p, e] : fac) n *= pow_big(p, e);
  return n;
}

namespace detail {

inline const std::vector<u64>& trial_primes() {
  static const std::vector<u64> primes = primes_up_to(10'000).primes;
  return primes;
}

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Brent's cycle finding with batched gcds, Montgomery arithmetic. Returns a
// nontrivial divisor of the odd composite n, or n on failure.
inline u64 brent_rho_u64(u64 n, u64 c, u64 x0) {
  Montgomery64 mont(n);
  const u64 cm = mont.to(c);
  auto step = [&](u64 v) { return mont.add(mont.mul(v, v), cm); };
  constexpr u64 kBatch = 128;
  u64 y = mont.to(x0), x = y, ys = y, q = mont.to(1), g = 1;
  for (u64 r = 1; g == 1; r <<= 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = step(y);
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      u64 lim = std::min(kBatch, r - k);
      for (u64 i = 0; i < lim; ++i) {
        y = step(y);
        q = mont.mul(q, x > y ? x - y : y - x);
      }
      g = gcd_u64(mont.from(q), n);
    }
    if (r > (u64{1} << 40)) break;
  }
  if (g == n) {
    // Backtrack one step at a time from the last saved point.
    do {
      ys = step(ys);
      g = gcd_u64(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

inline BigInt brent_rho_big(const BigInt& n, const BigInt& c, const BigInt& x0) {
  constexpr unsigned kBatch = 128;
  BigInt y = x0, x = x0, ys = x0, q = 1, g = 1, diff;
  auto step = [&](BigInt& v) {
    v *= v;
    v += c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  for (unsigned long r = 1; g == 1; r <<= 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) step(y);
    for (unsigned long k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      unsigned long lim = std::min<unsigned long>(kBatch, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        step(y);
        diff = x - y;
        q *= diff;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      g = gcd_big(q, n);
    }
    if (r > (1ul << 40)) break;
  }
  if (g == n) {
    do {
      step(ys);
      g = gcd_big(BigInt(x - ys), n);
    } while (g == 1);
  }
  return g;
}

// Returns (m, k) with n = m^k and k maximal among small exponents tried.
inline std::pair<BigInt, unsigned> perfect_power(const BigInt& n) {
  BigInt root, rem;
  unsigned long bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  // Cofactors here have no prime factor below 10^4, so the base exceeds 2^13.
  for (unsigned long k = bits / 13; k >= 2; --k) {
    mpz_rootrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), k);
    if (rem == 0) return {root, static_cast<unsigned>(k)};
  }
  return {n, 1};
}

// Splits an odd composite with no factors below 10^4 into a nontrivial divisor.
inline BigInt split(const BigInt& n, std::mt19937_64& rng) {
  for (;;) {
    if (fits_u64(n)) {
      u64 nn = to_u64(n);
      u64 c = rng() % (nn - 3) + 1;
      u64 x0 = rng() % nn;
      u64 g = brent_rho_u64(nn, c, x0);
      if (g != nn && g != 1) return from_u64(g);
    } else {
      BigInt c = from_u64(rng()) % (n - 3) + 1;
      BigInt x0 = from_u64(rng()) % n;
      BigInt g = brent_rho_big(n, c, x0);
      if (g != n && g != 1) return g;
    }
  }
}

inline void factor_cofactor(const BigInt& n, unsigned mult, std::map<BigInt, unsigned>& out, std::mt19937_64& rng,
                            u64 seed) {
  if (n == 1) return;
  if (is_prime(n, seed)) {
    out[n] += mult;
    return;
  }
  auto [base, k] = perfect_power(n);
  if (k > 1) {
    factor_cofactor(base, mult * k, out, rng, seed);
    return;
  }
  BigInt d = split(n, rng);
  BigInt rest = n / d;
  factor_cofactor(d, mult, out, rng, seed);
  factor_cofactor(rest, mult, out, rng, seed);
}

}  // namespace detail

// Complete factorization: trial division by primes up to 10^4, then Brent-
// Pollard rho on what remains. Deterministic for a fixed seed.
inline Factorization factor(const BigInt& n, u64 seed = kDefaultSeed) {
  if (sgn(n) <= 0) throw PreconditionError("factor: n must be >= 1");
  Factorization result;
  BigInt rest = n;
  for (u64 p : detail::trial_primes()) {
    if (rest == 1) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
      result.push_back({from_u64(p), e});
    }
    if (fits_u64(rest) && p * p > to_u64(rest)) break;
  }
  if (rest == 1) return result;
  std::map<BigInt, unsigned> large;
  std::mt19937_64 rng(seed);
  detail::factor_cofactor(rest, 1, large, rng, seed);
  for (auto& [p, e] : large) result.push_back({p, e});
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) { return a.prime < b.prime; });
  return result;
}

// Factors a cofactor with no prime factor below 10^4; skips trial division.
// Used by the sieve, whose cofactors are free of primes up to its bound.
inline void factor_large_cofactor(const BigInt& n, std::map<BigInt, unsigned>& out, u64 seed) {
  if (n == 1) return;
  std::mt19937_64 rng(seed);
  detail::factor_cofactor(n, 1, out, rng, seed);
}

}  // namespace lcmlab
