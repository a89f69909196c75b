#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "lcmlab/bigint.hpp"

namespace lcmlab {

inline constexpr u64 kDefaultSeed = 0xC11E;

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 e, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

// Montgomery form arithmetic for an odd 64-bit modulus.
class Montgomery64 {
 public:
  explicit Montgomery64(u64 n) : n_(n) {
    u64 inv = n;
    for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;
    ninv_ = inv;  // n * ninv == 1 mod 2^64
    r2_ = static_cast<u64>((static_cast<u128>(-n) % n) * (static_cast<u128>(-n) % n) % n);
  }

  u64 modulus() const { return n_; }

  u64 reduce(u128 t) const {
    u64 m = static_cast<u64>(t) * (0 - ninv_);
    u128 mn = static_cast<u128>(m) * n_;
    u128 s = t + mn;
    bool carry = s < t;
    u64 r = static_cast<u64>(s >> 64);
    if (carry || r >= n_) r -= n_;
    return r;
  }

  u64 to(u64 a) const { return mul(a % n_, r2_); }
  u64 from(u64 a) const { return reduce(a); }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    if (s < a || s >= n_) s -= n_;
    return s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (n_ - b); }

  u64 pow(u64 base_m, u64 e) const {
    u64 result = to(1);
    while (e) {
      if (e & 1) result = mul(result, base_m);
      base_m = mul(base_m, base_m);
      e >>= 1;
    }
    return result;
  }

 private:
  u64 n_;
  u64 ninv_;
  u64 r2_;
};

inline bool miller_rabin_u64(u64 n) {
  if (n < 2) return false;
  constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  Montgomery64 mont(n);
  const u64 one = mont.to(1);
  const u64 minus_one = mont.to(n - 1);
  for (u64 a : kBases) {
    u64 x = mont.pow(mont.to(a), d);
    if (x == one || x == minus_one) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mont.mul(x, x);
      if (x == minus_one) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool miller_rabin_big(const BigInt& n, u64 seed, int rounds) {
  static constexpr std::array<unsigned long, 25> kSmall = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                           43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (unsigned long p : kSmall)
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  BigInt d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  const BigInt nm1 = n - 1;
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ULL);
  BigInt a, x, span = n - 3;
  for (int round = 0; round < rounds; ++round) {
    // a uniform in [2, n-2], built from 64-bit limbs of the seeded generator.
    BigInt raw = 0;
    for (size_t bits = 0; bits < mpz_sizeinbase(n.get_mpz_t(), 2) + 64; bits += 64) {
      raw <<= 64;
      raw += from_u64(rng());
    }
    mpz_mod(a.get_mpz_t(), raw.get_mpz_t(), span.get_mpz_t());
    a += 2;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) continue;
    bool composite = true;
    for (unsigned long r = 1; r < s; ++r) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
      if (x == nm1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

// Deterministic for n < 2^64 (first twelve prime bases); beyond that 40
// Miller-Rabin rounds with bases drawn from `seed`.
inline bool is_prime(const BigInt& n, u64 seed = kDefaultSeed) {
  if (sgn(n) <= 0) return false;
  if (fits_u64(n)) return detail::miller_rabin_u64(to_u64(n));
  return detail::miller_rabin_big(n, seed, 40);
}

inline bool is_prime(u64 n) { return detail::miller_rabin_u64(n); }

}  // namespace lcmlab
