#pragma once

#include <map>
#include <utility>
#include <vector>

#include "lcmlab/bigint.hpp"
#include "lcmlab/error.hpp"
#include "lcmlab/table.hpp"

namespace lcmlab {

// Per-prime maximum exponents over a table plus the logarithmic summaries.
// "small" primes are p <= D*N, "large" primes p > D*N.
struct LcmAccumulator {
  long N = 0;
  Rational D;
  BigInt threshold_floor;  // floor(D*N)
  std::map<BigInt, unsigned> max_exponent;
  double log_L = 0;
  double log_l = 0;        // log of the radical
  double log_Q = 0;        // sum of log|f(n)| over nonzero f(n)
  double log_Q_small = 0;  // part of log Q from p <= D*N
  double log_Q_large = 0;  // part from p > D*N
  double log_l_large = 0;  // radical restricted to large primes

  bool is_large(const BigInt& p) const { return p > threshold_floor; }

  // L itself; intended for small N only.
  BigInt lcm() const {
    BigInt v = 1;
    for (const auto& [p, e] : max_exponent) v *= pow_big(p, e);
    return v;
  }

  BigInt radical() const {
    BigInt v = 1;
    for (const auto& kv : max_exponent) v *= kv.first;
    return v;
  }
};

inline BigInt large_threshold(const Rational& D, long N) {
  Rational t = D * N;
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  return fl;
}

inline LcmAccumulator accumulate(const MultiplicityTable& table, const Rational& D) {
  if (D <= 0) throw PreconditionError("accumulate: D must be positive");
  LcmAccumulator acc;
  acc.N = table.max_n();
  acc.D = D;
  acc.threshold_floor = large_threshold(D, acc.N);
  std::map<BigInt, double> logs;
  for (const auto& e : table.entries()) {
    if (e.is_zero()) continue;
    for (const auto& [p, k] : e.factors) {
      auto [it, inserted] = acc.max_exponent.try_emplace(p, k);
      if (!inserted && it->second < k) it->second = k;
      auto lit = logs.find(p);
      if (lit == logs.end()) lit = logs.emplace(p, log_big(p)).first;
      const double contrib = k * lit->second;
      if (acc.is_large(p)) {
        acc.log_Q_large += contrib;
      } else {
        acc.log_Q_small += contrib;
      }
    }
  }
  for (const auto& [p, e] : acc.max_exponent) {
    const double lp = logs.at(p);
    acc.log_L += e * lp;
    acc.log_l += lp;
    if (acc.is_large(p)) acc.log_l_large += lp;
  }
  for (const auto& e : table.entries()) {
    if (e.is_zero()) continue;
    BigInt v = e.abs_value();
    if (v > 1) acc.log_Q += log_big(v);
  }
  return acc;
}

// For every p > D*N: the (n, v_p(f(n))) pairs with p | f(n), ascending n.
using LargePrimeProfile = std::map<BigInt, std::vector<std::pair<long, unsigned>>>;

inline LargePrimeProfile large_prime_profile(const MultiplicityTable& table, const Rational& D) {
  LargePrimeProfile out;
  const BigInt threshold = large_threshold(D, table.max_n());
  for (const auto& e : table.entries())
    for (const auto& [p, k] : e.factors)
      if (p > threshold) out[p].emplace_back(e.n, k);
  return out;
}

}  // namespace lcmlab
