#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lcmlab/bigint.hpp"
#include "lcmlab/polymod.hpp"
#include "lcmlab/primes.hpp"
#include "lcmlab/verify.hpp"

namespace lcmlab {

struct PropertyResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

namespace detail {

inline IntPolynomial random_int_polynomial(std::mt19937_64& rng, std::size_t degree, long coeff_range) {
  std::uniform_int_distribution<long> c(-coeff_range, coeff_range);
  std::vector<BigInt> v(degree + 1);
  for (auto& x : v) x = c(rng);
  while (v.back() == 0) v.back() = c(rng);
  return IntPolynomial(std::move(v));
}

inline std::vector<BigInt> random_distinct_nodes(std::mt19937_64& rng, std::size_t count, long range) {
  std::uniform_int_distribution<long> dist(-range, range);
  std::set<long> seen;
  while (seen.size() < count) seen.insert(dist(rng));
  return {seen.begin(), seen.end()};
}

}  // namespace detail

// lagrange_A is an integer and does not move when f is shifted by a constant.
inline std::vector<PropertyResult> lagrange_properties(std::size_t trials, u64 seed) {
  std::mt19937_64 rng(seed);
  PropertyResult integral, shift;
  integral.name = "lagrange_A integral";
  shift.name = "lagrange_A shift-invariant";
  std::uniform_int_distribution<std::size_t> deg(2, 8);
  std::uniform_int_distribution<long> shift_dist(-1'000'000, 1'000'000);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = deg(rng);
    IntPolynomial f = detail::random_int_polynomial(rng, d, 50);
    std::uniform_int_distribution<std::size_t> kd(1, d - 1);
    const std::size_t k = kd(rng);
    auto nodes = detail::random_distinct_nodes(rng, d - k + 1, 200);
    ++integral.trials;
    ++shift.trials;
    BigInt A0;
    try {
      A0 = lagrange_A(f, k, 0, nodes);
    } catch (const InternalError& e) {
      integral.fail(f.to_string() + ": " + e.what());
      continue;
    }
    BigInt a = shift_dist(rng);
    if (lagrange_A(f, k, a, nodes) != A0) shift.fail(f.to_string() + " shifted by " + a.get_str());
  }
  return {integral, shift};
}

// not all zero; |a_i| <= (tN)^{1/t} + 1; |sum a_i n_i| <= (tN)^{1/t}
inline std::string check_combination(const std::vector<long>& nodes, long N, const std::vector<long>& a) {
  const std::size_t t = nodes.size();
  if (a.size() != t) return "wrong length";
  bool nonzero = false;
  long long sum = 0;
  const double radius = std::pow(static_cast<double>(t) * static_cast<double>(N), 1.0 / static_cast<double>(t));
  for (std::size_t i = 0; i < t; ++i) {
    nonzero = nonzero || a[i] != 0;
    if (std::abs(static_cast<double>(a[i])) > radius + 1 + 1e-9) return "coefficient too large";
    sum += static_cast<long long>(a[i]) * nodes[i];
  }
  if (!nonzero) return "all coefficients zero";
  if (std::abs(static_cast<double>(sum)) > radius + 1e-9) return "combination too large";
  return {};
}

inline PropertyResult small_combination_property(std::size_t trials, u64 seed) {
  std::mt19937_64 rng(seed);
  PropertyResult res;
  res.name = "small_combination postconditions";
  std::uniform_int_distribution<std::size_t> tdist(1, 5);
  std::uniform_int_distribution<long> ndist(1, 5000);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t t = tdist(rng);
    const long N = ndist(rng);
    std::uniform_int_distribution<long> node(1, N);
    std::vector<long> nodes(t);
    for (auto& n : nodes) n = node(rng);
    ++res.trials;
    try {
      auto a = small_combination(nodes, N);
      if (auto why = check_combination(nodes, N, a); !why.empty()) res.fail(why);
    } catch (const PreconditionError&) {
      --res.trials;  // over budget; not a postcondition trial
    }
  }
  return res;
}

// The lifted root is congruent to the input mod p^j and a root mod p^(j+1).
inline PropertyResult hensel_property(std::size_t trials, u64 seed) {
  std::mt19937_64 rng(seed);
  PropertyResult res;
  res.name = "hensel_lift postconditions";
  const auto primes = primes_up_to(2000).primes;
  std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
  std::uniform_int_distribution<std::size_t> deg(2, 7);
  std::uniform_int_distribution<unsigned> level(1, 6);
  while (res.trials < trials) {
    IntPolynomial f = detail::random_int_polynomial(rng, deg(rng), 1000);
    const u64 p = primes[pick(rng)];
    if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) continue;
    const IntPolynomial df = f.derivative();
    std::vector<u64> simple;
    for (u64 r : roots_mod_p(f, p, seed))
      if (!mpz_divisible_ui_p(BigInt(df.evaluate(from_u64(r))).get_mpz_t(), p)) simple.push_back(r);
    if (simple.empty()) continue;
    const BigInt pb = from_u64(p);
    BigInt root = from_u64(simple[rng() % simple.size()]);
    const unsigned j_max = level(rng);
    ++res.trials;
    for (unsigned j = 1; j <= j_max; ++j) {
      BigInt next = hensel_lift(f, pb, j, root);
      BigInt mod_j = pow_big(pb, j), mod_next = mod_j * pb;
      BigInt diff = next - root, val = f.evaluate(next);
      if (mpz_divisible_p(diff.get_mpz_t(), mod_j.get_mpz_t()) == 0 ||
          mpz_divisible_p(val.get_mpz_t(), mod_next.get_mpz_t()) == 0 || next < 0 || next >= mod_next) {
        res.fail(f.to_string() + " mod " + std::to_string(p) + "^" + std::to_string(j + 1));
        break;
      }
      root = next;
    }
  }
  return res;
}

}  // namespace lcmlab
