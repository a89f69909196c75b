#include <gtest/gtest.h>

#include <random>

#include "lcmlab/factor.hpp"
#include "lcmlab/parser.hpp"
#include "lcmlab/primality.hpp"
#include "lcmlab/primes.hpp"

using namespace lcmlab;

namespace {

IntPolynomial random_poly(std::mt19937_64& rng, std::size_t max_degree, long range) {
  std::uniform_int_distribution<std::size_t> deg(0, max_degree);
  std::uniform_int_distribution<long> c(-range, range);
  std::vector<BigInt> v(deg(rng) + 1);
  for (auto& x : v) x = c(rng);
  return IntPolynomial(std::move(v));
}

}  // namespace

TEST(Parser, CanonicalForms) {
  EXPECT_EQ(parse_polynomial("x^4+1").to_string(), "x^4 + 1");
  EXPECT_EQ(parse_polynomial("x^6 + 2*x^3 + 2").to_string(), "x^6 + 2*x^3 + 2");
  EXPECT_EQ(parse_polynomial("(x+1)^2").to_string(), "x^2 + 2*x + 1");
  EXPECT_EQ(parse_polynomial("-x^2+3").to_string(), "-x^2 + 3");
  EXPECT_EQ(parse_polynomial("2*(x-1)*x").to_string(), "2*x^2 - 2*x");
  EXPECT_EQ(parse_polynomial("  7 ").to_string(), "7");
  EXPECT_EQ(parse_polynomial("x - x").to_string(), "0");
}

TEST(Parser, ReportsPosition) {
  auto pos = [](const char* s) {
    try {
      parse_polynomial(s);
    } catch (const SyntaxError& e) {
      return static_cast<long>(e.position());
    }
    return -1L;
  };
  EXPECT_EQ(pos("3x"), 1);
  EXPECT_EQ(pos("x^"), 2);
  EXPECT_EQ(pos("x**2"), 2);
  EXPECT_EQ(pos(""), 0);
  EXPECT_EQ(pos("1/2"), 1);
  EXPECT_GE(pos("(x+1"), 0);
  EXPECT_GE(pos("x^99999"), 0);
}

TEST(Parser, RoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    IntPolynomial f = random_poly(rng, 9, 1000);
    EXPECT_EQ(parse_polynomial(f.to_string()), f) << f.to_string();
  }
}

TEST(Polynomial, Arithmetic) {
  IntPolynomial f{1, 0, 1};  // x^2 + 1
  EXPECT_EQ(f.degree(), 2u);
  EXPECT_EQ(f.evaluate(BigInt(4)), 17);
  EXPECT_EQ(f.derivative(), IntPolynomial({0, 2}));
  EXPECT_EQ(IntPolynomial({1, 0, 1}).compose(IntPolynomial({0, 0, 1})), parse_polynomial("x^4+1"));
  EXPECT_EQ((f * f).to_string(), "x^4 + 2*x^2 + 1");
  EXPECT_EQ(f.pow(3), f * f * f);
  EXPECT_TRUE((f - f).is_zero());
}

TEST(Polynomial, RationalDivisionProperty) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    IntPolynomial a = random_poly(rng, 8, 50), b = random_poly(rng, 5, 50);
    if (b.is_zero()) continue;
    auto [q, r] = divmod(to_rational(a), to_rational(b));
    EXPECT_EQ(q * to_rational(b) + r, to_rational(a));
    EXPECT_TRUE(r.is_zero() || r.degree() < b.degree());
  }
}

TEST(Polynomial, EvaluationMatchesHorner) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    IntPolynomial f = random_poly(rng, 7, 100);
    long n = static_cast<long>(rng() % 2001) - 1000;
    BigInt direct = 0, power = 1;
    for (const auto& c : f.coeffs()) {
      direct += c * power;
      power *= n;
    }
    EXPECT_EQ(f.evaluate(BigInt(n)), direct);
  }
}

TEST(Primes, SieveCounts) {
  EXPECT_EQ(primes_up_to(100).primes.size(), 25u);
  EXPECT_EQ(primes_up_to(1'000'000).primes.size(), 78498u);
  EXPECT_EQ(primes_up_to(3'000'000).primes.size(), 216816u);
  auto r = primes_in_range(1'000'000, 1'000'100);
  EXPECT_EQ(r.front(), 1'000'003u);
  EXPECT_THROW(primes_up_to(1), PreconditionError);
}

TEST(Primality, AgreesWithSieve) {
  const auto primes = primes_up_to(200'000).primes;
  std::vector<bool> flag(200'001, false);
  for (auto p : primes) flag[p] = true;
  for (u64 n = 0; n <= 200'000; ++n) ASSERT_EQ(is_prime(n), flag[n]) << n;
}

TEST(Primality, HardCases) {
  for (u64 n : {561ULL, 1105ULL, 3215031751ULL, 3825123056546413051ULL})
    EXPECT_FALSE(is_prime(n)) << n;
  EXPECT_TRUE(is_prime(u64{18446744073709551557ULL}));
  EXPECT_TRUE(is_prime(BigInt("170141183460469231731687303715884105727")));
  EXPECT_FALSE(is_prime(BigInt("318665857834031151167461")));
  EXPECT_FALSE(is_prime(BigInt("3317044064679887385961981")));
}

TEST(Factor, Examples) {
  auto f = factor(BigInt(170));
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].prime, 2);
  EXPECT_EQ(f[2].prime, 17);
  EXPECT_TRUE(factor(BigInt(1)).empty());
  auto sq = factor(BigInt("1000000016000000063"));  // 1000000007 * 1000000009
  ASSERT_EQ(sq.size(), 2u);
  auto pp = factor(pow_big(BigInt(1'000'003), 5));
  ASSERT_EQ(pp.size(), 1u);
  EXPECT_EQ(pp[0].exponent, 5u);
}

TEST(Factor, RecombinesToInputProperty) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 300; ++i) {
    BigInt n = 1;
    const int parts = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < parts; ++k) n *= BigInt(static_cast<unsigned long>(rng() >> 34) + 2);
    auto fac = factor(n, rng());
    EXPECT_EQ(recombine(fac), n);
    for (std::size_t j = 0; j < fac.size(); ++j) {
      EXPECT_TRUE(is_prime(fac[j].prime));
      if (j) {
        EXPECT_LT(fac[j - 1].prime, fac[j].prime);
      }
    }
  }
}

TEST(Factor, SeedDoesNotChangeResult) {
  BigInt n("998244368971909710889394239");  // 998244353 * 1000000007 * 1000000009
  auto a = factor(n, 1), b = factor(n, 99);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[0].prime, 998244353);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].prime, b[i].prime);
}
