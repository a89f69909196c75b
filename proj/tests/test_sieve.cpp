#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "lcmlab/accumulate.hpp"
#include "lcmlab/parser.hpp"
#include "lcmlab/properties.hpp"
#include "lcmlab/sieve.hpp"

using namespace lcmlab;

namespace {

BigInt direct_lcm(const IntPolynomial& f, long N) {
  BigInt L = 1;
  for (long n = 1; n <= N; ++n) {
    BigInt v = abs(f.evaluate(BigInt(n)));
    if (v != 0) L = lcm_big(L, v);
  }
  return L;
}

}  // namespace

TEST(Table, SmallExamples) {
  auto t = build_table(parse_polynomial("x^3-2"), 10);
  ASSERT_EQ(t.entries().size(), 10u);
  EXPECT_EQ(t.find(1)->sign, -1);
  EXPECT_TRUE(t.find(1)->factors.empty());
  EXPECT_EQ(t.find(3)->abs_value(), 25);
  EXPECT_EQ(t.find(10)->abs_value(), 998);
  EXPECT_TRUE(build_table(parse_polynomial("x^2+1"), 0).empty());
}

TEST(Table, EqualsBruteOracleOnRandomPolynomials) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 60; ++i) {
    auto f = detail::random_int_polynomial(rng, 1 + rng() % 5, 40);
    const long N = 1 + static_cast<long>(rng() % 400);
    SieveOptions opts;
    opts.seed = rng();
    opts.threads = 1 + rng() % 3;
    opts.segment = 1 + static_cast<long>(rng() % 200);
    EXPECT_EQ(build_table(f, N, opts), brute_table(f, N, pow_big(BigInt(10), 30))) << f.to_string() << " N=" << N;
  }
}

TEST(Table, NonSquarefreeAndZeroValues) {
  auto f = parse_polynomial("(x-7)*(x^2+1)^2");
  auto t = build_table(f, 50);
  EXPECT_EQ(t, brute_table(f, 50));
  EXPECT_EQ(t.zero_ns(), (std::vector<long>{7}));
}

TEST(Table, IndependentOfThreadsSegmentsAndBound) {
  const auto f = parse_polynomial("x^4+x+1");
  SieveOptions a, b, c;
  a.threads = 1;
  b.threads = 4;
  b.segment = 37;
  c.small_bound = 2;
  c.seed = 7;
  auto ta = build_table(f, 3000, a);
  EXPECT_EQ(ta, build_table(f, 3000, b));
  EXPECT_EQ(ta, build_table(f, 3000, c));
}

TEST(Table, RangesMergeToFullTable) {
  const auto f = parse_polynomial("x^6+2*x^3+2");
  TableBuilder builder(f, 900);
  auto whole = builder.build();
  auto merged = merge(merge(builder.build(1, 300), builder.build(601, 900)), builder.build(301, 600));
  EXPECT_EQ(whole, merged);
  EXPECT_THROW(builder.build(0, 10), PreconditionError);
  EXPECT_THROW(builder.build(1, 901), PreconditionError);
}

TEST(Table, CsvRoundTrip) {
  const auto f = parse_polynomial("x^2-x+41");
  auto t = build_table(f, 500);
  std::stringstream ss;
  write_table_csv(ss, t);
  EXPECT_EQ(read_table_csv(ss, f), t);
  std::stringstream bad("nope\n");
  EXPECT_THROW(read_table_csv(bad, f), Error);
}

TEST(Table, LargeValuesBeyondSixtyFourBits) {
  // Values near 10^40 exercise the big-integer rho path.
  const auto f = parse_polynomial("x^10+x^3+1");
  auto t = build_table(f, 120);
  for (const auto& e : t.entries()) {
    EXPECT_EQ(e.abs_value(), abs(f.evaluate(BigInt(e.n))));
    for (const auto& [p, k] : e.factors) EXPECT_TRUE(is_prime(p));
  }
  EXPECT_EQ(t, brute_table(f, 120, pow_big(BigInt(10), 60)));
}

TEST(Accumulate, ExactLcmExamples) {
  auto t = build_table(parse_polynomial("x^2+1"), 4);
  auto acc = accumulate(t, Rational(3));
  EXPECT_EQ(acc.lcm(), 170);
  EXPECT_EQ(acc.radical(), 170);
  EXPECT_NEAR(acc.log_L, std::log(170.0), 1e-12);
  EXPECT_NEAR(acc.log_Q, std::log(2.0 * 5 * 10 * 17), 1e-12);
  EXPECT_THROW(accumulate(t, Rational(0)), PreconditionError);
}

TEST(Accumulate, LcmMatchesDirectLcm) {
  for (const char* s : {"x^2+1", "x^3-2", "x^4+1", "x^4+x+1", "x^6+2*x^3+2", "x^4+x^3+x^2+x+1"}) {
    const auto f = parse_polynomial(s);
    for (long N : {1L, 17L, 120L, 300L}) {
      auto acc = accumulate(build_table(f, N), Rational(1));
      const BigInt L = direct_lcm(f, N);
      EXPECT_EQ(acc.lcm(), L) << s << " N=" << N;
      EXPECT_NEAR(acc.log_L, log_big(L), 1e-9 * std::max(1.0, log_big(L)));
    }
  }
}

TEST(Accumulate, SplitSumsToLogQAndLargeProfile) {
  const auto f = parse_polynomial("x^4+x+1");
  auto t = build_table(f, 2000);
  const Rational D(5);
  auto acc = accumulate(t, D);
  EXPECT_NEAR(acc.log_Q_small + acc.log_Q_large, acc.log_Q, 1e-6 * acc.log_Q);
  EXPECT_GE(acc.log_L, acc.log_l);
  auto profile = large_prime_profile(t, D);
  for (const auto& [p, hits] : profile) {
    EXPECT_GT(p, 10000);
    for (const auto& [n, k] : hits) EXPECT_EQ(mpz_divisible_p(t.find(n)->abs_value().get_mpz_t(), p.get_mpz_t()) != 0, true);
  }
}

TEST(Accumulate, MonotoneInN) {
  const auto f = parse_polynomial("x^3-2");
  auto full = build_table(f, 1500);
  double prev_L = -1, prev_l = -1;
  for (long N = 1; N <= 1500; N += 37) {
    std::vector<TableEntry> prefix(full.entries().begin(), full.entries().begin() + N);
    auto acc = accumulate(MultiplicityTable(f, prefix), Rational(4));
    EXPECT_GE(acc.log_L, prev_L);
    EXPECT_GE(acc.log_l, prev_l);
    prev_L = acc.log_L;
    prev_l = acc.log_l;
  }
}
