#include <gtest/gtest.h>

#include <complex>
#include <numbers>
#include <set>

#include "lcmlab/parser.hpp"
#include "lcmlab/structure.hpp"

using namespace lcmlab;

TEST(CyclotomicPartition, Examples) {
  auto p8 = potent_partition_cyclotomic(8);
  EXPECT_EQ(p8.kind, PartitionKind::Cyclotomic);
  EXPECT_EQ(p8.r, 2u);
  EXPECT_EQ(p8.exponent_classes, (std::vector<std::vector<u64>>{{1, 5}, {3, 7}}));
  EXPECT_EQ(p8.v, (std::vector<BigInt>{0, 0}));
  EXPECT_EQ(p8.d_potent(), 4);
  EXPECT_EQ(*p8.dim_claim, 3u);

  auto p9 = potent_partition_cyclotomic(9);
  EXPECT_EQ(p9.exponent_classes, (std::vector<std::vector<u64>>{{1, 4, 7}, {2, 5, 8}}));

  auto p6 = potent_partition_cyclotomic(6);
  EXPECT_EQ(p6.kind, PartitionKind::Trivial);
  EXPECT_EQ(p6.r, 1u);
  EXPECT_EQ(p6.v.front(), 1);

  EXPECT_THROW(potent_partition_cyclotomic(36), PreconditionError);
  EXPECT_THROW(potent_partition_cyclotomic(2), PreconditionError);
}

TEST(CyclotomicPartition, ClassesCoverPrimitiveResiduesAndSumToWitness) {
  for (u64 m = 3; m <= 400; ++m) {
    PotentPartitionDescriptor desc;
    try {
      desc = potent_partition_cyclotomic(m);
    } catch (const PreconditionError&) {
      continue;
    }
    std::set<u64> seen;
    for (std::size_t i = 0; i < desc.r; ++i) {
      std::complex<long double> sum = 0;
      for (u64 a : desc.exponent_classes[i]) {
        EXPECT_TRUE(seen.insert(a).second) << "m=" << m << " repeats " << a;
        EXPECT_EQ(std::gcd(a, m), 1u);
        const long double angle = 2 * std::numbers::pi_v<long double> * a / m;
        sum += std::complex<long double>(std::cos(angle), std::sin(angle));
      }
      EXPECT_NEAR(static_cast<double>(sum.real()), desc.v[i].get_d(), 1e-9) << "m=" << m;
      EXPECT_NEAR(static_cast<double>(sum.imag()), 0.0, 1e-9) << "m=" << m;
    }
    EXPECT_EQ(seen.size(), euler_phi(m)) << m;
  }
}

TEST(DecomposablePartition, Examples) {
  auto f = parse_polynomial("x^4+1");
  auto d1 = potent_partition_decomposable(f, to_rational(parse_polynomial("x^2+1")), to_rational(parse_polynomial("x^2")));
  EXPECT_EQ(d1.r, 2u);
  EXPECT_EQ(d1.class_sizes, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(d1.d_potent(), 4);

  auto g = parse_polynomial("x^6+2*x^3+2");
  auto d2 = potent_partition_decomposable(g, to_rational(parse_polynomial("x^2+2*x+2")), to_rational(parse_polynomial("x^3")));
  EXPECT_EQ(d2.class_sizes, (std::vector<std::size_t>{3, 3}));
  EXPECT_EQ(d2.v, (std::vector<BigInt>{0, 0}));

  // f = (x^2 + 1) o (2x^2 + x): classes are roots of 2x^2 + x - beta.
  auto h = parse_polynomial("2*x^2+x");
  auto fh = parse_polynomial("x^2+1").compose(h);
  auto d3 = potent_partition_decomposable(fh, to_rational(parse_polynomial("x^2+1")), to_rational(h));
  EXPECT_EQ(d3.b.front(), (std::vector<BigInt>{2, 2}));
  EXPECT_EQ(d3.v.front(), -1);
  EXPECT_EQ(d3.d_potent(), 4 * 2 + 2 * 1);

  EXPECT_THROW(potent_partition_decomposable(f, to_rational(parse_polynomial("x^2+2")), to_rational(parse_polynomial("x^2"))),
               PreconditionError);
}

TEST(DecomposablePartition, VietaIdentityForRationalInner) {
  // h = (3/2) x^3 - (5/4) x^2 + x: clearing denominators gives H = 6x^3 - 5x^2 + 4x.
  RatPolynomial h({Rational(0), Rational(1), Rational(-5, 4), Rational(3, 2)});
  RatPolynomial g({Rational(7), Rational(0), Rational(1)});
  RatPolynomial composed = g.compose(h);
  // Scale to an integer polynomial: f = 16 * g(h).
  std::vector<BigInt> coeffs;
  for (const auto& c : composed.coeffs()) coeffs.push_back(BigInt(c * 16));
  IntPolynomial f(coeffs);
  RatPolynomial g16 = g * Rational(16);
  auto desc = potent_partition_decomposable(f, g16, h);
  // Roots of H - c: sum = 5/6, so 6 * sum = 5 = -sign(6) * (-5).
  EXPECT_EQ(desc.b.front(), (std::vector<BigInt>{6, 6, 6}));
  EXPECT_EQ(desc.v.front(), 5);
}

TEST(DetectCyclotomic, Finds) {
  EXPECT_EQ(detect_cyclotomic(parse_polynomial("x^4+1")), 8u);
  EXPECT_EQ(detect_cyclotomic(parse_polynomial("x^4-x^2+1")), 12u);
  EXPECT_EQ(detect_cyclotomic(parse_polynomial("x^6+x^3+1")), 9u);
  EXPECT_FALSE(detect_cyclotomic(parse_polynomial("x^4+x+1")));
}

TEST(Galois, EstimatesOnExamples) {
  auto q = galois_order_estimate(parse_polynomial("x^2+1"), 1000);
  EXPECT_NEAR(q.split_fraction, 0.5, 0.06);
  auto c5 = galois_order_estimate(cyclotomic(5), 1000);
  EXPECT_NEAR(*c5.estimate, 4.0, 0.6);
  auto s3 = galois_order_estimate(parse_polynomial("x^3-2"), 1000);
  EXPECT_NEAR(*s3.estimate, 6.0, 1.5);
  EXPECT_LE(s3.ci_low, 6.0);
  EXPECT_GE(*s3.ci_high, 6.0);
  EXPECT_THROW(galois_order_estimate(parse_polynomial("x^2+1"), 50), PreconditionError);
}

TEST(Galois, SeedReproducible) {
  auto a = galois_order_estimate(cyclotomic(7), 300, 5);
  auto b = galois_order_estimate(cyclotomic(7), 300, 5);
  EXPECT_EQ(a.full_splits, b.full_splits);
}

TEST(Galois, WilsonInterval) {
  auto [lo, hi] = wilson_interval(50, 100);
  EXPECT_NEAR(lo, 0.4038, 1e-3);
  EXPECT_NEAR(hi, 0.5962, 1e-3);
  auto [lo0, hi0] = wilson_interval(0, 100);
  EXPECT_EQ(lo0, 0.0);
  EXPECT_GT(hi0, 0.0);
}

TEST(Primitivity, Examples) {
  auto c = primitive_galois_check(parse_polynomial("x^3-2"), 200);
  EXPECT_EQ(c.verdict, PrimitivityVerdict::RefutedCertainly);
  ASSERT_TRUE(c.witness_prime);
  EXPECT_EQ(degree_pattern(parse_polynomial("x^3-2"), *c.witness_prime).all_equal(), false);
  EXPECT_EQ(primitive_galois_check(cyclotomic(5), 1000).verdict, PrimitivityVerdict::Consistent);
  EXPECT_EQ(primitive_galois_check(parse_polynomial("x^2+x+7"), 500).verdict, PrimitivityVerdict::Consistent);
}
