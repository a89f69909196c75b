#pragma once

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcmlab/algebra.hpp"
#include "lcmlab/decompose.hpp"
#include "lcmlab/irreducibility.hpp"
#include "lcmlab/polymod.hpp"
#include "lcmlab/primes.hpp"
#include "lcmlab/sieve.hpp"

namespace lcmlab {

enum class PartitionKind { Trivial, Decomposable, Cyclotomic, User };

inline const char* to_string(PartitionKind k) {
  switch (k) {
    case PartitionKind::Trivial: return "trivial";
    case PartitionKind::Decomposable: return "decomposable";
    case PartitionKind::Cyclotomic: return "cyclotomic";
    case PartitionKind::User: return "user";
  }
  return "?";
}

// Symbolic partition of the roots of f into potent classes S_1..S_r with
// integer witnesses sum_j b_ij * alpha_ij = v_i. Roots are never materialized:
// cyclotomic classes list exponents a of zeta^a, decomposable classes are the
// fibres h^{-1}(beta_i) over the roots of g.
struct PotentPartitionDescriptor {
  PartitionKind kind = PartitionKind::Trivial;
  std::size_t degree = 0;
  std::size_t r = 0;
  std::vector<std::size_t> class_sizes;
  std::vector<std::vector<u64>> exponent_classes;  // cyclotomic kinds only
  std::vector<std::vector<BigInt>> b;              // b[i][j] > 0
  std::vector<BigInt> v;
  std::optional<std::size_t> dim_claim;  // dim <S u {1}> over Q when known
  bool rank_assumed = false;             // user-asserted rank hypothesis

  // sum_ij b_ij + sum_i |v_i|
  BigInt d_potent() const {
    BigInt total = 0;
    for (const auto& row : b)
      for (const auto& x : row) total += x;
    for (const auto& x : v) total += abs(x);
    return total;
  }

  // max_i sum_j b_ij
  BigInt max_class_weight() const {
    BigInt best = 0;
    for (const auto& row : b) {
      BigInt s = std::accumulate(row.begin(), row.end(), BigInt(0));
      if (s > best) best = s;
    }
    return best;
  }

  void validate() const {
    std::size_t total = std::accumulate(class_sizes.begin(), class_sizes.end(), std::size_t{0});
    if (total != degree) throw InternalError("partition class sizes do not sum to the degree");
    if (class_sizes.size() != r || b.size() != r || v.size() != r) throw InternalError("partition arity mismatch");
    for (std::size_t i = 0; i < r; ++i) {
      if (b[i].size() != class_sizes[i]) throw InternalError("witness length mismatch");
      for (const auto& x : b[i])
        if (x <= 0) throw InternalError("potency witnesses must be positive");
    }
  }
};

// Integer multiple of a rational polynomial with coprime integer coefficients
// and the same sign of leading coefficient.
inline IntPolynomial primitive_integer_multiple(const RatPolynomial& h) {
  BigInt den = 1;
  for (const auto& c : h.coeffs()) den = lcm_big(den, c.get_den());
  std::vector<BigInt> v;
  for (const auto& c : h.coeffs()) v.push_back(BigInt(c.get_num() * (den / c.get_den())));
  IntPolynomial out(std::move(v));
  BigInt g = content(out);
  if (g > 1) out = detail::divide_exact(out, g);
  return out;
}

// Fibres of h over the r roots of g. Each fibre is the root set of
// H(x) - c*beta_i for the primitive integer multiple H = c*h, so Vieta gives
// |H_s| * sum(alpha) = -sign(H_s) * H_{s-1}.
inline PotentPartitionDescriptor potent_partition_decomposable(const IntPolynomial& f, const RatPolynomial& g,
                                                               const RatPolynomial& h) {
  if (g.degree() < 2 || h.degree() < 2) throw PreconditionError("decomposable partition: deg g, deg h must be >= 2");
  if (g.compose(h) != to_rational(f)) throw PreconditionError("decomposable partition: g(h(x)) != f(x)");
  const IntPolynomial H = primitive_integer_multiple(h);
  const std::size_t s = H.degree(), r = g.degree();
  const BigInt lead = abs(H.leading());
  const BigInt v = (sgn(H.leading()) > 0 ? -1 : 1) * H.coeff(s - 1);
  PotentPartitionDescriptor desc;
  desc.kind = PartitionKind::Decomposable;
  desc.degree = f.degree();
  desc.r = r;
  desc.class_sizes.assign(r, s);
  desc.b.assign(r, std::vector<BigInt>(s, lead));
  desc.v.assign(r, v);
  desc.validate();
  return desc;
}

// All roots as one class: |f_d| * sum(alpha) = -sign(f_d) * f_{d-1}.
inline PotentPartitionDescriptor potent_partition_vieta(const IntPolynomial& f) {
  const std::size_t d = f.degree();
  if (d < 1) throw PreconditionError("vieta partition: f must be nonconstant");
  PotentPartitionDescriptor desc;
  desc.kind = PartitionKind::Trivial;
  desc.degree = d;
  desc.r = 1;
  desc.class_sizes = {d};
  desc.b = {std::vector<BigInt>(d, abs(f.leading()))};
  desc.v = {(sgn(f.leading()) > 0 ? -1 : 1) * f.coeff(d - 1)};
  desc.validate();
  return desc;
}

// Partition of the primitive m-th roots of unity for m = p^k * n, n squarefree
// and coprime to p. Squarefree m gives the single class S with sum mu(m);
// otherwise the classes are {zeta^(a + t*m/p) : 0 <= t < p} with zero sums.
inline PotentPartitionDescriptor potent_partition_cyclotomic(u64 m) {
  if (m < 1) throw PreconditionError("cyclotomic partition: m must be >= 1");
  const u64 d = euler_phi(m);
  if (d < 2) throw PreconditionError("cyclotomic partition: phi(m) must be >= 2");
  std::vector<u64> squared;
  {
    u64 rest = m;
    for (u64 p = 2; p * p <= rest; ++p) {
      if (rest % p) continue;
      unsigned k = 0;
      while (rest % p == 0) {
        rest /= p;
        ++k;
      }
      if (k >= 2) squared.push_back(p);
    }
  }
  if (squared.size() > 1) throw PreconditionError("cyclotomic partition: m must be p^k * n with n squarefree");

  PotentPartitionDescriptor desc;
  desc.degree = d;
  if (squared.empty()) {
    desc.kind = PartitionKind::Trivial;
    desc.r = 1;
    desc.class_sizes = {d};
    std::vector<u64> all;
    for (u64 a = 1; a < m; ++a)
      if (std::gcd(a, m) == 1) all.push_back(a);
    desc.exponent_classes = {all};
    desc.b = {std::vector<BigInt>(d, BigInt(1))};
    desc.v = {BigInt(moebius(m))};
    desc.dim_claim = d;
    desc.validate();
    return desc;
  }
  const u64 p = squared.front();
  const u64 step = m / p;
  desc.kind = PartitionKind::Cyclotomic;
  for (u64 a = 1; a < step; ++a) {
    if (std::gcd(a, step) != 1) continue;
    std::vector<u64> cls;
    for (u64 t = 0; t < p; ++t) cls.push_back(a + t * step);
    desc.exponent_classes.push_back(std::move(cls));
  }
  desc.r = desc.exponent_classes.size();
  desc.class_sizes.assign(desc.r, p);
  desc.b.assign(desc.r, std::vector<BigInt>(p, BigInt(1)));
  desc.v.assign(desc.r, BigInt(0));
  desc.dim_claim = d - desc.r + 1;
  desc.validate();
  return desc;
}

// Returns m when f equals Phi_m exactly.
inline std::optional<u64> detect_cyclotomic(const IntPolynomial& f) {
  const u64 d = f.degree();
  if (d < 1 || f.leading() != 1) return std::nullopt;
  // phi(m) >= sqrt(m/2), so m <= 2 d^2.
  for (u64 m = 1; m <= 2 * d * d + 2; ++m)
    if (euler_phi(m) == d && cyclotomic(m) == f) return m;
  return std::nullopt;
}

namespace detail {

// Good primes (p does not divide f_d * disc f) starting at a seeded offset
// above 10^3, consecutive from there.
inline std::vector<u64> sample_good_primes(const IntPolynomial& f, std::size_t count, u64 seed) {
  const BigInt disc = discriminant(f);
  u64 lo = 1000 + splitmix64(seed) % 1'000'000;
  std::vector<u64> out;
  while (out.size() < count) {
    u64 hi = lo + 65536;
    for (u64 p : primes_in_range(lo, hi)) {
      if (is_bad_prime(f, disc, p)) continue;
      out.push_back(p);
      if (out.size() == count) break;
    }
    lo = hi + 1;
  }
  return out;
}

}  // namespace detail

struct GaloisEstimate {
  std::size_t samples = 0;
  std::size_t full_splits = 0;
  double split_fraction = 0;
  std::optional<double> estimate;  // samples / full_splits
  double ci_low = 0;               // Wilson 95% interval for |G_f|
  std::optional<double> ci_high;   // absent when the fraction interval reaches 0
};

// Wilson score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(std::size_t hits, std::size_t n, double z = 1.959963984540054) {
  const double phat = static_cast<double>(hits) / static_cast<double>(n);
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4.0 * n * n)) / denom;
  const double lo = hits == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = hits == n ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

// Chebotarev sampling: the density of good primes at which f splits
// completely is 1/|G_f|. Statistical; never a certificate.
inline GaloisEstimate galois_order_estimate(const IntPolynomial& f, std::size_t sample_count, u64 seed = kDefaultSeed) {
  if (sample_count < 100) throw PreconditionError("galois_order_estimate: need at least 100 samples");
  if (f.degree() < 1 || discriminant(f) == 0) throw PreconditionError("galois_order_estimate: f must be squarefree");
  GaloisEstimate est;
  est.samples = sample_count;
  for (u64 p : detail::sample_good_primes(f, sample_count, seed))
    if (degree_pattern(f, p).splits_completely()) ++est.full_splits;
  est.split_fraction = static_cast<double>(est.full_splits) / static_cast<double>(sample_count);
  if (est.full_splits > 0) est.estimate = static_cast<double>(sample_count) / static_cast<double>(est.full_splits);
  auto [lo, hi] = wilson_interval(est.full_splits, sample_count);
  est.ci_low = 1.0 / hi;
  if (lo > 0) est.ci_high = 1.0 / lo;
  return est;
}

enum class PrimitivityVerdict { RefutedCertainly, Consistent };

inline const char* to_string(PrimitivityVerdict v) {
  return v == PrimitivityVerdict::RefutedCertainly ? "RefutedCertainly" : "Consistent";
}

struct PrimitiveGaloisCheck {
  PrimitivityVerdict verdict = PrimitivityVerdict::Consistent;
  std::optional<u64> witness_prime;
  std::vector<unsigned> witness_pattern;
  std::size_t samples = 0;
};

// Q(alpha_1) = Q(alpha_1..alpha_d) forces every unramified Frobenius to act
// with equal cycle lengths, so one mixed degree pattern refutes it.
inline PrimitiveGaloisCheck primitive_galois_check(const IntPolynomial& f, std::size_t sample_count,
                                                   u64 seed = kDefaultSeed) {
  if (f.degree() < 1 || discriminant(f) == 0) throw PreconditionError("primitive_galois_check: f must be squarefree");
  PrimitiveGaloisCheck out;
  out.samples = sample_count;
  for (u64 p : detail::sample_good_primes(f, sample_count, seed)) {
    DegreePattern pat = degree_pattern(f, p);
    if (!pat.all_equal()) {
      out.verdict = PrimitivityVerdict::RefutedCertainly;
      out.witness_prime = p;
      out.witness_pattern = pat.degrees;
      break;
    }
  }
  return out;
}

}  // namespace lcmlab
