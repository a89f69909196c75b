#pragma once

#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcmlab/algebra.hpp"
#include "lcmlab/polymod.hpp"
#include "lcmlab/primes.hpp"

namespace lcmlab {

enum class Irreducibility { ProvenIrreducible, ProvenReducible, Unknown };

inline const char* to_string(Irreducibility s) {
  switch (s) {
    case Irreducibility::ProvenIrreducible: return "ProvenIrreducible";
    case Irreducibility::ProvenReducible: return "ProvenReducible";
    case Irreducibility::Unknown: return "Unknown";
  }
  return "?";
}

struct IrreducibilityVerdict {
  Irreducibility status = Irreducibility::Unknown;
  std::string witness;
  std::optional<u64> prime;               // witness prime (irreducible reduction or Eisenstein)
  std::optional<Rational> root;           // rational root (reducible)
  std::set<unsigned> degree_set;          // surviving factor-degree subset sums
};

// True when p divides f_d * disc(f).
inline bool is_bad_prime(const IntPolynomial& f, const BigInt& disc, u64 p) {
  return mpz_divisible_ui_p(f.leading().get_mpz_t(), p) || mpz_divisible_ui_p(disc.get_mpz_t(), p);
}

inline std::set<unsigned> subset_sums(const std::vector<unsigned>& degrees) {
  std::set<unsigned> sums{0};
  for (unsigned d : degrees) {
    std::set<unsigned> next = sums;
    for (unsigned s : sums) next.insert(s + d);
    sums = std::move(next);
  }
  return sums;
}

// Prime p for which f(x + a) is Eisenstein, searching small shifts and primes.
inline std::optional<std::pair<long, u64>> eisenstein_shift(const IntPolynomial& f, long max_shift = 4,
                                                            u64 max_prime = 1000) {
  const auto primes = primes_up_to(max_prime).primes;
  for (long a : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L}) {
    if (std::labs(a) > max_shift) continue;
    const IntPolynomial g = f.compose(IntPolynomial({a, 1}));
    const auto& c = g.coeffs();
    if (c.front() == 0) continue;
    BigInt common = 0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) common = gcd_big(common, c[i]);
    if (common == 1) continue;
    for (u64 p : primes) {
      if (!mpz_divisible_ui_p(common.get_mpz_t(), p)) continue;
      if (mpz_divisible_ui_p(c.back().get_mpz_t(), p)) continue;
      if (mpz_divisible_ui_p(c.front().get_mpz_t(), p * p)) continue;
      return std::make_pair(a, p);
    }
  }
  return std::nullopt;
}

// Tri-state certificate from a rational root search, a shifted Eisenstein
// test and degree patterns at the first `prime_budget` good primes.
inline IrreducibilityVerdict irreducibility_certificate(const IntPolynomial& f, unsigned prime_budget = 64) {
  const std::size_t d = f.degree();
  if (f.is_zero() || d < 2) throw PreconditionError("irreducibility_certificate: degree must be >= 2");
  const BigInt disc = discriminant(f);
  if (disc == 0) throw PreconditionError("irreducibility_certificate: f must be squarefree");

  IrreducibilityVerdict verdict;
  if (auto roots = rational_roots(f); !roots.empty()) {
    verdict.status = Irreducibility::ProvenReducible;
    verdict.root = *roots.begin();
    verdict.witness = "rational root " + verdict.root->get_str();
    return verdict;
  }

  if (auto eis = eisenstein_shift(f)) {
    verdict.status = Irreducibility::ProvenIrreducible;
    verdict.prime = eis->second;
    verdict.witness = "f(x + " + std::to_string(eis->first) + ") is Eisenstein at " + std::to_string(eis->second);
    return verdict;
  }

  std::set<unsigned> surviving;
  for (unsigned k = 0; k <= d; ++k) surviving.insert(k);
  unsigned used = 0;
  u64 limit = 1 << 12;
  std::vector<u64> candidates = primes_up_to(limit).primes;
  for (std::size_t i = 0; used < prime_budget; ++i) {
    if (i == candidates.size()) {
      u64 lo = limit + 1;
      limit *= 2;
      candidates = primes_in_range(lo, limit);
      i = 0;
      if (candidates.empty()) continue;
    }
    u64 p = candidates[i];
    if (is_bad_prime(f, disc, p)) continue;
    ++used;
    DegreePattern pat = degree_pattern(f, p);
    if (pat.degrees.size() == 1) {
      verdict.status = Irreducibility::ProvenIrreducible;
      verdict.prime = p;
      verdict.witness = "irreducible mod " + std::to_string(p);
      return verdict;
    }
    std::set<unsigned> sums = subset_sums(pat.degrees);
    std::set<unsigned> keep;
    for (unsigned s : surviving)
      if (sums.count(s)) keep.insert(s);
    surviving = std::move(keep);
    if (surviving.size() == 2) {
      verdict.status = Irreducibility::ProvenIrreducible;
      verdict.degree_set = surviving;
      verdict.witness = "factor-degree subset sums intersect to {0," + std::to_string(d) + "} after " +
                        std::to_string(used) + " primes";
      return verdict;
    }
  }
  verdict.degree_set = surviving;
  std::string set_text;
  for (unsigned s : surviving) set_text += (set_text.empty() ? "" : ",") + std::to_string(s);
  verdict.witness = "degree-set intersection {" + set_text + "}";
  return verdict;
}

}  // namespace lcmlab
