#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "lcmlab/bigint.hpp"
#include "lcmlab/error.hpp"
#include "lcmlab/polynomial.hpp"
#include "lcmlab/primality.hpp"

namespace lcmlab {

// Irreducible-factor degrees of f mod p, ascending.
struct DegreePattern {
  u64 p = 0;
  std::vector<unsigned> degrees;

  bool all_equal() const {
    return std::adjacent_find(degrees.begin(), degrees.end(), std::not_equal_to<>()) == degrees.end();
  }
  bool splits_completely() const {
    return std::all_of(degrees.begin(), degrees.end(), [](unsigned d) { return d == 1; });
  }
};

inline constexpr u64 kDirectScanCrossover = 512;

namespace detail {

// Dense polynomial over F_p, low degree first, trimmed.
using PolyP = std::vector<u64>;

struct FieldP {
  u64 p;

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const { return mulmod(a, b, p); }
  u64 inv(u64 a) const { return powmod(a, p - 2, p); }
};

inline void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyP reduce(const IntPolynomial& f, u64 p) {
  PolyP out(f.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), f.coeffs()[i].get_mpz_t(), p);
    out[i] = to_u64(r);
  }
  trim(out);
  return out;
}

inline u64 eval(const PolyP& f, u64 x, const FieldP& F) {
  u64 acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
  return acc;
}

inline PolyP mul(const PolyP& a, const PolyP& b, const FieldP& F) {
  if (a.empty() || b.empty()) return {};
  PolyP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  trim(r);
  return r;
}

// a mod m for monic-or-not nonzero m; returns remainder, writes quotient if asked.
inline PolyP divmod(PolyP a, const PolyP& m, const FieldP& F, PolyP* quotient = nullptr) {
  const std::size_t dm = m.size() - 1;
  const u64 inv_lead = F.inv(m.back());
  if (quotient) quotient->assign(a.size() >= m.size() ? a.size() - dm : 0, 0);
  for (std::size_t k = a.size(); k-- > dm;) {
    if (a[k] == 0) continue;
    u64 q = F.mul(a[k], inv_lead);
    if (quotient) (*quotient)[k - dm] = q;
    for (std::size_t j = 0; j <= dm; ++j) a[k - dm + j] = F.sub(a[k - dm + j], F.mul(q, m[j]));
  }
  trim(a);
  if (quotient) trim(*quotient);
  return a;
}

inline PolyP make_monic(PolyP a, const FieldP& F) {
  if (a.empty()) return a;
  u64 inv = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, inv);
  return a;
}

inline PolyP gcd(PolyP a, PolyP b, const FieldP& F) {
  while (!b.empty()) {
    PolyP r = divmod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), F);
}

inline PolyP mulmod_poly(const PolyP& a, const PolyP& b, const PolyP& m, const FieldP& F) {
  return divmod(mul(a, b, F), m, F);
}

// base^e mod m.
inline PolyP powmod_poly(PolyP base, BigInt e, const PolyP& m, const FieldP& F) {
  PolyP result{1};
  result = divmod(result, m, F);
  base = divmod(base, m, F);
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = mulmod_poly(result, base, m, F);
    e >>= 1;
    if (sgn(e) > 0) base = mulmod_poly(base, base, m, F);
  }
  return result;
}

inline PolyP sub(PolyP a, const PolyP& b, const FieldP& F) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  trim(a);
  return a;
}

// Roots of a monic squarefree product of distinct linear factors (odd p).
inline void split_linear(const PolyP& g, const FieldP& F, std::mt19937_64& rng, std::vector<u64>& roots) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    roots.push_back(F.sub(0, g[0]));  // g = x + g0, monic
    return;
  }
  const BigInt half = (from_u64(F.p) - 1) / 2;
  for (;;) {
    u64 a = rng() % F.p;
    PolyP shifted{a, 1};
    PolyP t = powmod_poly(shifted, half, g, F);
    t = sub(t, PolyP{1}, F);
    PolyP d = gcd(g, t, F);
    if (d.size() > 1 && d.size() < g.size()) {
      PolyP q;
      divmod(g, d, F, &q);
      split_linear(d, F, rng, roots);
      split_linear(make_monic(q, F), F, rng, roots);
      return;
    }
  }
}

}  // namespace detail

// Residues r in [0, p) with f(r) = 0 mod p, ascending. Direct scan below the
// crossover, otherwise gcd(x^p - x, f) followed by equal-degree splitting.
inline std::vector<u64> roots_mod_p(const IntPolynomial& f, u64 p, u64 seed = kDefaultSeed,
                                    u64 crossover = kDirectScanCrossover) {
  detail::FieldP F{p};
  detail::PolyP fp = detail::reduce(f, p);
  if (fp.size() != f.coeffs().size()) throw PreconditionError("roots_mod_p: p divides the leading coefficient");
  std::vector<u64> roots;
  if (p < crossover || p == 2) {
    for (u64 r = 0; r < p; ++r)
      if (detail::eval(fp, r, F) == 0) roots.push_back(r);
    return roots;
  }
  fp = detail::make_monic(fp, F);
  detail::PolyP xp = detail::powmod_poly(detail::PolyP{0, 1}, from_u64(p), fp, F);
  detail::PolyP g = detail::gcd(fp, detail::sub(xp, detail::PolyP{0, 1}, F), F);
  std::mt19937_64 rng(seed ^ p);
  detail::split_linear(g, F, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Distinct-degree factorization of f mod a good prime p (p does not divide
// f_d * disc(f)); only the degree multiset is kept.
inline DegreePattern degree_pattern(const IntPolynomial& f, u64 p) {
  detail::FieldP F{p};
  detail::PolyP rest = detail::reduce(f, p);
  if (rest.size() != f.coeffs().size()) throw PreconditionError("degree_pattern: p divides the leading coefficient");
  rest = detail::make_monic(rest, F);
  DegreePattern out{p, {}};
  const detail::PolyP x{0, 1};
  detail::PolyP h = x;
  for (unsigned i = 1; rest.size() > 1; ++i) {
    if (2 * i > rest.size() - 1) {
      out.degrees.push_back(static_cast<unsigned>(rest.size() - 1));
      break;
    }
    h = detail::powmod_poly(h, from_u64(p), rest, F);
    detail::PolyP g = detail::gcd(rest, detail::sub(h, x, F), F);
    if (g.size() > 1) {
      const std::size_t gd = g.size() - 1;
      if (gd % i != 0) throw PreconditionError("degree_pattern: f is not squarefree mod p");
      for (std::size_t k = 0; k < gd / i; ++k) out.degrees.push_back(i);
      detail::PolyP q;
      detail::divmod(rest, g, F, &q);
      rest = detail::make_monic(q, F);
      h = detail::divmod(h, rest, F);
    }
  }
  std::sort(out.degrees.begin(), out.degrees.end());
  return out;
}

// Newton step lifting a simple root r of f mod p^j to the unique root mod
// p^(j+1) congruent to r. Throws if f'(r) = 0 mod p.
inline BigInt hensel_lift(const IntPolynomial& f, const BigInt& p, unsigned j, const BigInt& root) {
  const BigInt pj = pow_big(p, j);
  const BigInt next = pj * p;
  BigInt fr = f.evaluate(root);
  BigInt check;
  mpz_mod(check.get_mpz_t(), fr.get_mpz_t(), pj.get_mpz_t());
  if (check != 0) throw PreconditionError("hensel_lift: r is not a root mod p^j");
  BigInt dfr = f.derivative().evaluate(root);
  BigInt inv;
  if (mpz_invert(inv.get_mpz_t(), dfr.get_mpz_t(), next.get_mpz_t()) == 0)
    throw PreconditionError("hensel_lift: root is not simple mod p");
  BigInt lifted = root - fr * inv;
  mpz_mod(lifted.get_mpz_t(), lifted.get_mpz_t(), next.get_mpz_t());
  return lifted;
}

}  // namespace lcmlab
