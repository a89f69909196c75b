#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "lcmlab/bigint.hpp"
#include "lcmlab/error.hpp"
#include "lcmlab/factor.hpp"
#include "lcmlab/polynomial.hpp"

namespace lcmlab {

namespace detail {

// lc(b)^(deg a - deg b + 1) * a mod b, exact over Z.
inline IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> r = a.coeffs();
  const std::size_t db = b.degree();
  const BigInt& lb = b.leading();
  long steps = static_cast<long>(a.degree()) - static_cast<long>(db) + 1;
  while (r.size() > db && !r.empty()) {
    const BigInt top = r.back();
    const std::size_t shift = r.size() - 1 - db;
    for (auto& c : r) c *= lb;
    for (std::size_t j = 0; j <= db; ++j) r[shift + j] -= top * b.coeffs()[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
    --steps;
  }
  if (steps > 0) {
    BigInt scale = pow_big(lb, static_cast<unsigned long>(steps));
    for (auto& c : r) c *= scale;
  }
  return IntPolynomial(std::move(r));
}

inline IntPolynomial divide_exact(const IntPolynomial& a, const BigInt& c) {
  std::vector<BigInt> v = a.coeffs();
  for (auto& x : v) {
    if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t())) throw InternalError("inexact coefficient division");
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  }
  return IntPolynomial(std::move(v));
}

inline BigInt divexact(const BigInt& a, const BigInt& b) {
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) throw InternalError("inexact division");
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

// Res(a, b) by the subresultant pseudo-remainder sequence; every intermediate
// stays in Z.
inline BigInt resultant(IntPolynomial a, IntPolynomial b) {
  if (a.is_zero() || b.is_zero()) return 0;
  if (b.degree() == 0) return pow_big(b.leading(), a.degree());
  if (a.degree() == 0) return pow_big(a.leading(), b.degree());
  int sign = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) sign = -sign;
  }
  const BigInt ca = content(a), cb = content(b);
  a = detail::divide_exact(a, ca);
  b = detail::divide_exact(b, cb);
  BigInt t = pow_big(ca, b.degree()) * pow_big(cb, a.degree());
  BigInt g = 1, h = 1;
  for (;;) {
    const std::size_t delta = a.degree() - b.degree();
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) sign = -sign;
    IntPolynomial r = detail::pseudo_remainder(a, b);
    if (r.is_zero()) return 0;
    a = std::move(b);
    b = detail::divide_exact(r, g * pow_big(h, delta));
    g = a.leading();
    if (delta == 0) {
      // h unchanged
    } else {
      h = detail::divexact(pow_big(g, delta), pow_big(h, delta - 1));
    }
    if (b.degree() == 0) break;
  }
  const std::size_t da = a.degree();
  BigInt last = detail::divexact(pow_big(b.leading(), da), pow_big(h, da - 1));
  return sign * t * last;
}

// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / f_d.
inline BigInt discriminant(const IntPolynomial& f) {
  const std::size_t d = f.degree();
  if (f.is_zero() || d == 0) throw PreconditionError("discriminant: degree must be >= 1");
  if (d == 1) return 1;
  BigInt res = resultant(f, f.derivative());
  BigInt disc = detail::divexact(res, f.leading());
  if ((d * (d - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

inline bool is_squarefree(const IntPolynomial& f) {
  if (f.is_zero()) throw PreconditionError("is_squarefree: zero polynomial");
  if (f.degree() == 0) return true;
  return discriminant(f) != 0;
}

// All positive divisors of |n| (n != 0), ascending.
inline std::vector<BigInt> divisors(const BigInt& n) {
  BigInt m = abs(n);
  if (m == 0) throw PreconditionError("divisors: zero");
  std::vector<BigInt> out{1};
  for (const auto& [p, e] : factor(m)) {
    const std::size_t base = out.size();
    BigInt pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Strips factors of x: returns (f / x^k, k).
inline std::pair<IntPolynomial, std::size_t> strip_x(const IntPolynomial& f) {
  std::size_t k = 0;
  while (k < f.coeffs().size() && f.coeffs()[k] == 0) ++k;
  std::vector<BigInt> v(f.coeffs().begin() + static_cast<long>(k), f.coeffs().end());
  return {IntPolynomial(std::move(v)), k};
}

inline std::set<BigInt> integer_roots(const IntPolynomial& f) {
  if (f.is_zero()) throw PreconditionError("integer_roots: zero polynomial");
  std::set<BigInt> roots;
  auto [g, k] = strip_x(f);
  if (k > 0) roots.insert(BigInt(0));
  if (g.degree() == 0) return roots;
  for (const BigInt& q : divisors(g.coeffs()[0])) {
    if (g.evaluate(q) == 0) roots.insert(q);
    BigInt neg = -q;
    if (g.evaluate(neg) == 0) roots.insert(neg);
  }
  return roots;
}

// Rational roots p/q with p | f_0 and q | f_d (after stripping x).
inline std::set<Rational> rational_roots(const IntPolynomial& f) {
  if (f.is_zero()) throw PreconditionError("rational_roots: zero polynomial");
  std::set<Rational> roots;
  auto [g, k] = strip_x(f);
  if (k > 0) roots.insert(Rational(0));
  if (g.degree() == 0) return roots;
  const auto nums = divisors(g.coeffs()[0]);
  const auto dens = divisors(g.leading());
  for (const auto& q : dens) {
    for (const auto& p : nums) {
      for (int s : {1, -1}) {
        Rational r(BigInt(s * p), q);
        r.canonicalize();
        if (g.evaluate(r) == 0) roots.insert(r);
      }
    }
  }
  return roots;
}

inline u64 euler_phi(u64 m) {
  u64 result = m;
  for (u64 p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

inline int moebius(u64 m) {
  int mu = 1;
  for (u64 p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    m /= p;
    if (m % p == 0) return 0;
    mu = -mu;
  }
  if (m > 1) mu = -mu;
  return mu;
}

namespace detail {

// a / b for monic b, exact over Z.
inline IntPolynomial divide_monic(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> r = a.coeffs();
  const std::size_t db = b.degree();
  std::vector<BigInt> q(r.size() - db, BigInt(0));
  for (std::size_t k = r.size(); k-- > db;) {
    const BigInt c = r[k];
    if (c == 0) continue;
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= c * b.coeffs()[j];
  }
  for (const auto& c : r)
    if (c != 0) throw InternalError("divide_monic: nonzero remainder");
  return IntPolynomial(std::move(q));
}

inline IntPolynomial cyclotomic_memo(u64 m, std::map<u64, IntPolynomial>& memo) {
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  IntPolynomial p = IntPolynomial::monomial(BigInt(1), m) - IntPolynomial::constant(BigInt(1));
  for (u64 e = 1; e < m; ++e)
    if (m % e == 0) p = divide_monic(p, cyclotomic_memo(e, memo));
  memo.emplace(m, p);
  return p;
}

}  // namespace detail

// Phi_m by exact division of x^m - 1 by Phi_e over the proper divisors e | m.
inline IntPolynomial cyclotomic(u64 m) {
  if (m == 0) throw PreconditionError("cyclotomic: m must be >= 1");
  std::map<u64, IntPolynomial> memo;
  return detail::cyclotomic_memo(m, memo);
}

}  // namespace lcmlab
