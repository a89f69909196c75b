#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lcmlab/bigint.hpp"
#include "lcmlab/polynomial.hpp"

namespace lcmlab {

// f = outer ∘ inner with inner monic, inner(0) = 0, both of degree >= 2.
struct Decomposition {
  RatPolynomial outer;  // g, degree r
  RatPolynomial inner;  // h, degree s
};

namespace detail {

// Tries deg h = s. h's top coefficients are fixed by the x^(d-1)..x^(d-s+1)
// coefficients of f / f_d, which agree with those of h^r.
inline std::optional<Decomposition> decompose_with(const IntPolynomial& f, std::size_t r, std::size_t s) {
  const std::size_t d = f.degree();
  const RatPolynomial monic_f = to_rational(f) * Rational(Rational(1) / Rational(f.leading()));
  std::vector<Rational> h(s + 1, Rational(0));
  h[s] = 1;
  for (std::size_t i = 1; i < s; ++i) {
    // coefficient of x^(d-i) in h^r is r*h[s-i] + (terms in h[s-1..s-i+1])
    RatPolynomial partial(h);
    Rational known = partial.pow(static_cast<unsigned>(r)).coeff(d - i);
    h[s - i] = (monic_f.coeff(d - i) - known) / Rational(static_cast<long>(r));
  }
  RatPolynomial inner(h);

  // Expand f / f_d in powers of h; each digit must be a constant.
  std::vector<Rational> digits;
  RatPolynomial rest = monic_f;
  for (std::size_t k = 0; k <= r; ++k) {
    auto [q, rem] = divmod(rest, inner);
    if (rem.degree() > 0) return std::nullopt;
    digits.push_back(rem.coeff(0));
    rest = std::move(q);
  }
  if (!rest.is_zero()) return std::nullopt;
  RatPolynomial outer = RatPolynomial(std::move(digits)) * Rational(f.leading());
  if (outer.degree() != r) return std::nullopt;
  if (outer.compose(inner) != to_rational(f)) return std::nullopt;
  return Decomposition{std::move(outer), std::move(inner)};
}

}  // namespace detail

// Smallest-r decomposition f = g ∘ h with deg g = r >= 2, deg h = s >= 2.
inline std::optional<Decomposition> decompose(const IntPolynomial& f) {
  const std::size_t d = f.degree();
  if (f.is_zero() || d < 4) return std::nullopt;
  for (std::size_t r = 2; r * 2 <= d; ++r) {
    if (d % r != 0) continue;
    if (auto dec = detail::decompose_with(f, r, d / r)) return dec;
  }
  return std::nullopt;
}

// (g, h) over Z when every coefficient of the decomposition is integral.
inline std::optional<std::pair<IntPolynomial, IntPolynomial>> integer_composition(const Decomposition& dec) {
  auto to_int = [](const RatPolynomial& q) -> std::optional<IntPolynomial> {
    std::vector<BigInt> v;
    for (const auto& c : q.coeffs()) {
      if (c.get_den() != 1) return std::nullopt;
      v.push_back(c.get_num());
    }
    return IntPolynomial(std::move(v));
  };
  auto g = to_int(dec.outer);
  auto h = to_int(dec.inner);
  if (!g || !h) return std::nullopt;
  return std::make_pair(std::move(*g), std::move(*h));
}

}  // namespace lcmlab
