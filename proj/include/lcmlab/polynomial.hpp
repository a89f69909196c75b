#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lcmlab/bigint.hpp"
#include "lcmlab/error.hpp"

namespace lcmlab {

// Dense univariate polynomial, coefficient i multiplies x^i. The coefficient
// vector is kept trimmed so the last entry is nonzero; the zero polynomial has
// an empty vector and reports degree 0.
template <typename Coeff>
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  Polynomial(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static Polynomial constant(Coeff c) { return Polynomial(std::vector<Coeff>{std::move(c)}); }

  static Polynomial monomial(Coeff c, std::size_t power) {
    std::vector<Coeff> v(power + 1, Coeff(0));
    v[power] = std::move(c);
    return Polynomial(std::move(v));
  }

  static Polynomial x() { return monomial(Coeff(1), 1); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const std::vector<Coeff>& coeffs() const noexcept { return coeffs_; }

  Coeff coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Coeff(0); }
  Coeff leading() const { return coeffs_.empty() ? Coeff(0) : coeffs_.back(); }

  template <typename T>
  T evaluate(const T& at) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + T(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Coeff> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return Polynomial(std::move(d));
  }

  // g ∘ h, i.e. this polynomial evaluated at h.
  Polynomial compose(const Polynomial& h) const {
    Polynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * h + constant(*it);
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> r(a.coeffs_.size() + b.coeffs_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(r));
  }

  friend Polynomial operator*(Polynomial a, const Coeff& c) {
    for (auto& x : a.coeffs_) x *= c;
    a.trim();
    return a;
  }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(Coeff(1));
    Polynomial base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  // Descending powers, e.g. "2*x^3 - x + 5". Integer output parses back to the
  // same coefficients.
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const Coeff& c = coeffs_[k];
      if (c == 0) continue;
      bool negative = c < 0;
      Coeff mag = negative ? Coeff(-c) : c;
      if (first) {
        if (negative) os << '-';
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      bool unit = (mag == 1);
      if (k == 0) {
        write_coeff(os, mag);
      } else {
        if (!unit) {
          write_coeff(os, mag);
          os << '*';
        }
        os << 'x';
        if (k > 1) os << '^' << k;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

 private:
  static void write_coeff(std::ostream& os, const Coeff& c) {
    if constexpr (std::is_same_v<Coeff, Rational>) {
      if (c.get_den() != 1) {
        os << '(' << c.get_str() << ')';
        return;
      }
    }
    os << c.get_str();
  }

  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

using IntPolynomial = Polynomial<BigInt>;
using RatPolynomial = Polynomial<Rational>;

inline BigInt evaluate(const IntPolynomial& f, const BigInt& n) { return f.evaluate(n); }

inline BigInt evaluate(const IntPolynomial& f, long n) { return f.evaluate(BigInt(n)); }

inline IntPolynomial derivative(const IntPolynomial& f) { return f.derivative(); }

inline RatPolynomial to_rational(const IntPolynomial& f) {
  std::vector<Rational> v;
  v.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) v.emplace_back(c);
  return RatPolynomial(std::move(v));
}

// Quotient and remainder over Q. Throws on a zero divisor.
inline std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const std::size_t db = b.degree();
  const Rational lead = b.leading();
  if (rem.size() < b.coeffs().size()) return {RatPolynomial{}, a};
  std::vector<Rational> quot(rem.size() - db, Rational(0));
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k] == 0) continue;
    Rational q = rem[k] / lead;
    quot[k - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= q * b.coeffs()[j];
  }
  return {RatPolynomial(std::move(quot)), RatPolynomial(std::move(rem))};
}

// Monic gcd over Q.
inline RatPolynomial gcd(RatPolynomial a, RatPolynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * Rational(Rational(1) / a.leading());
}

// Content: gcd of the coefficients, nonnegative.
inline BigInt content(const IntPolynomial& f) {
  BigInt g = 0;
  for (const auto& c : f.coeffs()) g = gcd_big(g, c);
  return g;
}

}  // namespace lcmlab
