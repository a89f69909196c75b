#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lcmlab/bigint.hpp"
#include "lcmlab/error.hpp"
#include "lcmlab/polynomial.hpp"

namespace lcmlab {

using Exponent = std::uint8_t;

// Factorization of |f(n)| for one n. sign is -1, 0 or +1; sign 0 flags a root
// of f, whose entry carries no factors.
struct TableEntry {
  long n = 0;
  int sign = 0;
  std::vector<std::pair<BigInt, Exponent>> factors;  // ascending primes

  bool is_zero() const { return sign == 0; }

  BigInt abs_value() const {
    BigInt v = 1;
    for (const auto& [p, e] : factors) v *= pow_big(p, e);
    return v;
  }

  friend bool operator==(const TableEntry&, const TableEntry&) = default;
};

inline Exponent checked_exponent(unsigned e) {
  if (e > 255) throw Error("exponent exceeds the 8-bit table cap");
  return static_cast<Exponent>(e);
}

// Prime-power multiplicities of f(n) over a set of n, sorted by n.
class MultiplicityTable {
 public:
  MultiplicityTable() = default;
  MultiplicityTable(IntPolynomial f, std::vector<TableEntry> entries) : f_(std::move(f)), entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    for (std::size_t i = 1; i < entries_.size(); ++i)
      if (entries_[i].n == entries_[i - 1].n) throw PreconditionError("duplicate n in multiplicity table");
  }

  const IntPolynomial& polynomial() const { return f_; }
  const std::vector<TableEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Largest n covered (0 for an empty table).
  long max_n() const { return entries_.empty() ? 0 : entries_.back().n; }

  const TableEntry* find(long n) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), n, [](const auto& e, long v) { return e.n < v; });
    return (it != entries_.end() && it->n == n) ? &*it : nullptr;
  }

  std::vector<long> zero_ns() const {
    std::vector<long> out;
    for (const auto& e : entries_)
      if (e.is_zero()) out.push_back(e.n);
    return out;
  }

  // Union over disjoint n-sets.
  friend MultiplicityTable merge(const MultiplicityTable& a, const MultiplicityTable& b) {
    if (!a.empty() && !b.empty() && a.f_ != b.f_) throw PreconditionError("merge: tables for different polynomials");
    std::vector<TableEntry> all;
    all.reserve(a.entries_.size() + b.entries_.size());
    std::merge(a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(), std::back_inserter(all),
               [](const auto& x, const auto& y) { return x.n < y.n; });
    return MultiplicityTable(a.empty() ? b.f_ : a.f_, std::move(all));
  }

  friend bool operator==(const MultiplicityTable& a, const MultiplicityTable& b) {
    return a.f_ == b.f_ && a.entries_ == b.entries_;
  }

 private:
  IntPolynomial f_;
  std::vector<TableEntry> entries_;
};

// CSV dump: n,f_of_n_sign,prime,exponent; one row per prime, ascending n then
// prime. Entries without prime factors (|f(n)| <= 1) get a row with empty
// prime and exponent so that the sign survives a round trip.
inline void write_table_csv(std::ostream& os, const MultiplicityTable& table) {
  os << "n,f_of_n_sign,prime,exponent\n";
  for (const auto& e : table.entries()) {
    if (e.factors.empty()) {
      os << e.n << ',' << e.sign << ",,\n";
      continue;
    }
    for (const auto& [p, k] : e.factors) os << e.n << ',' << e.sign << ',' << p.get_str() << ',' << unsigned(k) << '\n';
  }
}

inline MultiplicityTable read_table_csv(std::istream& is, const IntPolynomial& f) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("n,f_of_n_sign", 0) != 0) throw Error("table csv: missing header");
  std::vector<TableEntry> entries;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string n_s, sign_s, p_s, e_s;
    std::getline(ss, n_s, ',');
    std::getline(ss, sign_s, ',');
    std::getline(ss, p_s, ',');
    std::getline(ss, e_s, ',');
    long n = std::stol(n_s);
    if (entries.empty() || entries.back().n != n) entries.push_back(TableEntry{n, std::stoi(sign_s), {}});
    if (!p_s.empty()) entries.back().factors.emplace_back(BigInt(p_s), checked_exponent(std::stoul(e_s)));
  }
  return MultiplicityTable(f, std::move(entries));
}

}  // namespace lcmlab
