#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcmlab/accumulate.hpp"
#include "lcmlab/algebra.hpp"
#include "lcmlab/bounds.hpp"
#include "lcmlab/table.hpp"

namespace lcmlab {

// Below this N a violation does not contradict the lemmas, whose N_0(f) is
// never made explicit.
inline constexpr long kHardViolationN = 100;

struct ScheduleViolation {
  BigInt p;
  std::size_t k = 0;
  std::vector<long> ns;
};

struct PrimePowerCount {
  BigInt p;
  std::size_t k = 0;
  std::size_t count = 0;
};

struct LemmaCheckReport {
  std::string lemma;
  std::string f;
  long N = 0;
  BigInt D;
  std::vector<i64> schedule;
  std::string note;
  std::vector<PrimePowerCount> counts;  // nonzero c_{p,k}, sorted by p then k
  std::optional<i64> worst_slack;       // absent when no large prime occurs
  std::vector<ScheduleViolation> violations;
  bool below_threshold_uncertain = false;

  bool passed() const { return violations.empty(); }
  bool hard_failure() const { return !violations.empty() && !below_threshold_uncertain; }
};

inline LemmaCheckReport check_schedule(const MultiplicityTable& table, const DeltaSchedule& schedule) {
  const IntPolynomial& f = table.polynomial();
  LemmaCheckReport rep;
  rep.lemma = schedule.label;
  rep.N = table.max_n();
  rep.D = schedule.D;
  rep.schedule = schedule.delta;
  rep.note = schedule.note;
  if (table.empty()) return rep;
  rep.f = f.to_string();
  if (f.degree() != schedule.degree) throw PreconditionError("check_schedule: schedule and table degree differ");
  if (!table.zero_ns().empty()) throw PreconditionError("check_schedule: f has an integer root in range");
  rep.below_threshold_uncertain = rep.N < kHardViolationN;

  const std::size_t kmax = schedule.delta.size();
  for (const auto& [p, hits] : large_prime_profile(table, Rational(schedule.D))) {
    for (std::size_t k = 1; k <= kmax; ++k) {
      std::vector<long> ns;
      for (const auto& [n, e] : hits)
        if (e >= k) ns.push_back(n);
      if (ns.empty()) break;
      const i64 c = static_cast<i64>(ns.size());
      const i64 slack = schedule.at(k) - c;
      if (!rep.worst_slack || slack < *rep.worst_slack) rep.worst_slack = slack;
      rep.counts.push_back({p, k, ns.size()});
      if (slack < 0) rep.violations.push_back({p, k, std::move(ns)});
    }
  }
  return rep;
}

struct CensusResult {
  unsigned m = 0;
  std::size_t count = 0;
  double fraction = 0;
  std::vector<long> ns;
};

// n <= N with v_p(f(n)) >= m for some prime p > N.
inline CensusResult high_power_census(const MultiplicityTable& table, std::optional<unsigned> m_override = std::nullopt) {
  const long d = static_cast<long>(table.polynomial().degree());
  if (d < 3) throw PreconditionError("high_power_census requires d >= 3");
  CensusResult out;
  out.m = m_override ? *m_override : static_cast<unsigned>(std::min(d - 1, 3 * d / 4 + 1));
  const long N = table.max_n();
  for (const auto& e : table.entries())
    for (const auto& [p, k] : e.factors)
      if (p > N && k >= out.m) {
        out.ns.push_back(e.n);
        break;
      }
  out.count = out.ns.size();
  out.fraction = N > 0 ? static_cast<double>(out.count) / static_cast<double>(N) : 0.0;
  return out;
}

// sum_i f(n_i) / prod_{j != i} (n_i - n_j) over d-k+1 nodes, shifted by a:
// f(x) is replaced by f(x) - a, which the interpolation identity leaves unchanged.
inline BigInt lagrange_A(const IntPolynomial& f, std::size_t k, const BigInt& a, const std::vector<BigInt>& nodes) {
  const std::size_t d = f.degree();
  if (k < 1 || k + 1 > d) throw PreconditionError("lagrange_A: k must satisfy 1 <= k <= d-1");
  if (nodes.size() != d - k + 1) throw PreconditionError("lagrange_A: expected d-k+1 nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i] == nodes[j]) throw PreconditionError("lagrange_A: repeated node");
  Rational A = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    BigInt den = 1;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (j != i) den *= nodes[i] - nodes[j];
    Rational term(f.evaluate(nodes[i]) - a, den);
    term.canonicalize();
    A += term;
  }
  if (A.get_den() != 1) throw InternalError("lagrange_A: non-integral result " + A.get_str());
  return A.get_num();
}

struct LagrangeBound {
  BigInt A;
  BigInt bound;  // (D*N)^k
  bool within = false;
};

inline LagrangeBound lagrange_bound(const IntPolynomial& f, std::size_t k, const std::vector<BigInt>& nodes,
                                    const BigInt& D, long N) {
  LagrangeBound out;
  out.A = lagrange_A(f, k, 0, nodes);
  out.bound = pow_big(D * N, static_cast<unsigned>(k));
  out.within = abs(out.A) <= out.bound;
  return out;
}

inline constexpr std::uint64_t kCombinationBudget = 10'000'000;

// Smallest C with C^t >= t*N.
inline std::uint64_t combination_radius(std::size_t t, long N) {
  BigInt target = BigInt(static_cast<unsigned long>(t)) * N;
  BigInt c = iroot(target, static_cast<unsigned>(t));
  if (pow_big(c, static_cast<unsigned>(t)) < target) c += 1;
  return to_u64(c);
}

// Pigeonhole: among the (C+1)^t values sum b_i n_i with b in {0..C}^t, two
// lie within t*N/C^t <= (tN)^{1/t} of each other; a is their difference.
inline std::vector<long> small_combination(const std::vector<long>& nodes, long N) {
  const std::size_t t = nodes.size();
  if (t < 1) throw PreconditionError("small_combination: need at least one node");
  if (N < 1) throw PreconditionError("small_combination: N must be positive");
  for (long n : nodes)
    if (n < 0 || n > N) throw PreconditionError("small_combination: nodes must lie in [0, N]");
  const std::uint64_t C = combination_radius(t, N);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < t; ++i) {
    if (total > kCombinationBudget / (C + 1)) throw PreconditionError("small_combination: enumeration budget exceeded");
    total *= C + 1;
  }
  std::vector<std::pair<long long, std::uint64_t>> values;
  values.reserve(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    long long psi = 0;
    for (std::size_t i = 0; i < t; ++i) {
      psi += static_cast<long long>(rest % (C + 1)) * nodes[i];
      rest /= C + 1;
    }
    values.emplace_back(psi, code);
  }
  std::sort(values.begin(), values.end());
  std::size_t best = 0;
  long long gap = std::numeric_limits<long long>::max();
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    long long g = values[i + 1].first - values[i].first;
    if (g < gap) {
      gap = g;
      best = i;
    }
  }
  std::uint64_t hi = values[best + 1].second, lo = values[best].second;
  std::vector<long> a(t);
  for (std::size_t i = 0; i < t; ++i) {
    a[i] = static_cast<long>(hi % (C + 1)) - static_cast<long>(lo % (C + 1));
    hi /= C + 1;
    lo /= C + 1;
  }
  return a;
}

struct GrowthRow {
  long N = 0;
  double logL = 0, logl = 0, logQ = 0;
  double ratioL = 0, ratiol = 0, ratioQ = 0;
  double split_small = 0, split_large = 0;
  bool warn_upper = false;  // ratioL > (d-1) * 1.05
};

struct GrowthReport {
  std::string f;
  std::size_t degree = 0;
  Rational D;
  std::vector<GrowthRow> rows;
  BoundSet bounds;
  std::vector<std::string> warnings;
};

inline GrowthRow growth_row(const MultiplicityTable& table, const Rational& D) {
  const LcmAccumulator acc = accumulate(table, D);
  GrowthRow row;
  row.N = table.max_n();
  row.logL = acc.log_L;
  row.logl = acc.log_l;
  row.logQ = acc.log_Q;
  row.split_small = acc.log_Q_small;
  row.split_large = acc.log_Q_large;
  const double nlogn = row.N * std::log(static_cast<double>(std::max(1L, row.N)));
  const double d = static_cast<double>(table.polynomial().degree());
  if (nlogn > 0) {
    row.ratioL = row.logL / nlogn;
    row.ratiol = row.logl / nlogn;
    row.ratioQ = row.logQ / (d * nlogn);
  }
  row.warn_upper = row.ratioL > (d - 1) * 1.05;
  return row;
}

// Table over 1..max(grid) is built once; each row restricts it to 1..N.
inline GrowthReport growth_report(const MultiplicityTable& full, const std::vector<long>& grid, const Rational& D) {
  const IntPolynomial& f = full.polynomial();
  if (f.degree() < 1) throw PreconditionError("growth_report: f must be nonconstant");
  if (!std::is_sorted(grid.begin(), grid.end())) throw PreconditionError("growth_report: grid must be ascending");
  if (!grid.empty() && grid.back() > full.max_n()) throw PreconditionError("growth_report: grid exceeds table");
  if (!full.zero_ns().empty()) throw PreconditionError("growth_report: f has an integer root in range");
  GrowthReport rep;
  rep.f = f.to_string();
  rep.degree = f.degree();
  rep.D = D;
  rep.bounds = known_bounds(std::max<i64>(2, static_cast<i64>(f.degree())));
  for (long N : grid) {
    if (N < 1) throw PreconditionError("growth_report: grid values must be positive");
    std::vector<TableEntry> prefix;
    for (const auto& e : full.entries())
      if (e.n <= N) prefix.push_back(e);
    GrowthRow row = growth_row(MultiplicityTable(f, std::move(prefix)), D);
    if (row.warn_upper)
      rep.warnings.push_back("ratio_L above (d-1)*1.05 at N=" + std::to_string(N));
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace lcmlab
