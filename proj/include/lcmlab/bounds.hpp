#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcmlab/bigint.hpp"
#include "lcmlab/error.hpp"
#include "lcmlab/polynomial.hpp"
#include "lcmlab/structure.hpp"

namespace lcmlab {

using i64 = std::int64_t;

// Upper end of every k-sum: min(floor(3d/4), d-2).
inline i64 k_limit(i64 d) { return std::min(3 * d / 4, d - 2); }

inline i64 ceil_div(i64 a, i64 b) { return (a + b - 1) / b; }

inline i64 v_d(i64 d) {
  if (d < 3) throw PreconditionError("V_d requires d >= 3");
  i64 sum = 0;
  for (i64 k = 1; k <= k_limit(d); ++k) sum += d - k;
  return sum;
}

inline i64 v_dr(i64 d, i64 r) {
  if (d < 3 || r < 1 || r > d) throw PreconditionError("V_{d,r} requires d >= 3 and 1 <= r <= d");
  i64 sum = 0;
  for (i64 k = 1; k <= k_limit(d); ++k) sum += d - std::max(k, r);
  return sum;
}

inline i64 w_dr(i64 d, i64 r) {
  if (r < 2 || d % r != 0 || d / r < 2) throw PreconditionError("W_{d,r} requires d = r*s with r, s >= 2");
  i64 sum = 0;
  for (i64 k = 1; k <= k_limit(d); ++k) sum += std::max(d - k * r, r - (k * r) / d);
  return sum;
}

inline i64 u_de(i64 d, i64 e) {
  if (d < 3 || e < d) throw PreconditionError("U_{d,e} requires d >= 3 and e >= d");
  i64 sum = 0;
  for (i64 k = 1; k <= k_limit(d); ++k) sum += std::min(d - k, ceil_div(e, k) - 1);
  return sum;
}

inline i64 u_d(i64 d) { return u_de(d, d); }

// Combined potent + Galois constant for a partition into u potent classes.
inline i64 u_deu(i64 d, i64 e, i64 u) {
  if (d < 3 || e < d || u < 1 || u > d) throw PreconditionError("U_{d,e,u} requires d >= 3, e >= d, 1 <= u <= d");
  i64 sum = 0;
  for (i64 k = 1; k <= k_limit(d); ++k) sum += std::min(d - std::max(k, u), ceil_div(e, k) - 1);
  return sum;
}

struct BoundSet {
  i64 d = 0;
  std::optional<i64> r;
  std::optional<i64> e;
  std::map<std::string, Rational> values;
};

// Growth constants c in log L_f(N) or log l_f(N) >~ c N log N, exact.
inline BoundSet known_bounds(i64 d, std::optional<i64> r = std::nullopt, std::optional<i64> e = std::nullopt) {
  if (d < 2) throw PreconditionError("known_bounds requires d >= 2");
  BoundSet out;
  out.d = d;
  out.r = r;
  out.e = e;
  const Rational dm1(d - 1);
  auto& v = out.values;
  v["conjecture"] = dm1;
  v["cilleruelo_upper"] = dm1;
  v["maynard_rudnick"] = Rational(1, d);
  v["sah_L"] = Rational(1);
  v["sah_radical"] = Rational(2, d);
  v["sah_radical"].canonicalize();
  if (d >= 3) v["thm1"] = dm1 / Rational(v_d(d));
  if (r) {
    if (*r < 1 || *r > d) throw PreconditionError("known_bounds: r out of range");
    if (*r < d) v["thm2_L"] = dm1 / Rational(d - *r);
    if (d >= 3 && v_dr(d, *r) > 0) v["thm2_radical"] = dm1 / Rational(v_dr(d, *r));
    if (*r >= 2 && d % *r == 0 && d / *r >= 2) v["thm3"] = dm1 / Rational(w_dr(d, *r));
  }
  if (e && d >= 3) {
    if (*e < d) throw PreconditionError("known_bounds: e must be >= d");
    v["thm4"] = dm1 / Rational(u_de(d, *e));
  }
  return out;
}

enum class ScheduleVariant { Sah, Potent, Decomposable, Galois, GaloisPotent };

inline const char* to_string(ScheduleVariant v) {
  switch (v) {
    case ScheduleVariant::Sah: return "sah";
    case ScheduleVariant::Potent: return "potent";
    case ScheduleVariant::Decomposable: return "decomposable";
    case ScheduleVariant::Galois: return "galois";
    case ScheduleVariant::GaloisPotent: return "galois_potent";
  }
  return "?";
}

inline ScheduleVariant parse_schedule_variant(const std::string& s) {
  if (s == "sah") return ScheduleVariant::Sah;
  if (s == "potent") return ScheduleVariant::Potent;
  if (s == "decomposable") return ScheduleVariant::Decomposable;
  if (s == "galois") return ScheduleVariant::Galois;
  if (s == "galois_potent") return ScheduleVariant::GaloisPotent;
  throw PreconditionError("unknown schedule variant '" + s + "'");
}

// delta[k-1] caps how many n <= N can have p^k | f(n) for a prime p > D*N.
struct DeltaSchedule {
  ScheduleVariant variant = ScheduleVariant::Sah;
  std::string label;
  std::size_t degree = 0;
  std::vector<i64> delta;  // k = 1..d-1
  BigInt D;
  std::string note;

  i64 at(std::size_t k) const { return delta.at(k - 1); }
};

// Inputs a schedule may need beyond f itself.
struct ScheduleData {
  std::optional<PotentPartitionDescriptor> partition;
  std::optional<std::pair<IntPolynomial, IntPolynomial>> composition;  // (g, h) over Z
  std::optional<i64> galois_order;
  std::optional<i64> u;  // class count for galois_potent; defaults to partition r
};

// Cauchy bound 1 + max_i |f_i / f_d| on the absolute value of every root.
inline Rational cauchy_root_bound(const IntPolynomial& f) {
  Rational best = 0;
  const Rational lead = Rational(abs(f.leading()));
  for (std::size_t i = 0; i + 1 < f.coeffs().size(); ++i) {
    Rational q = Rational(abs(f.coeffs()[i])) / lead;
    if (q > best) best = q;
  }
  return best + 1;
}

namespace detail {

inline BigInt sah_threshold(const IntPolynomial& f) {
  return BigInt(static_cast<unsigned long>(f.degree())) * abs(f.leading()) + 1;
}

// max(|f_d|^t (2C+1)^t t, max_i sum_l b_il + 1) with t = d and C the Cauchy bound.
inline BigInt galois_threshold(const IntPolynomial& f, const PotentPartitionDescriptor& part) {
  const unsigned long t = f.degree();
  const Rational C = cauchy_root_bound(f);
  Rational base = Rational(abs(f.leading())) * (2 * C + 1);
  Rational value = 1;
  for (unsigned long i = 0; i < t; ++i) value *= base;
  value *= Rational(static_cast<long>(t));
  BigInt first = ceil_big(value);
  BigInt second = part.max_class_weight() + 1;
  return first > second ? first : second;
}

}  // namespace detail

inline DeltaSchedule delta_schedule(ScheduleVariant variant, const IntPolynomial& f, const ScheduleData& data = {}) {
  const i64 d = static_cast<i64>(f.degree());
  if (d < 2) throw PreconditionError("delta_schedule requires deg f >= 2");
  DeltaSchedule s;
  s.variant = variant;
  s.label = to_string(variant);
  s.degree = static_cast<std::size_t>(d);
  switch (variant) {
    case ScheduleVariant::Sah: {
      s.D = detail::sah_threshold(f);
      for (i64 k = 1; k < d; ++k) s.delta.push_back(d - k);
      break;
    }
    case ScheduleVariant::Potent: {
      if (!data.partition) throw PreconditionError("potent schedule needs a potent partition");
      const i64 r = static_cast<i64>(data.partition->r);
      s.D = data.partition->d_potent();
      for (i64 k = 1; k < d; ++k) s.delta.push_back(d - std::max(k, r));
      if (data.partition->rank_assumed) s.note = "partition supplied by user";
      break;
    }
    case ScheduleVariant::Decomposable: {
      if (!data.composition) throw PreconditionError("decomposable schedule needs integer g, h with f = g(h)");
      const auto& [g, h] = *data.composition;
      if (g.compose(h) != f) throw PreconditionError("decomposable schedule: g(h(x)) != f(x)");
      const i64 r = static_cast<i64>(g.degree());
      const unsigned long sdeg = h.degree();
      if (r < 2 || sdeg < 2) throw PreconditionError("decomposable schedule: deg g, deg h must be >= 2");
      BigInt a = (BigInt(static_cast<unsigned long>(r)) * abs(g.leading()) + 1) * (abs(h.leading()) + 1);
      BigInt b = BigInt(sdeg) * abs(h.leading()) + 1;
      s.D = a > b ? a : b;
      for (i64 k = 1; k < d; ++k) s.delta.push_back(std::max(d - k * r, r - (k * r) / d));
      break;
    }
    case ScheduleVariant::Galois:
    case ScheduleVariant::GaloisPotent: {
      if (!data.galois_order) throw PreconditionError("galois schedule needs the Galois order e");
      const i64 e = *data.galois_order;
      if (e < d) throw PreconditionError("galois schedule: e must be >= d");
      const PotentPartitionDescriptor part = data.partition ? *data.partition : potent_partition_vieta(f);
      s.D = detail::galois_threshold(f, part);
      s.note = "D uses t = d and the Cauchy root bound in place of max|alpha|; both only enlarge D";
      if (variant == ScheduleVariant::Galois) {
        for (i64 k = 1; k < d; ++k) s.delta.push_back(std::min(d - k, ceil_div(e, k) - 1));
      } else {
        const i64 u = data.u ? *data.u : static_cast<i64>(part.r);
        BigInt dp = part.d_potent();
        if (dp > s.D) s.D = dp;
        for (i64 k = 1; k < d; ++k) s.delta.push_back(std::min(d - std::max(k, u), ceil_div(e, k) - 1));
      }
      break;
    }
  }
  return s;
}

}  // namespace lcmlab
