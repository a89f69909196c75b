#pragma once

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "lcmlab/bounds.hpp"
#include "lcmlab/irreducibility.hpp"
#include "lcmlab/structure.hpp"
#include "lcmlab/verify.hpp"

namespace lcmlab {

using Json = nlohmann::ordered_json;

inline Json rational_json(const Rational& q) {
  return Json{{"exact", q.get_str()}, {"value", q.get_d()}};
}

// Integers that fit in 64 bits stay numbers; larger ones become strings.
inline Json big_json(const BigInt& n) {
  if (n.fits_slong_p()) return Json(n.get_si());
  return Json(n.get_str());
}

inline Json to_json(const BoundSet& b) {
  Json out;
  out["d"] = b.d;
  out["r"] = b.r ? Json(*b.r) : Json(nullptr);
  out["e"] = b.e ? Json(*b.e) : Json(nullptr);
  out["V_d"] = b.d >= 3 ? Json(v_d(b.d)) : Json(nullptr);
  out["V_dr"] = (b.d >= 3 && b.r && *b.r >= 1 && *b.r <= b.d) ? Json(v_dr(b.d, *b.r)) : Json(nullptr);
  out["W_dr"] = (b.r && *b.r >= 2 && b.d % *b.r == 0 && b.d / *b.r >= 2) ? Json(w_dr(b.d, *b.r)) : Json(nullptr);
  out["U_de"] = (b.d >= 3 && b.e && *b.e >= b.d) ? Json(u_de(b.d, *b.e)) : Json(nullptr);
  Json c = Json::object();
  for (const auto& [name, q] : b.values) c[name] = rational_json(q);
  out["constants"] = c;
  return out;
}

inline Json to_json(const DeltaSchedule& s) {
  return Json{{"label", s.label}, {"D", big_json(s.D)}, {"delta", s.delta}, {"note", s.note}};
}

inline Json to_json(const LemmaCheckReport& r) {
  Json out;
  out["lemma"] = r.lemma;
  out["f"] = r.f;
  out["N"] = r.N;
  out["D"] = big_json(r.D);
  out["schedule"] = r.schedule;
  out["worst_slack"] = r.worst_slack ? Json(*r.worst_slack) : Json(nullptr);
  std::size_t max_count = 0;
  for (const auto& c : r.counts)
    if (c.k == 1 && c.count > max_count) max_count = c.count;
  out["max_count_k1"] = max_count;
  out["large_primes_seen"] = std::count_if(r.counts.begin(), r.counts.end(), [](const auto& c) { return c.k == 1; });
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back(Json{{"p", big_json(x.p)}, {"k", x.k}, {"ns", x.ns}});
  out["violations"] = v;
  out["status"] = r.passed() ? "pass" : (r.below_threshold_uncertain ? "below-threshold-uncertain" : "violation");
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

inline Json to_json(const CensusResult& c, long N) {
  return Json{{"N", N}, {"m", c.m}, {"count", c.count}, {"fraction", c.fraction}, {"ns", c.ns}};
}

inline Json to_json(const GrowthReport& g) {
  Json out;
  out["f"] = g.f;
  out["d"] = g.degree;
  out["D"] = rational_json(g.D);
  Json rows = Json::array();
  for (const auto& r : g.rows) {
    rows.push_back(Json{{"N", r.N},
                        {"logL", r.logL},
                        {"logl", r.logl},
                        {"logQ", r.logQ},
                        {"ratioL", r.ratioL},
                        {"ratiol", r.ratiol},
                        {"ratioQ", r.ratioQ},
                        {"split", Json{{"small", r.split_small}, {"large", r.split_large}}}});
  }
  out["rows"] = rows;
  out["bounds"] = to_json(g.bounds);
  out["warnings"] = g.warnings;
  return out;
}

inline void write_growth_csv(std::ostream& os, const GrowthReport& g) {
  os << "N,logL,logl,logQ,ratioL,ratiol,ratioQ,split_small,split_large\n";
  os << std::setprecision(17);
  for (const auto& r : g.rows)
    os << r.N << ',' << r.logL << ',' << r.logl << ',' << r.logQ << ',' << r.ratioL << ',' << r.ratiol << ','
       << r.ratioQ << ',' << r.split_small << ',' << r.split_large << '\n';
}

inline void write_growth_pretty(std::ostream& os, const GrowthReport& g) {
  os << "f = " << g.f << "  (d = " << g.degree << ", D = " << g.D.get_str() << ")\n";
  os << std::setw(10) << "N" << std::setw(16) << "log L" << std::setw(16) << "log l" << std::setw(16) << "log Q"
     << std::setw(10) << "ratioL" << std::setw(10) << "ratiol" << std::setw(10) << "ratioQ" << '\n';
  os << std::fixed;
  for (const auto& r : g.rows)
    os << std::setw(10) << r.N << std::setprecision(3) << std::setw(16) << r.logL << std::setw(16) << r.logl
       << std::setw(16) << r.logQ << std::setprecision(4) << std::setw(10) << r.ratioL << std::setw(10) << r.ratiol
       << std::setw(10) << r.ratioQ << '\n';
  os.unsetf(std::ios::fixed);
  for (const auto& w : g.warnings) os << "warning: " << w << '\n';
}

inline Json to_json(const PotentPartitionDescriptor& p) {
  Json out;
  out["kind"] = to_string(p.kind);
  out["r"] = p.r;
  out["class_sizes"] = p.class_sizes;
  out["classes"] = p.exponent_classes.empty() ? Json(nullptr) : Json(p.exponent_classes);
  Json w = Json::array();
  for (std::size_t i = 0; i < p.r; ++i) {
    Json b = Json::array();
    for (const auto& x : p.b[i]) b.push_back(big_json(x));
    w.push_back(Json{{"b", b}, {"v", big_json(p.v[i])}});
  }
  out["witnesses"] = w;
  out["D_potent"] = big_json(p.d_potent());
  out["dim_claim"] = p.dim_claim ? Json(*p.dim_claim) : Json(nullptr);
  out["rank_assumed"] = p.rank_assumed;
  return out;
}

inline Json to_json(const GaloisEstimate& g) {
  Json out;
  out["samples"] = g.samples;
  out["full_splits"] = g.full_splits;
  out["split_fraction"] = g.split_fraction;
  out["estimate"] = g.estimate ? Json(*g.estimate) : Json(nullptr);
  out["ci"] = Json::array({g.ci_low, g.ci_high ? Json(*g.ci_high) : Json(nullptr)});
  return out;
}

inline Json to_json(const PrimitiveGaloisCheck& c) {
  Json out;
  out["verdict"] = to_string(c.verdict);
  out["samples"] = c.samples;
  out["witness_prime"] = c.witness_prime ? Json(*c.witness_prime) : Json(nullptr);
  out["witness_pattern"] = c.witness_pattern;
  return out;
}

inline Json to_json(const IrreducibilityVerdict& v) {
  Json out;
  out["status"] = to_string(v.status);
  out["witness"] = v.witness;
  if (v.prime) out["prime"] = *v.prime;
  if (v.root) out["root"] = v.root->get_str();
  return out;
}

}  // namespace lcmlab
