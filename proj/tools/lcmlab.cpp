// lcmlab: lcm of polynomial values, bound constants and lemma checks.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcmlab/bounds.hpp"
#include "lcmlab/decompose.hpp"
#include "lcmlab/irreducibility.hpp"
#include "lcmlab/parser.hpp"
#include "lcmlab/properties.hpp"
#include "lcmlab/report.hpp"
#include "lcmlab/sieve.hpp"
#include "lcmlab/structure.hpp"
#include "lcmlab/verify.hpp"

namespace fs = std::filesystem;
using namespace lcmlab;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kUsage = 1, kViolation = 2, kPrecondition = 3 };

struct RunConfig {
  std::string polynomial;
  long N = 0;
  std::vector<long> grid;
  u64 seed = kDefaultSeed;
  u64 small_bound = 0;
  unsigned threads = 0;
  std::string schedules = "auto";
  std::optional<long> r, e, u, d;
  std::string partition;
  bool assume_rank = false;
  std::string D;
  std::string emit = "json";
  std::string output;
  std::string checkpoint;
  long chunk = 10000;
  std::string dump_table;
  std::size_t samples = 1000;
  std::size_t property_trials = 100;
  std::string value_bound = "1000000000000";
  bool deterministic = false;
  bool json_errors = false;
  std::string config;
};

struct UsageError : Error {
  using Error::Error;
};

// Flags given on the command line win over values from the --config file.
void apply_config(const CLI::App& app, RunConfig& cfg) {
  if (cfg.config.empty()) return;
  std::ifstream in(cfg.config);
  if (!in) throw UsageError("cannot open config file " + cfg.config);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& ex) {
    throw UsageError(std::string("config file: ") + ex.what());
  }
  auto given = [&](const std::string& flag) {
    if (app.get_option_no_throw(flag) && app.count(flag) > 0) return true;
    for (const auto* sub : app.get_subcommands())
      if (sub->get_option_no_throw(flag) && sub->count(flag) > 0) return true;
    return false;
  };
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (j.contains(key) && !given(flag)) field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
  };
  auto take_opt = [&](const char* key, const char* flag, std::optional<long>& field) {
    if (j.contains(key) && !given(flag)) field = j.at(key).get<long>();
  };
  try {
    take("polynomial", "--poly", cfg.polynomial);
    take("N", "-N", cfg.N);
    take("grid", "--grid", cfg.grid);
    take("seed", "--seed", cfg.seed);
    take("small_bound", "--small-bound", cfg.small_bound);
    take("threads", "--threads", cfg.threads);
    take("schedule", "--schedule", cfg.schedules);
    take_opt("r", "-r", cfg.r);
    take_opt("e", "-e", cfg.e);
    take_opt("u", "-u", cfg.u);
    take_opt("d", "-d", cfg.d);
    take("partition", "--partition", cfg.partition);
    take("assume_rank", "--assume-rank", cfg.assume_rank);
    take("D", "-D", cfg.D);
    take("emit", "--emit", cfg.emit);
    take("output", "--output", cfg.output);
    take("checkpoint", "--checkpoint", cfg.checkpoint);
    take("chunk", "--chunk", cfg.chunk);
    take("dump_table", "--dump-table", cfg.dump_table);
    take("samples", "--samples", cfg.samples);
    take("property_trials", "--property-trials", cfg.property_trials);
    take("value_bound", "--value-bound", cfg.value_bound);
    take("deterministic", "--deterministic", cfg.deterministic);
  } catch (const Json::exception& ex) {
    throw UsageError(std::string("config file: ") + ex.what());
  }
}

IntPolynomial require_polynomial(const RunConfig& cfg) {
  if (cfg.polynomial.empty()) throw UsageError("missing polynomial (-f)");
  return parse_polynomial(cfg.polynomial);
}

SieveOptions sieve_options(const RunConfig& cfg) {
  SieveOptions o;
  o.seed = cfg.seed;
  o.small_bound = cfg.small_bound;
  o.threads = cfg.threads;
  return o;
}

Json envelope(const std::string& command, const RunConfig& cfg) {
  Json out;
  out["command"] = command;
  out["version"] = kVersion;
  if (!cfg.deterministic) {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out["timestamp"] = buf;
  }
  std::ostringstream seed;
  seed << "0x" << std::hex << std::uppercase << cfg.seed;
  out["seed"] = seed.str();
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const RunConfig& cfg, const Json& j) {
  Output out(cfg.output);
  out.stream() << j.dump(2) << '\n';
}

void require_no_integer_roots(const IntPolynomial& f) {
  if (auto roots = integer_roots(f); !roots.empty())
    throw PreconditionError("f has the integer root " + roots.begin()->get_str());
}

// Table for 1..N, optionally resumed from and saved to per-chunk CSV files.
MultiplicityTable table_for(const IntPolynomial& f, long N, const RunConfig& cfg) {
  TableBuilder builder(f, N, sieve_options(cfg));
  if (cfg.checkpoint.empty() || N == 0) return builder.build();
  if (cfg.chunk < 1) throw UsageError("--chunk must be positive");
  const fs::path dir(cfg.checkpoint);
  fs::create_directories(dir);
  const fs::path meta = dir / "meta.json";
  Json expected{{"f", f.to_string()}, {"N", N}};
  if (fs::exists(meta)) {
    std::ifstream in(meta);
    Json found = Json::parse(in);
    if (found != expected) throw UsageError("checkpoint directory belongs to a different run");
  } else {
    std::ofstream(meta) << expected.dump() << '\n';
  }
  MultiplicityTable all(f, {});
  for (long lo = 1; lo <= N; lo += cfg.chunk) {
    const long hi = std::min(N, lo + cfg.chunk - 1);
    const fs::path file = dir / ("chunk_" + std::to_string(lo) + "_" + std::to_string(hi) + ".csv");
    MultiplicityTable part;
    if (fs::exists(file)) {
      std::ifstream in(file);
      part = read_table_csv(in, f);
    } else {
      part = builder.build(lo, hi);
      const fs::path tmp = file.string() + ".tmp";
      {
        std::ofstream out(tmp);
        write_table_csv(out, part);
      }
      fs::rename(tmp, file);
    }
    all = merge(all, part);
  }
  return all;
}

Rational parse_rational(const std::string& s) {
  try {
    Rational q(s);
    q.canonicalize();
    if (q <= 0) throw UsageError("D must be positive");
    return q;
  } catch (const std::invalid_argument&) {
    throw UsageError("cannot parse rational '" + s + "'");
  }
}

// "b,b,...:v;b,b,...:v" with one class per ';'.
PotentPartitionDescriptor parse_partition(const std::string& spec, std::size_t degree, bool rank_assumed) {
  PotentPartitionDescriptor desc;
  desc.kind = PartitionKind::User;
  desc.degree = degree;
  desc.rank_assumed = rank_assumed;
  std::stringstream classes(spec);
  std::string cls;
  try {
    while (std::getline(classes, cls, ';')) {
      auto colon = cls.find(':');
      if (colon == std::string::npos) throw UsageError("partition class needs ':v'");
      std::vector<BigInt> b;
      std::stringstream bs(cls.substr(0, colon));
      std::string item;
      while (std::getline(bs, item, ',')) b.emplace_back(item);
      desc.class_sizes.push_back(b.size());
      desc.b.push_back(std::move(b));
      desc.v.emplace_back(cls.substr(colon + 1));
    }
  } catch (const std::invalid_argument&) {
    throw UsageError("cannot parse partition '" + spec + "'");
  }
  desc.r = desc.b.size();
  try {
    desc.validate();
  } catch (const InternalError& ex) {
    throw UsageError(std::string("partition: ") + ex.what());
  }
  return desc;
}

// Built-in structure of f: the partition later lemma checks can use.
struct StructureInfo {
  std::optional<Decomposition> decomposition;
  std::optional<std::pair<IntPolynomial, IntPolynomial>> int_composition;
  std::optional<u64> cyclotomic_m;
  std::optional<PotentPartitionDescriptor> partition;  // nontrivial only
};

StructureInfo analyse(const IntPolynomial& f, const RunConfig& cfg) {
  StructureInfo info;
  info.cyclotomic_m = detect_cyclotomic(f);
  info.decomposition = decompose(f);
  if (info.decomposition) info.int_composition = integer_composition(*info.decomposition);
  if (!cfg.partition.empty()) {
    info.partition = parse_partition(cfg.partition, f.degree(), cfg.assume_rank);
  } else if (info.cyclotomic_m && euler_phi(*info.cyclotomic_m) >= 2) {
    try {
      auto p = potent_partition_cyclotomic(*info.cyclotomic_m);
      if (p.r > 1) info.partition = p;
    } catch (const PreconditionError&) {
    }
  }
  if (!info.partition && info.decomposition)
    info.partition = potent_partition_decomposable(f, info.decomposition->outer, info.decomposition->inner);
  return info;
}

int run_bounds(const RunConfig& cfg) {
  if (!cfg.d) throw UsageError("bounds needs -d");
  BoundSet b = known_bounds(*cfg.d, cfg.r, cfg.e);
  Json j = envelope("bounds", cfg);
  Json body = to_json(b);
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  if (cfg.u && cfg.e) j["U_deu"] = u_deu(*cfg.d, *cfg.e, *cfg.u);
  if (cfg.emit == "pretty") {
    Output out(cfg.output);
    for (auto it = body.begin(); it != body.end(); ++it)
      if (it.key() != "constants") out.stream() << it.key() << " = " << it.value().dump() << '\n';
    for (const auto& [name, q] : b.values) out.stream() << name << " = " << q.get_str() << '\n';
    return kOk;
  }
  emit_json(cfg, j);
  return kOk;
}

int run_compute(const RunConfig& cfg) {
  const IntPolynomial f = require_polynomial(cfg);
  if (f.degree() < 1) throw PreconditionError("f must be nonconstant");
  std::vector<long> grid = cfg.grid;
  if (grid.empty()) {
    if (cfg.N < 1) throw UsageError("compute needs -N or --grid");
    grid.push_back(cfg.N);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  require_no_integer_roots(f);
  const Rational D = cfg.D.empty() ? Rational(detail::sah_threshold(f)) : parse_rational(cfg.D);
  const MultiplicityTable table = table_for(f, grid.back(), cfg);
  if (!cfg.dump_table.empty()) {
    std::ofstream out(cfg.dump_table);
    if (!out) throw UsageError("cannot open " + cfg.dump_table);
    write_table_csv(out, table);
  }
  GrowthReport rep = growth_report(table, grid, D);
  if (f.degree() >= 2 && discriminant(f) != 0) {
    auto cert = irreducibility_certificate(f);
    if (cert.status == Irreducibility::ProvenReducible) rep.warnings.push_back("f is reducible: " + cert.witness);
    if (cert.status == Irreducibility::Unknown) rep.warnings.push_back("irreducibility not certified");
  }
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
  if (cfg.emit == "csv") {
    Output out(cfg.output);
    write_growth_csv(out.stream(), rep);
  } else if (cfg.emit == "pretty") {
    Output out(cfg.output);
    write_growth_pretty(out.stream(), rep);
  } else {
    Json j = envelope("compute", cfg);
    j["report"] = to_json(rep);
    emit_json(cfg, j);
  }
  return kOk;
}

int run_verify(const RunConfig& cfg) {
  const IntPolynomial f = require_polynomial(cfg);
  const std::size_t d = f.degree();
  if (d < 2) throw PreconditionError("verify needs deg f >= 2");
  if (discriminant(f) == 0) throw PreconditionError("f is not squarefree");
  require_no_integer_roots(f);
  const auto cert = irreducibility_certificate(f);
  if (cert.status == Irreducibility::ProvenReducible) throw PreconditionError("f is reducible: " + cert.witness);
  if (cfg.N < 0) throw UsageError("-N must be >= 0");

  Json j = envelope("verify", cfg);
  j["f"] = f.to_string();
  j["N"] = cfg.N;
  j["irreducibility"] = to_json(cert);
  std::vector<std::string> warnings;
  if (cert.status == Irreducibility::Unknown) warnings.push_back("irreducibility not certified");

  const StructureInfo info = analyse(f, cfg);
  std::optional<long> e = cfg.e;
  if (!e && info.cyclotomic_m) e = static_cast<long>(d);

  std::vector<std::string> wanted;
  if (cfg.schedules == "auto" || cfg.schedules == "all") {
    wanted.push_back("sah");
    if (info.partition) wanted.push_back("potent");
    if (info.int_composition) wanted.push_back("decomposable");
    if (e) wanted.push_back("galois");
    if (e && (cfg.u || info.partition)) wanted.push_back("galois_potent");
  } else {
    std::stringstream ss(cfg.schedules);
    for (std::string s; std::getline(ss, s, ',');) wanted.push_back(s);
  }

  std::vector<DeltaSchedule> schedules;
  for (const auto& name : wanted) {
    const ScheduleVariant v = parse_schedule_variant(name);
    ScheduleData data;
    data.galois_order = e;
    data.u = cfg.u;
    if (v == ScheduleVariant::Potent || v == ScheduleVariant::GaloisPotent) data.partition = info.partition;
    if (v == ScheduleVariant::Galois && info.partition && info.partition->kind != PartitionKind::Decomposable)
      data.partition = info.partition;
    data.composition = info.int_composition;
    schedules.push_back(delta_schedule(v, f, data));
  }

  const MultiplicityTable table = table_for(f, cfg.N, cfg);
  bool hard = false;
  Json reports = Json::array();
  for (const auto& s : schedules) {
    LemmaCheckReport rep = check_schedule(table, s);
    rep.f = f.to_string();
    hard = hard || rep.hard_failure();
    reports.push_back(to_json(rep));
  }
  j["schedules"] = reports;
  if (d >= 3 && cfg.N >= 1) {
    CensusResult c = high_power_census(table);
    j["census"] = to_json(c, cfg.N);
    if (c.fraction > 0.01) warnings.push_back("high-power census fraction above 1%");
  }
  Json props = Json::array();
  auto add_prop = [&](const PropertyResult& p) {
    props.push_back(Json{{"name", p.name}, {"trials", p.trials}, {"failures", p.failures},
                         {"first_failure", p.first_failure}});
    hard = hard || !p.passed();
  };
  for (const auto& p : lagrange_properties(cfg.property_trials, cfg.seed)) add_prop(p);
  add_prop(small_combination_property(cfg.property_trials, cfg.seed));
  j["properties"] = props;
  j["warnings"] = warnings;
  j["status"] = hard ? "violation" : "pass";
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

  if (cfg.emit == "pretty") {
    Output out(cfg.output);
    for (const auto& r : reports)
      out.stream() << r["lemma"].get<std::string>() << ": " << r["status"].get<std::string>() << " (D = " << r["D"].dump()
                   << ", worst slack = " << r["worst_slack"].dump() << ")\n";
    out.stream() << "status: " << j["status"].get<std::string>() << '\n';
  } else {
    emit_json(cfg, j);
  }
  return hard ? kViolation : kOk;
}

int run_structure(const RunConfig& cfg) {
  const IntPolynomial f = require_polynomial(cfg);
  if (f.degree() < 2) throw PreconditionError("structure needs deg f >= 2");
  if (discriminant(f) == 0) throw PreconditionError("f is not squarefree");
  Json j = envelope("structure", cfg);
  j["f"] = f.to_string();
  j["irreducibility"] = to_json(irreducibility_certificate(f));
  const StructureInfo info = analyse(f, cfg);
  j["cyclotomic_m"] = info.cyclotomic_m ? Json(*info.cyclotomic_m) : Json(nullptr);
  if (info.decomposition)
    j["decomposition"] = Json{{"g", info.decomposition->outer.to_string()}, {"h", info.decomposition->inner.to_string()}};
  else
    j["decomposition"] = nullptr;
  const PotentPartitionDescriptor part = info.partition ? *info.partition : potent_partition_vieta(f);
  Json pj = to_json(part);
  for (auto it = pj.begin(); it != pj.end(); ++it) j[it.key()] = it.value();
  j["galois"] = to_json(galois_order_estimate(f, cfg.samples, cfg.seed));
  j["primitive"] = to_json(primitive_galois_check(f, cfg.samples, cfg.seed));
  emit_json(cfg, j);
  return kOk;
}

int run_oracle(const RunConfig& cfg) {
  const IntPolynomial f = require_polynomial(cfg);
  if (cfg.N < 0) throw UsageError("-N must be >= 0");
  BigInt bound;
  if (bound.set_str(cfg.value_bound, 10) != 0) throw UsageError("cannot parse --value-bound");
  const MultiplicityTable fast = table_for(f, cfg.N, cfg);
  const MultiplicityTable slow = brute_table(f, cfg.N, bound);
  std::vector<long> mismatches;
  for (long n = 1; n <= cfg.N; ++n) {
    const TableEntry* a = fast.find(n);
    const TableEntry* b = slow.find(n);
    if (!a || !b || !(*a == *b)) mismatches.push_back(n);
  }
  Json j = envelope("oracle", cfg);
  j["f"] = f.to_string();
  j["N"] = cfg.N;
  j["equal"] = mismatches.empty();
  j["mismatches"] = mismatches;
  emit_json(cfg, j);
  return mismatches.empty() ? kOk : kViolation;
}

void report_error(const RunConfig& cfg, const std::string& kind, const std::string& message, int code) {
  std::cerr << "error: " << message << '\n';
  if (cfg.json_errors)
    std::cout << Json{{"error", Json{{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"lcmlab: lcm of polynomial values, bound constants and divisibility lemma checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  app.add_option("--seed", cfg.seed, "seed for all randomized steps")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (default: LCMLAB_THREADS or hardware)");
  app.add_option("--small-bound", cfg.small_bound, "sieve prime bound B (default: automatic)");
  app.add_option("--emit", cfg.emit, "output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("-o,--output", cfg.output, "write the report here instead of stdout");
  app.add_option("--config", cfg.config, "JSON file with defaults for any flag");
  app.add_flag("--deterministic", cfg.deterministic, "omit the timestamp");
  app.add_flag("--json-errors", cfg.json_errors, "also print errors as JSON on stdout");

  auto* compute = app.add_subcommand("compute", "log L, log l and log Q over an N grid");
  auto* verify = app.add_subcommand("verify", "check delta schedules, census and property suites");
  auto* bounds = app.add_subcommand("bounds", "bound constants for degree d");
  auto* structure = app.add_subcommand("structure", "potent partition and Galois sampling");
  auto* oracle = app.add_subcommand("oracle", "compare the sieve against brute-force factoring");

  for (auto* sub : {compute, verify, structure, oracle}) sub->add_option("-f,--poly", cfg.polynomial, "polynomial in x");
  for (auto* sub : {compute, verify, oracle}) {
    sub->add_option("-N", cfg.N, "largest n");
    sub->add_option("--checkpoint", cfg.checkpoint, "directory for resumable per-chunk tables");
    sub->add_option("--chunk", cfg.chunk, "chunk size for --checkpoint")->capture_default_str();
  }
  compute->add_option("--grid", cfg.grid, "N values")->delimiter(',');
  compute->add_option("-D", cfg.D, "threshold for the small/large prime split (default d|f_d|+1)");
  compute->add_option("--dump-table", cfg.dump_table, "write the multiplicity table as CSV");
  verify->add_option("--schedule", cfg.schedules, "auto or a comma list of sah,potent,decomposable,galois,galois_potent")
      ->capture_default_str();
  for (auto* sub : {verify, structure}) {
    sub->add_option("--partition", cfg.partition, "user potent partition 'b,b:v;b,b:v'");
    sub->add_flag("--assume-rank", cfg.assume_rank, "assert the rank hypothesis for a user partition");
  }
  verify->add_option("-e", cfg.e, "Galois order |G_f|");
  verify->add_option("-u", cfg.u, "class count for galois_potent");
  verify->add_option("--property-trials", cfg.property_trials, "trials per property suite")->capture_default_str();
  bounds->add_option("-d", cfg.d, "degree")->required();
  bounds->add_option("-r", cfg.r, "partition size");
  bounds->add_option("-e", cfg.e, "Galois order");
  bounds->add_option("-u", cfg.u, "class count for U_{d,e,u}");
  structure->add_option("--samples", cfg.samples, "good primes sampled")->capture_default_str();
  oracle->add_option("--value-bound", cfg.value_bound, "largest |f(n)| the brute oracle accepts")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int rc = app.exit(ex);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    apply_config(app, cfg);
    if (compute->parsed()) return run_compute(cfg);
    if (verify->parsed()) return run_verify(cfg);
    if (bounds->parsed()) return run_bounds(cfg);
    if (structure->parsed()) return run_structure(cfg);
    if (oracle->parsed()) return run_oracle(cfg);
  } catch (const SyntaxError& ex) {
    report_error(cfg, "syntax", ex.what(), kUsage);
    return kUsage;
  } catch (const UsageError& ex) {
    report_error(cfg, "usage", ex.what(), kUsage);
    return kUsage;
  } catch (const PreconditionError& ex) {
    report_error(cfg, "precondition", ex.what(), kPrecondition);
    return kPrecondition;
  } catch (const std::exception& ex) {
    report_error(cfg, "internal", ex.what(), kUsage);
    return kUsage;
  }
  return kUsage;
}
