#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "lcmlab/algebra.hpp"
#include "lcmlab/bigint.hpp"
#include "lcmlab/error.hpp"
#include "lcmlab/factor.hpp"
#include "lcmlab/polymod.hpp"
#include "lcmlab/primes.hpp"
#include "lcmlab/table.hpp"

namespace lcmlab {

// Thread count from LCMLAB_THREADS, else the hardware concurrency.
inline unsigned default_threads() {
  if (const char* env = std::getenv("LCMLAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

inline u64 splitmix64(u64 x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct SieveOptions {
  u64 small_bound = 0;  // 0 selects max(2 * (d|f_d| + 1) * N, 10^4)
  u64 seed = kDefaultSeed;
  unsigned threads = 0;  // 0 selects default_threads()
  long segment = 8192;
};

inline u64 default_small_bound(const IntPolynomial& f, long N) {
  BigInt dsah = BigInt(static_cast<unsigned long>(f.degree())) * abs(f.leading()) + 1;
  BigInt b = 2 * dsah * N;
  if (b < 10'000) b = 10'000;
  if (!fits_u64(b) || to_u64(b) > (u64{1} << 40)) throw PreconditionError("small bound too large for the sieve");
  return to_u64(b);
}

namespace detail {

// Progression n = residue (mod modulus) with modulus = p^j <= N.
struct Progression {
  u64 prime;
  u64 modulus;
  u64 residue;
};

// Per-polynomial sieve data, independent of the n-segment.
struct SievePlan {
  long N = 0;
  u64 bound = 0;
  std::vector<u64> bad;                          // bad primes <= bound
  std::vector<Progression> progressions;         // good p <= N, levels with p^j <= N
  std::vector<std::pair<u64, u64>> short_roots;  // good p > N: (p, root in [1, N])
};

inline SievePlan make_plan(const IntPolynomial& f, long N, u64 bound, u64 seed) {
  SievePlan plan;
  plan.N = N;
  plan.bound = bound;
  const BigInt bad_product = abs(f.leading() * discriminant(f));
  const IntPolynomial df = f.derivative();
  const u64 n_max = static_cast<u64>(N);
  for (u64 p : primes_up_to(std::max<u64>(bound, 2)).primes) {
    if (mpz_divisible_ui_p(bad_product.get_mpz_t(), p)) {
      plan.bad.push_back(p);
      continue;
    }
    std::vector<u64> roots = roots_mod_p(f, p, seed);
    if (p > n_max) {
      for (u64 r : roots)
        if (r >= 1 && r <= n_max) plan.short_roots.emplace_back(p, r);
      continue;
    }
    const BigInt pb = from_u64(p);
    for (u64 r : roots) {
      BigInt root = from_u64(r);
      u64 modulus = p;
      BigInt big_mod = pb;
      for (;;) {
        plan.progressions.push_back({p, modulus, to_u64(root)});
        if (modulus > n_max / p) break;
        // Newton step to the root mod p^(j+1).
        BigInt next = big_mod * pb;
        BigInt fr = f.evaluate(root), dfr = df.evaluate(root), inv;
        mpz_invert(inv.get_mpz_t(), dfr.get_mpz_t(), next.get_mpz_t());
        root -= fr * inv;
        mpz_mod(root.get_mpz_t(), root.get_mpz_t(), next.get_mpz_t());
        big_mod = next;
        modulus *= p;
      }
    }
  }
  return plan;
}

inline std::vector<TableEntry> sieve_segment(const IntPolynomial& f, const SievePlan& plan, long lo, long hi,
                                             u64 seed) {
  const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
  std::vector<BigInt> residual(len);
  std::vector<int> sign(len);
  for (std::size_t i = 0; i < len; ++i) {
    BigInt v = f.evaluate(BigInt(lo + static_cast<long>(i)));
    sign[i] = sgn(v);
    residual[i] = abs(v);
  }
  std::vector<std::vector<std::pair<u64, unsigned>>> marks(len);

  for (u64 p : plan.bad)
    for (std::size_t i = 0; i < len; ++i)
      if (sign[i] != 0 && mpz_divisible_ui_p(residual[i].get_mpz_t(), p)) marks[i].emplace_back(p, 0);

  const u64 ulo = static_cast<u64>(lo), uhi = static_cast<u64>(hi);
  for (const Progression& pr : plan.progressions) {
    u64 n = pr.residue == 0 ? pr.modulus : pr.residue;
    if (n < ulo) n += (ulo - n + pr.modulus - 1) / pr.modulus * pr.modulus;
    for (; n <= uhi; n += pr.modulus) {
      auto& m = marks[n - ulo];
      if (!m.empty() && m.back().first == pr.prime) {
        ++m.back().second;
      } else {
        m.emplace_back(pr.prime, 1);
      }
    }
  }
  for (const auto& [p, r] : plan.short_roots)
    if (r >= ulo && r <= uhi) marks[r - ulo].emplace_back(p, 0);

  std::vector<TableEntry> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    TableEntry& e = out[i];
    e.n = lo + static_cast<long>(i);
    e.sign = sign[i];
    if (sign[i] == 0) continue;
    BigInt& rest = residual[i];
    std::map<BigInt, unsigned> found;
    for (auto [p, c] : marks[i]) {
      for (unsigned k = 0; k < c; ++k) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) throw InternalError("sieve marked a non-divisor");
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      }
      // Direct valuation beyond the sieved levels.
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++c;
      }
      if (c) found[from_u64(p)] += c;
    }
    if (rest != 1) {
      const u64 nseed = splitmix64(seed ^ static_cast<u64>(e.n));
      if (plan.bound >= 10'000) {
        factor_large_cofactor(rest, found, nseed);
      } else {
        for (const auto& [p, k] : factor(rest, nseed)) found[p] += k;
      }
    }
    e.factors.reserve(found.size());
    for (auto& [p, k] : found) e.factors.emplace_back(p, checked_exponent(k));
  }
  return out;
}

}  // namespace detail

namespace detail {

inline std::vector<TableEntry> factor_directly(const IntPolynomial& f, long lo, long hi, u64 seed) {
  std::vector<TableEntry> entries;
  for (long n = lo; n <= hi; ++n) {
    BigInt v = f.evaluate(BigInt(n));
    TableEntry e{n, sgn(v), {}};
    if (e.sign != 0 && abs(v) != 1)
      for (const auto& [p, k] : factor(abs(v), splitmix64(seed ^ static_cast<u64>(n))))
        e.factors.emplace_back(p, checked_exponent(k));
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace detail

// Exact factorization tables of f(n) for n in subranges of [1, N], sharing
// one sieve plan: good primes up to the small bound are sieved along
// Hensel-lifted progressions, bad primes and short progressions get direct
// valuation, rho handles the remaining cofactors. Output is deterministic in
// (seed, bound) and independent of thread count and segmentation.
class TableBuilder {
 public:
  TableBuilder(IntPolynomial f, long N, SieveOptions opts = {}) : f_(std::move(f)), N_(N), opts_(opts) {
    if (f_.degree() < 1) throw PreconditionError("build_table: f must be nonconstant");
    if (N_ < 0) throw PreconditionError("build_table: N must be >= 0");
    if (N_ == 0) return;
    const u64 bound = opts_.small_bound ? opts_.small_bound : default_small_bound(f_, N_);
    if (bound < 2) throw PreconditionError("build_table: small bound must be >= 2");
    // Non-squarefree or linear input has no usable root structure.
    direct_ = f_.degree() == 1 || discriminant(f_) == 0;
    if (!direct_) plan_ = detail::make_plan(f_, N_, bound, opts_.seed);
  }

  long N() const { return N_; }
  const IntPolynomial& polynomial() const { return f_; }

  MultiplicityTable build(long lo, long hi) const {
    if (lo < 1 || hi > N_ || lo > hi + 1) throw PreconditionError("build_table: range outside [1, N]");
    if (lo > hi) return MultiplicityTable(f_, {});
    if (direct_) return MultiplicityTable(f_, detail::factor_directly(f_, lo, hi, opts_.seed));
    const long seg = std::max<long>(opts_.segment, 1);
    const long segments = (hi - lo + seg) / seg;
    std::vector<std::vector<TableEntry>> parts(static_cast<std::size_t>(segments));
    const unsigned threads =
        std::max<unsigned>(1, std::min<long>(opts_.threads ? opts_.threads : default_threads(), segments));
    std::atomic<long> next{0};
    auto worker = [&] {
      for (long s; (s = next.fetch_add(1)) < segments;) {
        long a = lo + s * seg, b = std::min(hi, a + seg - 1);
        parts[static_cast<std::size_t>(s)] = detail::sieve_segment(f_, plan_, a, b, opts_.seed);
      }
    };
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    std::vector<TableEntry> entries;
    entries.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (auto& part : parts)
      for (auto& e : part) entries.push_back(std::move(e));
    return MultiplicityTable(f_, std::move(entries));
  }

  MultiplicityTable build() const { return N_ == 0 ? MultiplicityTable(f_, {}) : build(1, N_); }

 private:
  IntPolynomial f_;
  long N_;
  SieveOptions opts_;
  bool direct_ = false;
  detail::SievePlan plan_;
};

inline MultiplicityTable build_table(const IntPolynomial& f, long N, const SieveOptions& opts = {}) {
  return TableBuilder(f, N, opts).build();
}

inline MultiplicityTable build_table(const IntPolynomial& f, long N, u64 small_bound, u64 seed) {
  SieveOptions opts;
  opts.small_bound = small_bound;
  opts.seed = seed;
  return build_table(f, N, opts);
}

namespace detail {

// Floyd-cycle rho with a gcd per step; kept separate from the Brent/Montgomery
// path used by factor() so the oracle shares no splitting code with the sieve.
inline BigInt floyd_rho(const BigInt& n) {
  for (unsigned long c = 1;; ++c) {
    BigInt x = 2, y = 2, d = 1;
    auto f = [&](BigInt& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (d == 1) {
      f(x);
      f(y);
      f(y);
      d = gcd_big(BigInt(x - y), n);
    }
    if (d != n) return d;
  }
}

inline void oracle_split(const BigInt& n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    oracle_split(r, out);
    oracle_split(r, out);
    return;
  }
  BigInt d = floyd_rho(n);
  oracle_split(d, out);
  oracle_split(BigInt(n / d), out);
}

}  // namespace detail

inline constexpr u64 kBruteTrialLimit = 1'000'000;

// Trial-division oracle. Exact by trial division alone when every |f(n)| is
// at most 10^12 (the default value bound). A larger bound admits bigger values;
// cofactors above 10^12 left after trial division are then split by a
// separate Floyd-rho routine.
inline MultiplicityTable brute_table(const IntPolynomial& f, long N, const BigInt& value_bound = BigInt("1000000000000")) {
  static const std::vector<u64> trial = primes_up_to(kBruteTrialLimit).primes;
  const BigInt trial_square = from_u64(kBruteTrialLimit) * from_u64(kBruteTrialLimit);
  std::vector<TableEntry> entries;
  for (long n = 1; n <= N; ++n) {
    BigInt v = f.evaluate(BigInt(n));
    TableEntry e{n, sgn(v), {}};
    BigInt rest = abs(v);
    if (rest > value_bound) throw PreconditionError("brute_table: |f(" + std::to_string(n) + ")| exceeds oracle bound");
    if (e.sign != 0) {
      std::map<BigInt, unsigned> found;
      for (u64 p : trial) {
        if (fits_u64(rest)) {
          u64 r = to_u64(rest);
          if (p * p > r) break;
          if (r % p) continue;
          unsigned k = 0;
          while (r % p == 0) {
            r /= p;
            ++k;
          }
          found[from_u64(p)] = k;
          rest = from_u64(r);
        } else if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
          unsigned k = 0;
          while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++k;
          }
          found[from_u64(p)] = k;
        }
      }
      if (rest != 1) {
        if (rest < trial_square) {
          ++found[rest];
        } else {
          detail::oracle_split(rest, found);
        }
      }
      for (auto& [p, k] : found) e.factors.emplace_back(p, checked_exponent(k));
    }
    entries.push_back(std::move(e));
  }
  return MultiplicityTable(f, std::move(entries));
}

}  // namespace lcmlab
