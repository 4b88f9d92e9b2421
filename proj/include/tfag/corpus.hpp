#pragma once

// Seeded random groups for property tests: completely decomposable (cd),
// almost completely decomposable (acd), Butler sums and direct sums of those.
// Randomness comes from mt19937_64 reduced by modulo, so a (profile, seed)
// pair gives the same group on every platform.

#include <random>

#include "tfag/bases.hpp"
#include "tfag/quasi.hpp"

namespace tfag {

enum class Profile { CD, ACD, Butler, Mixed };

inline const char* to_string(Profile p) {
  switch (p) {
    case Profile::CD: return "cd";
    case Profile::ACD: return "acd";
    case Profile::Butler: return "butler";
    case Profile::Mixed: return "mixed";
  }
  return "?";
}

inline Profile parse_profile(std::string_view s) {
  if (s == "cd") return Profile::CD;
  if (s == "acd") return Profile::ACD;
  if (s == "butler") return Profile::Butler;
  if (s == "mixed") return Profile::Mixed;
  throw std::invalid_argument("unknown profile '" + std::string(s) + "'");
}

struct CorpusOptions {
  std::size_t max_rank = 3;
  std::vector<Prime> primes{2, 3, 5};
};

// How the group was built. For cd and acd groups `components` are the rank-1
// summands of the underlying cd group; acd adds one coset vector of the
// recorded order modulo that cd group.
struct CorpusCertificate {
  Profile profile = Profile::CD;
  std::uint64_t seed = 0;
  std::vector<GroupRep> components;
  std::optional<RationalVector> coset;
  Integer coset_order = 1;
  GroupRep cd_part() const {
    std::size_t n = components.empty() ? 0 : components.front().ambient();
    return group_sum(components, n);
  }
};

struct CorpusGroup {
  GroupRep group;
  CorpusCertificate certificate;
};

class CorpusRng {
public:
  explicit CorpusRng(std::uint64_t seed) : gen_(seed) {}
  // uniform enough on [lo, hi] for tiny ranges
  long range(long lo, long hi) { return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool chance(unsigned num, unsigned den) { return gen_() % den < num; }
  template <class T>
  const T& pick(const std::vector<T>& xs) { return xs[gen_() % xs.size()]; }

private:
  std::mt19937_64 gen_;
};

namespace detail {

inline PrimeSet random_prime_set(CorpusRng& rng, const std::vector<Prime>& primes, bool allow_all) {
  if (allow_all && rng.chance(1, 10)) return PrimeSet::all();
  std::vector<Prime> s;
  for (Prime p : primes)
    if (rng.chance(1, 3)) s.push_back(p);
  return PrimeSet::of(s);
}

inline Rational random_scale(CorpusRng& rng, const std::vector<Prime>& primes) {
  Rational r = 1;
  for (int k = 0; k < 2; ++k) {
    if (!rng.chance(1, 3)) continue;
    Prime p = rng.pick(primes);
    if (rng.chance(1, 2)) r /= p;
    else r *= p;
  }
  return r;
}

// r independent integer vectors in Q^n with entries in [-2, 2].
inline std::vector<RationalVector> random_frame(CorpusRng& rng, std::size_t r, std::size_t n) {
  for (;;) {
    std::vector<RationalVector> rows;
    RationalMatrix m(0, n);
    for (std::size_t i = 0; i < r; ++i) {
      RationalVector v(n);
      // keep frames near the standard one most of the time
      for (std::size_t j = 0; j < n; ++j) v[j] = (i == j) ? Rational(1) : Rational(0);
      if (rng.chance(1, 2))
        for (std::size_t j = 0; j < n; ++j) v[j] += rng.range(-1, 1);
      rows.push_back(v);
      m.append_row(v);
    }
    if (rank(m) == r) return rows;
  }
}

inline std::vector<GroupRep> random_components(CorpusRng& rng, std::size_t r, const CorpusOptions& opt,
                                               bool allow_all) {
  std::vector<GroupRep> out;
  for (auto& v : random_frame(rng, r, r)) {
    PrimeSet s = random_prime_set(rng, opt.primes, allow_all);
    Rational scale = random_scale(rng, opt.primes);
    out.emplace_back(r, std::vector<Generator>{{scale * v, s}});
  }
  return out;
}

inline CorpusGroup generate_profile(Profile profile, CorpusRng& rng, std::size_t r, const CorpusOptions& opt) {
  CorpusCertificate cert;
  cert.profile = profile;
  switch (profile) {
    case Profile::CD: {
      cert.components = random_components(rng, r, opt, true);
      return {cert.cd_part(), cert};
    }
    case Profile::ACD: {
      cert.components = random_components(rng, r, opt, false);
      GroupRep cd = cert.cd_part();
      long d = rng.range(2, 6);
      RationalVector x(r);
      for (auto& c : cert.components) x = x + Rational(rng.range(0, d - 1)) * c.generators().front().v;
      x = Rational(1, d) * x;
      std::vector<Generator> gens = cd.generators();
      if (!is_zero(x)) gens.push_back({x, PrimeSet{}});
      cert.coset = x;
      cert.coset_order = is_zero(x) ? Integer(1) : order_modulo(cd, x);
      return {GroupRep(r, gens), cert};
    }
    case Profile::Butler: {
      std::vector<RationalVector> frame = random_frame(rng, r, r);
      std::size_t extra = static_cast<std::size_t>(rng.range(1, 2));
      // sometimes one distinct prime per piece, the strongly indecomposable shape
      std::vector<Prime> spread = opt.primes;
      bool singletons = spread.size() >= r + extra && rng.chance(1, 3);
      if (singletons)
        for (std::size_t i = spread.size(); i-- > 1;)
          std::swap(spread[i], spread[static_cast<std::size_t>(rng.range(0, static_cast<long>(i)))]);
      auto piece_primes = [&](std::size_t k) {
        return singletons ? PrimeSet::of({spread[k]}) : random_prime_set(rng, opt.primes, false);
      };
      std::vector<Generator> gens;
      for (auto& v : frame) gens.push_back({random_scale(rng, opt.primes) * v, piece_primes(gens.size())});
      for (std::size_t k = 0; k < extra; ++k) {
        RationalVector v(r);
        while (is_zero(v))
          for (auto& f : frame) v = v + Rational(rng.range(-1, 1)) * f;
        gens.push_back({random_scale(rng, opt.primes) * v, piece_primes(gens.size())});
      }
      return {GroupRep(r, gens), cert};
    }
    case Profile::Mixed: break;
  }
  // direct sum of two smaller profile groups
  std::size_t r1 = static_cast<std::size_t>(rng.range(1, static_cast<long>(r) - 1));
  Profile p1 = rng.chance(1, 2) ? Profile::ACD : Profile::Butler;
  Profile p2 = rng.chance(1, 2) ? Profile::CD : Profile::Butler;
  CorpusGroup a = generate_profile(r1 >= 2 ? p1 : Profile::CD, rng, r1, opt);
  CorpusGroup b = generate_profile(r - r1 >= 2 ? p2 : Profile::CD, rng, r - r1, opt);
  cert.profile = Profile::Mixed;
  return {direct_sum(a.group, b.group), cert};
}

}  // namespace detail

inline CorpusGroup generate(Profile profile, std::uint64_t seed, const CorpusOptions& opt = {}) {
  if (opt.max_rank == 0) throw std::invalid_argument("generate: max_rank must be positive");
  CorpusRng rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(profile));
  long lo = (profile == Profile::Mixed || profile == Profile::ACD) ? 2 : 1;
  if (static_cast<long>(opt.max_rank) < lo) profile = Profile::CD, lo = 1;
  std::size_t r = static_cast<std::size_t>(rng.range(lo, static_cast<long>(opt.max_rank)));
  CorpusGroup out = detail::generate_profile(profile, rng, r, opt);
  out.certificate.profile = profile;
  out.certificate.seed = seed;
  std::string name = std::string(to_string(profile)) + "_" + std::to_string(seed);
  out.group = out.group.renamed(name);
  return out;
}

// count groups cycling through the four profiles, seeds first_seed, first_seed+1, ...
inline std::vector<CorpusGroup> corpus(std::size_t count, std::uint64_t first_seed = 1,
                                       const CorpusOptions& opt = {}) {
  static const Profile order[] = {Profile::CD, Profile::ACD, Profile::Butler, Profile::Mixed};
  std::vector<CorpusGroup> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(generate(order[i % 4], first_seed + i, opt));
  return out;
}

// ---------------------------------------------------------------------------
// sampling inside a group

// A random element: small integer combination of generator vectors, each
// possibly divided by one of its own primes.
inline RationalVector random_element(const GroupRep& g, CorpusRng& rng, const std::vector<Prime>& primes = {2, 3, 5}) {
  RationalVector x(g.ambient());
  for (auto& gen : g.generators()) {
    Rational c = rng.range(-2, 2);
    if (c != 0 && rng.chance(1, 3)) {
      Prime p = rng.pick(primes);
      if (gen.s.contains(p)) c /= p;
    }
    x = x + c * gen.v;
  }
  return x;
}

inline std::optional<Basis> random_basis(const GroupRep& g, CorpusRng& rng, const std::vector<Prime>& primes = {2, 3, 5}) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    Basis b;
    for (std::size_t i = 0; i < g.rank(); ++i) b.push_back(random_element(g, rng, primes));
    if (is_basis(g, b)) return b;
  }
  return std::nullopt;
}

// A random vector of Q^n with entries whose denominators use the given primes.
inline RationalVector random_query(std::size_t n, CorpusRng& rng, const std::vector<Prime>& primes = {2, 3, 5},
                                   unsigned max_exponent = 2) {
  RationalVector x(n);
  for (auto& q : x) {
    Integer den = 1;
    for (Prime p : primes) den *= power(p, static_cast<unsigned long>(rng.range(0, max_exponent)));
    q = Rational(Integer(rng.range(-3, 3)), den);
    q.canonicalize();
  }
  return x;
}

// Verified automorphisms of g. Candidates are -1, small unimodular integer
// matrices and, for cd and acd groups, moves of the component frame:
// permutations among equal prime sets, signs, unit scalings and transvections
// g_i += c g_j with S_i contained in S_j.
inline std::vector<RationalMatrix> sample_automorphisms(const CorpusGroup& cg, CorpusRng& rng, std::size_t want) {
  const GroupRep& g = cg.group;
  const std::size_t n = g.ambient();
  std::vector<RationalMatrix> cand;
  RationalMatrix neg = RationalMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) neg(i, i) = -1;
  cand.push_back(neg);
  auto& comps = cg.certificate.components;
  if (!comps.empty() && comps.size() == n) {
    RationalMatrix frame(0, n);
    for (auto& c : comps) frame.append_row(c.generators().front().v);
    RationalMatrix finv = *inverse(frame);
    auto conj = [&](const RationalMatrix& e) { return finv * e * frame; };
    for (int k = 0; k < 12; ++k) {
      RationalMatrix e = RationalMatrix::identity(n);
      std::size_t i = static_cast<std::size_t>(rng.range(0, static_cast<long>(n) - 1));
      std::size_t j = static_cast<std::size_t>(rng.range(0, static_cast<long>(n) - 1));
      const PrimeSet& si = comps[i].generators().front().s;
      const PrimeSet& sj = comps[j].generators().front().s;
      switch (k % 4) {
        case 0:
          if (i != j && si == sj) e.swap_rows(i, j);
          break;
        case 1: e(i, i) = -1; break;
        case 2:
          if (!si.empty()) {
            Prime p = si.is_all() ? 2 : si.primes().front();
            e(i, i) = rng.chance(1, 2) ? Rational(p) : Rational(1, p);
          }
          break;
        case 3:
          if (i != j && si.subset_of(sj)) e(i, j) = rng.range(-2, 2);
          break;
      }
      cand.push_back(conj(e));
    }
  }
  for (int k = 0; k < 6; ++k) {
    RationalMatrix e = RationalMatrix::identity(n);
    std::size_t i = static_cast<std::size_t>(rng.range(0, static_cast<long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(rng.range(0, static_cast<long>(n) - 1));
    if (i != j) e(i, j) = rng.range(-1, 1);
    if (rng.chance(1, 2) && n > 1) e.swap_rows(0, n - 1);
    cand.push_back(e);
  }
  std::vector<RationalMatrix> out;
  for (auto& m : cand) {
    if (out.size() >= want) break;
    if (m == RationalMatrix::identity(n)) continue;
    bool seen = false;
    for (auto& o : out) seen = seen || o == m;
    if (!seen && automorphism_check(g, m)) out.push_back(m);
  }
  return out;
}

}  // namespace tfag
