#pragma once

// Bounded search for complete decompositions, and isomorphism of
// decompositions of the same group.

#include "tfag/obstruction.hpp"
#include "tfag/parallel.hpp"
#include "tfag/quasi.hpp"
#include "tfag/splitting.hpp"

#include <map>
#include <set>

namespace tfag {

struct SearchOptions {
  unsigned height = 2;             // L1 bound on generator coefficients
  std::size_t max_vectors = 64;    // distinct candidate directions
  std::size_t max_bases = 20000;   // candidate bases examined
  unsigned threads = 1;
};

struct CandidateVectors {
  std::vector<RationalVector> vectors;
  bool exhaustive = true;
};

namespace detail {

inline std::string direction_key(const RationalVector& v) {
  std::string k;
  for (auto& q : primitive_direction(v)) k += q.get_str() + ",";
  return k;
}

// Integer vectors of length g with L1 norm exactly h, in lexicographic order.
inline void vectors_of_norm(std::size_t g, long h, std::vector<std::vector<long>>& out) {
  std::vector<long> z(g, 0);
  auto rec = [&](auto&& self, std::size_t i, long left) -> void {
    if (i + 1 == g) {
      for (long v : {-left, left}) {
        z[i] = v;
        out.push_back(z);
        if (left == 0) break;
      }
      return;
    }
    for (long v = -left; v <= left; ++v) {
      z[i] = v;
      self(self, i + 1, left - std::abs(v));
    }
  };
  if (g == 0) return;
  rec(rec, 0, h);
}

}  // namespace detail

// Elements of G: the generator vectors, then integer combinations of them with
// coefficient L1 norm up to height, ordered by norm then lexicographically;
// one vector per direction.
inline CandidateVectors candidate_vectors(const GroupRep& g, unsigned height, std::size_t max_vectors) {
  CandidateVectors out;
  std::set<std::string> seen;
  auto offer = [&](const RationalVector& v) {
    if (is_zero(v)) return true;
    if (!seen.insert(detail::direction_key(v)).second) return true;
    if (out.vectors.size() >= max_vectors) {
      out.exhaustive = false;
      return false;
    }
    out.vectors.push_back(v);
    return true;
  };
  for (auto& gen : g.generators())
    if (!offer(gen.v)) return out;
  const std::size_t k = g.generators().size();
  for (long h = 1; h <= static_cast<long>(height); ++h) {
    std::vector<std::vector<long>> zs;
    detail::vectors_of_norm(k, h, zs);
    for (auto& z : zs) {
      RationalVector v(g.ambient());
      for (std::size_t i = 0; i < k; ++i)
        if (z[i] != 0) v = v + Rational(z[i]) * g.generators()[i].v;
      if (!offer(v)) return out;
    }
  }
  return out;
}

struct CandidateBases {
  std::vector<Basis> bases;
  bool exhaustive = true;
};

// Independent rank(G)-subsets of the candidate vectors, in lexicographic
// order of index sets, after the given bases.
inline CandidateBases candidate_bases(const GroupRep& g, const std::vector<Basis>& given,
                                      const SearchOptions& opt) {
  CandidateBases out;
  for (auto& b : given) {
    if (!is_basis(g, b)) throw std::invalid_argument("candidate basis is not a basis of the group");
    out.bases.push_back(b);
  }
  const std::size_t r = g.rank();
  if (r == 0) return out;
  CandidateVectors cv = candidate_vectors(g, opt.height, opt.max_vectors);
  out.exhaustive = cv.exhaustive;
  const std::size_t m = cv.vectors.size();
  if (m < r) return out;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  std::size_t examined = 0;
  for (;;) {
    Basis b;
    for (auto i : idx) b.push_back(cv.vectors[i]);
    if (independent(b, g.ambient())) {
      if (examined >= opt.max_bases) {
        out.exhaustive = false;
        break;
      }
      ++examined;
      out.bases.push_back(std::move(b));
    }
    std::size_t i = r;
    while (i-- > 0)
      if (idx[i] < m - r + i) break;
    if (i == static_cast<std::size_t>(-1)) break;
    ++idx[i];
    for (std::size_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Rank-1 summands are indecomposable; rank-2 summands are certified by the
// typeset obstruction when it applies.
inline SummandFlag summand_flag(const GroupRep& s) {
  if (s.rank() == 1) return SummandFlag::Rank1;
  if (typeset_obstruction_certificate(s)) return SummandFlag::IndecomposableCertified;
  return SummandFlag::Unknown;
}

struct FoundDecomposition {
  Basis basis;
  Partition partition;
  DecompositionRecord decomposition;
};

struct DecompositionSearch {
  std::vector<FoundDecomposition> found;
  std::size_t bases_examined = 0;
  bool exhaustive = true;  // every basis up to the height bound was examined
};

namespace detail {

inline std::vector<std::string> span_keys(const DecompositionRecord& d) {
  std::vector<std::string> keys;
  for (auto& s : d.summands) keys.push_back(s.span().key());
  std::sort(keys.begin(), keys.end());
  return keys;
}

// Every summand of fine lies inside a summand of coarse, and fine has more.
inline bool refines(const DecompositionRecord& fine, const DecompositionRecord& coarse) {
  if (fine.summands.size() <= coarse.summands.size()) return false;
  for (auto& f : fine.summands) {
    bool inside = false;
    for (auto& c : coarse.summands)
      if (c.span().contains(f.span())) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

}  // namespace detail

namespace detail {

inline DecompositionSearch decomposition_search(const GroupRep& g, const std::vector<Basis>& given,
                                                const SearchOptions& opt, const std::vector<RationalVector>& pool);

// Bases of s drawn from pool vectors lying in its span.
inline std::vector<Basis> bases_from_pool(const GroupRep& s, const std::vector<RationalVector>& pool,
                                          std::size_t cap) {
  std::vector<RationalVector> in;
  for (auto& v : pool)
    if (s.span().contains(v) && member(s, v)) in.push_back(v);
  std::vector<Basis> out;
  const std::size_t r = s.rank();
  if (in.size() < r) return out;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  for (;;) {
    Basis b;
    for (auto i : idx) b.push_back(in[i]);
    if (is_basis(s, b)) {
      out.push_back(std::move(b));
      if (out.size() >= cap) return out;
    }
    std::size_t i = r;
    while (i-- > 0)
      if (idx[i] < in.size() - r + i) break;
    if (i == static_cast<std::size_t>(-1)) break;
    ++idx[i];
    for (std::size_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// S = L (+) C for a pure line L whose quotient S/L is free: every generator
// not in [L] has an empty prime set, so lifting a lattice basis of the
// projection gives C.
inline std::optional<FoundDecomposition> split_off_line(const GroupRep& s) {
  const std::size_t n = s.ambient(), r = s.rank();
  if (r < 2) return std::nullopt;
  std::vector<RationalVector> lines;
  for (auto& e : typeset(s)) lines.push_back(e.witness);
  for (auto& gen : s.generators()) lines.push_back(gen.v);
  std::set<std::string> tried;
  for (auto& dir : lines) {
    if (is_zero(dir) || !tried.insert(direction_key(primitive_direction(dir))).second) continue;
    GroupRep l = pure_line(s, dir);
    RationalVector w = l.generators().front().v;
    // coordinates of [S] in a basis starting with w
    RationalMatrix frame(0, n);
    frame.append_row(w);
    for (std::size_t i = 0; i < r && frame.rows() < r; ++i) {
      RationalMatrix trial = frame;
      trial.append_row(s.span().basis().row_vector(i));
      if (rank(trial) == trial.rows()) frame = std::move(trial);
    }
    RationalMatrix proj(0, r - 1);
    std::vector<std::size_t> used;
    bool free = true;
    for (std::size_t i = 0; i < s.generators().size() && free; ++i) {
      auto c = solve_left(frame, s.generators()[i].v);
      RationalVector tail(c->begin() + 1, c->end());
      if (is_zero(tail)) continue;
      free = s.generators()[i].s.empty();
      proj.append_row(tail);
      used.push_back(i);
    }
    if (!free || proj.rows() == 0) continue;
    LatticeBasis lb = lattice_basis(proj);
    if (lb.basis.rows() != r - 1) continue;
    Basis b{w};
    for (std::size_t k = 0; k < lb.basis.rows(); ++k) {
      RationalVector x(n);
      for (std::size_t j = 0; j < used.size(); ++j)
        x = x + Rational(lb.from_gens(k, j)) * s.generators()[used[j]].v;
      b.push_back(x);
    }
    Partition p(2);
    p[0] = {0};
    for (std::size_t k = 1; k < r; ++k) p[1].push_back(k);
    if (!is_basis(s, b) || !partition_splits(s, b, p)) continue;
    return FoundDecomposition{b, p, block_hulls(s, b, p)};
  }
  return std::nullopt;
}

// A decomposition of a summand refines one of G.
inline FoundDecomposition refine_summands(const FoundDecomposition& f, const SearchOptions& opt,
                                          std::map<std::string, std::optional<FoundDecomposition>>& memo,
                                          const std::vector<RationalVector>& pool) {
  FoundDecomposition out;
  for (std::size_t j = 0; j < f.decomposition.summands.size(); ++j) {
    const GroupRep& s = f.decomposition.summands[j];
    Basis block = block_vectors(f.basis, f.partition[j]);
    std::optional<FoundDecomposition> inner;
    if (s.rank() >= 2 && summand_flag(s) == SummandFlag::Unknown) {
      std::string key = s.span().key();
      auto it = memo.find(key);
      if (it == memo.end()) {
        SearchOptions o = opt;
        o.threads = 1;
        DecompositionSearch ds = decomposition_search(s, bases_from_pool(s, pool, 256), o, pool);
        std::optional<FoundDecomposition> best;
        for (auto& c : ds.found)
          if (!best || c.decomposition.summands.size() > best->decomposition.summands.size()) best = c;
        if (!best)
          if (auto split = split_off_line(s)) best = refine_summands(*split, o, memo, pool);
        it = memo.emplace(key, std::move(best)).first;
      }
      inner = it->second;
    }
    if (!inner) {
      std::vector<std::size_t> idx;
      for (auto& v : block) {
        idx.push_back(out.basis.size());
        out.basis.push_back(v);
      }
      out.partition.push_back(std::move(idx));
      out.decomposition.summands.push_back(s);
      out.decomposition.flags.push_back(summand_flag(s));
      continue;
    }
    for (std::size_t k = 0; k < inner->partition.size(); ++k) {
      std::vector<std::size_t> idx;
      for (auto& v : block_vectors(inner->basis, inner->partition[k])) {
        idx.push_back(out.basis.size());
        out.basis.push_back(v);
      }
      out.partition.push_back(std::move(idx));
      out.decomposition.summands.push_back(inner->decomposition.summands[k]);
      out.decomposition.flags.push_back(inner->decomposition.flags[k]);
    }
  }
  return out;
}


inline DecompositionSearch decomposition_search(const GroupRep& g, const std::vector<Basis>& given,
                                                const SearchOptions& opt, const std::vector<RationalVector>& outer) {
  DecompositionSearch out;
  CandidateBases cb = candidate_bases(g, given, opt);
  std::vector<RationalVector> pool = outer;
  for (auto& v : candidate_vectors(g, opt.height, opt.max_vectors).vectors) pool.push_back(v);
  out.exhaustive = cb.exhaustive;
  out.bases_examined = cb.bases.size();
  auto partitions = parallel_map(cb.bases.size(), opt.threads, [&](std::size_t i) {
    return finest_splitting_partition(g, cb.bases[i]);
  });
  std::set<std::vector<std::string>> seen;
  std::vector<FoundDecomposition> all;
  std::map<std::string, std::optional<FoundDecomposition>> sub;  // by summand span
  for (std::size_t i = 0; i < cb.bases.size(); ++i) {
    if (partitions[i].size() < 2) continue;
    FoundDecomposition f =
        refine_summands({cb.bases[i], partitions[i], block_hulls(g, cb.bases[i], partitions[i])}, opt, sub, pool);
    if (!seen.insert(detail::span_keys(f.decomposition)).second) continue;
    all.push_back(std::move(f));
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool refined = false;
    for (std::size_t j = 0; j < all.size() && !refined; ++j)
      refined = j != i && refines(all[j].decomposition, all[i].decomposition);
    if (!refined) out.found.push_back(all[i]);
  }
  return out;
}

}  // namespace detail

// For each candidate basis, its finest splitting partition; proper results
// are deduplicated and those refined by another result are dropped. An empty
// result is not a proof of indecomposability.
// Uncertified summands of rank >= 2 are searched again on their own, with the
// candidate vectors of G that lie in their span.
inline DecompositionSearch complete_decomposition_search(const GroupRep& g, const std::vector<Basis>& given,
                                                         const SearchOptions& opt) {
  return detail::decomposition_search(g, given, opt, {});
}

// ---------------------------------------------------------------------------
// isomorphism of decompositions

// An isomorphism between summands, given on a basis of the source span.
struct SummandIso {
  std::vector<RationalVector> source;
  std::vector<RationalVector> target;
};

enum class IsoVerdict { Yes, No, Unknown };

inline const char* to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Yes: return "Yes";
    case IsoVerdict::No: return "No";
    case IsoVerdict::Unknown: return "Unknown";
  }
  return "?";
}

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::Unknown;
  std::vector<std::size_t> pairing;  // summand i of D1 -> pairing[i] of D2
  std::vector<SummandIso> isos;
  std::string reason;
};

// Quasi-isomorphism invariant of a summand: rank and typeset classes.
struct SummandSignature {
  std::size_t rank;
  std::vector<PrimeSet> typeset;

  friend bool operator<(const SummandSignature& a, const SummandSignature& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.typeset < b.typeset;
  }
  friend bool operator==(const SummandSignature& a, const SummandSignature& b) {
    return a.rank == b.rank && a.typeset == b.typeset;
  }
  std::string str() const {
    std::string s = "rank " + std::to_string(rank) + " {";
    for (std::size_t i = 0; i < typeset.size(); ++i) {
      if (i) s += ", ";
      s += DivisibilityType(1, typeset[i]).str();
    }
    return s + "}";
  }
};

inline SummandSignature signature(const GroupRep& s) { return {s.rank(), typeset_classes(s)}; }

inline std::vector<SummandSignature> signatures(const DecompositionRecord& d) {
  std::vector<SummandSignature> out;
  for (auto& s : d.summands) out.push_back(signature(s));
  std::sort(out.begin(), out.end());
  return out;
}

// A certified isomorphism a -> b between the two groups, if one is found:
// rank 1 by matching type classes, higher rank by equality or a scalar.
inline std::optional<SummandIso> certified_isomorphism(const GroupRep& a, const GroupRep& b) {
  if (a.rank() != b.rank() || a.rank() == 0) return std::nullopt;
  if (a.rank() == 1) {
    auto ta = typeset(a), tb = typeset(b);
    if (!(ta[0].primes == tb[0].primes)) return std::nullopt;
    return SummandIso{{ta[0].witness}, {tb[0].witness}};
  }
  std::optional<Rational> r;
  if (equal_groups(a, b)) r = Rational(1);
  else r = quasi_equal_strict(a, b);
  if (!r) return std::nullopt;
  SummandIso iso;
  for (std::size_t i = 0; i < a.span().dim(); ++i) {
    RationalVector x = a.span().basis().row_vector(i);
    iso.target.push_back(*r * x);
    iso.source.push_back(std::move(x));
  }
  return iso;
}

inline void require_decomposition_of(const GroupRep& g, const DecompositionRecord& d) {
  if (d.total_rank() != g.rank() || !equal_groups(d.sum(g.ambient()), g))
    throw std::invalid_argument("decomposition does not sum to the group");
}

inline IsoResult decompositions_isomorphic(const GroupRep& g, const DecompositionRecord& d1,
                                           const DecompositionRecord& d2) {
  require_decomposition_of(g, d1);
  require_decomposition_of(g, d2);
  IsoResult res;
  if (d1.summands.size() != d2.summands.size()) {
    res.verdict = IsoVerdict::No;
    res.reason = "summand counts differ";
    return res;
  }
  auto s1 = signatures(d1), s2 = signatures(d2);
  for (std::size_t i = 0; i < s1.size(); ++i)
    if (!(s1[i] == s2[i])) {
      res.verdict = IsoVerdict::No;
      res.reason = s1[i].rank != s2[i].rank ? "rank multisets differ" : "typeset multisets differ";
      return res;
    }

  const std::size_t t = d1.summands.size();
  std::vector<std::vector<std::optional<SummandIso>>> iso(t, std::vector<std::optional<SummandIso>>(t));
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) iso[i][j] = certified_isomorphism(d1.summands[i], d2.summands[j]);
  std::vector<std::size_t> pairing(t);
  std::vector<bool> used(t, false);
  auto match = [&](auto&& self, std::size_t i) -> bool {
    if (i == t) return true;
    for (std::size_t j = 0; j < t; ++j) {
      if (used[j] || !iso[i][j]) continue;
      used[j] = true;
      pairing[i] = j;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (!match(match, 0)) {
    res.reason = "no certified pairing of summands";
    return res;
  }
  res.verdict = IsoVerdict::Yes;
  res.pairing = pairing;
  for (std::size_t i = 0; i < t; ++i) res.isos.push_back(*iso[i][pairing[i]]);
  res.reason = "summand-wise isomorphisms";
  return res;
}

struct AssembledAutomorphism {
  RationalMatrix matrix;
  bool verified = false;
};

// The block map sum_i (iso_i) extended by the identity off span(G).
inline AssembledAutomorphism automorphism_from_summand_isos(const GroupRep& g, const IsoResult& iso) {
  if (iso.verdict != IsoVerdict::Yes) throw std::invalid_argument("no summand pairing to assemble");
  const std::size_t n = g.ambient();
  RationalMatrix src(0, n), dst(0, n);
  for (auto& s : iso.isos)
    for (std::size_t i = 0; i < s.source.size(); ++i) {
      src.append_row(s.source[i]);
      dst.append_row(s.target[i]);
    }
  for (std::size_t k = 0; k < n && src.rows() < n; ++k) {
    RationalVector e(n);
    e[k] = 1;
    RationalMatrix trial = src;
    trial.append_row(e);
    if (rank(trial) == trial.rows()) {
      src = std::move(trial);
      dst.append_row(e);
    }
  }
  auto inv = inverse(src);
  if (!inv) throw std::logic_error("summand isomorphisms do not assemble to an invertible map");
  RationalMatrix m = *inv * dst;
  return {m, automorphism_check(g, m)};
}

// ---------------------------------------------------------------------------
// buckets of summands up to certified isomorphism

struct SummandBucket {
  SummandSignature signature;
  GroupRep representative;
  std::size_t count = 0;
};

inline std::vector<SummandBucket> bucket_summands(const std::vector<GroupRep>& summands) {
  std::vector<SummandBucket> out;
  for (auto& s : summands) {
    SummandSignature sig = signature(s);
    bool placed = false;
    for (auto& b : out) {
      if (!(b.signature == sig)) continue;
      if (s.rank() == 1 || certified_isomorphism(b.representative, s)) {
        ++b.count;
        placed = true;
        break;
      }
    }
    if (!placed) out.push_back({sig, s, 1});
  }
  return out;
}

}  // namespace tfag
