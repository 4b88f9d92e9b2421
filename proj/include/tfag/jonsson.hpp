#pragma once

// Jonsson bases (finite-index direct sums of strongly indecomposable pure
// subgroups), their quotients, lifting of quotient decompositions, the
// regulating search and the induced action of automorphisms.

#include "tfag/decompositions.hpp"

namespace tfag {

enum class JonssonFlag { Rank1, SICertified, Asserted };

inline const char* to_string(JonssonFlag f) {
  switch (f) {
    case JonssonFlag::Rank1: return "rank1";
    case JonssonFlag::SICertified: return "si-certified";
    case JonssonFlag::Asserted: return "asserted";
  }
  return "?";
}

struct JonssonBasis {
  GroupRep group;
  std::vector<GroupRep> summands;
  std::vector<JonssonFlag> flags;
  bool pure = true;  // every summand pure in G
  QuotientMap quotient_map;

  const FiniteQuotient& quotient() const { return quotient_map.quotient(); }
  GroupRep sum() const { return group_sum(summands, group.ambient()); }
  std::vector<SummandSignature> signatures() const {
    std::vector<SummandSignature> out;
    for (auto& s : summands) out.push_back(signature(s));
    std::sort(out.begin(), out.end());
    return out;
  }
};

class infinite_index_error : public std::invalid_argument {
public:
  infinite_index_error(InfiniteTorsion w)
      : std::invalid_argument("infinite index: unbounded " + std::to_string(w.prime) +
                              "-torsion along " + format_tuple(w.direction)),
        witness(std::move(w)) {}
  InfiniteTorsion witness;
};

inline JonssonFlag jonsson_flag(const GroupRep& s) {
  if (s.rank() == 1) return JonssonFlag::Rank1;
  if (typeset_obstruction_certificate(s)) return JonssonFlag::SICertified;
  return JonssonFlag::Asserted;
}

// With purify_summands, each candidate is replaced by the pure subgroup of G
// on its span; otherwise the candidates are used as given (they must lie in G).
inline JonssonBasis jonsson_basis_from_summands(const GroupRep& g, const std::vector<GroupRep>& candidates,
                                                bool purify_summands = true) {
  const std::size_t n = g.ambient();
  std::size_t dims = 0;
  RationalMatrix all(0, n);
  for (auto& c : candidates) {
    g.require_ambient(c.ambient(), "jonsson_basis_from_summands");
    dims += c.rank();
    for (std::size_t i = 0; i < c.span().dim(); ++i) all.append_row(c.span().basis().row_vector(i));
  }
  if (rank(all) != dims) throw std::invalid_argument("summand spans overlap");
  if (dims != g.rank() || !(Subspace::span(all, n) == g.span()))
    throw std::invalid_argument("summand spans do not add up to the span of the group");
  JonssonBasis jb;
  jb.group = g;
  for (auto& c : candidates) {
    GroupRep s = purify_summands ? purify(g, c.span()) : c;
    if (!purify_summands) {
      if (!is_subgroup(s, g)) throw std::invalid_argument("summand is not a subgroup of the group");
      if (!equal_groups(s, purify(g, s.span()))) jb.pure = false;
    }
    jb.flags.push_back(jonsson_flag(s));
    jb.summands.push_back(std::move(s));
  }
  QuotientDescription q = index_and_quotient(g, jb.sum());
  if (!q.finite()) throw infinite_index_error(q.witness());
  jb.quotient_map = q.map();
  return jb;
}

// ---------------------------------------------------------------------------

namespace detail {

// Basis made of the summand span bases, grouped into blocks by the grouping.
inline std::pair<Basis, Partition> grouped_basis(const std::vector<GroupRep>& summands,
                                                 const Partition& grouping) {
  Basis b;
  Partition p;
  for (auto& block : grouping) {
    std::vector<std::size_t> idx;
    for (auto s : block)
      for (std::size_t i = 0; i < summands[s].span().dim(); ++i) {
        idx.push_back(b.size());
        b.push_back(summands[s].span().basis().row_vector(i));
      }
    p.push_back(std::move(idx));
  }
  return {b, p};
}

inline bool grouping_splits(const GroupRep& g, const std::vector<GroupRep>& summands,
                            const Partition& grouping) {
  auto [b, p] = grouped_basis(summands, grouping);
  for (auto& block : p)
    if (block.empty()) return false;
  return partition_splits(g, b, p);
}

inline DecompositionRecord grouping_hulls(const GroupRep& g, const std::vector<GroupRep>& summands,
                                          const Partition& grouping) {
  auto [b, p] = grouped_basis(summands, grouping);
  DecompositionRecord d = block_hulls(g, b, p);
  for (std::size_t j = 0; j < d.summands.size(); ++j) d.flags[j] = summand_flag(d.summands[j]);
  return d;
}

}  // namespace detail

// Image in G/A of a subgroup H <= G: Z[S^-1] v maps onto the cyclic group
// generated by s * image(v), where s removes the S-primary part.
inline QuotientSubgroup image_in_quotient(const QuotientMap& qm, const GroupRep& h) {
  const FiniteQuotient& q = qm.quotient();
  const Integer e = q.exponent();
  std::vector<Residues> gens;
  for (auto& gen : h.generators()) {
    Integer s = 1;
    if (gen.s.is_all()) s = e;
    else
      for (Prime p : gen.s.primes())
        if (mpz_divisible_ui_p(e.get_mpz_t(), p)) s *= prime_part(e, p);
    Residues r = qm.image(gen.v);
    for (auto& x : r) x *= s;
    gens.push_back(q.reduce(r));
  }
  return QuotientSubgroup(q, gens);
}

struct SplittingGrouping {
  Partition grouping;               // blocks of summand indices
  DecompositionRecord decomposition;  // G = (+) (block sum)_*
};

// Groupings of A's summands into 2..max_blocks blocks whose purified block
// sums reconstitute G.
inline std::vector<SplittingGrouping> splitting_decompositions_of(const JonssonBasis& a,
                                                                 std::size_t max_blocks) {
  std::vector<SplittingGrouping> out;
  for (auto& grouping : set_partitions(a.summands.size(), max_blocks)) {
    if (!detail::grouping_splits(a.group, a.summands, grouping)) continue;
    out.push_back({grouping, detail::grouping_hulls(a.group, a.summands, grouping)});
  }
  return out;
}

struct LiftReport {
  bool lifted = false;
  Partition grouping;                 // (B | C) on summand indices
  DecompositionRecord lift;           // G = B_* (+) C_*
  std::vector<QuotientSubgroup> images;
  std::size_t groupings_tried = 0;
};

// Looks for a splitting grouping B | C of A with image(B_*) = U and
// image(C_*) = W. A refusal means no grouping of A's summands realises U (+) W.
inline LiftReport lift_quotient_decomposition(const JonssonBasis& a, const std::vector<Residues>& u_gens,
                                              const std::vector<Residues>& w_gens) {
  const FiniteQuotient& q = a.quotient();
  QuotientSubgroup u(q, u_gens), w(q, w_gens);
  if (!is_internal_direct_sum(u, w, q))
    throw std::invalid_argument("U and W do not form a direct decomposition of the quotient");
  LiftReport rep;
  for (auto& grouping : set_partitions(a.summands.size(), 2)) {
    ++rep.groupings_tried;
    if (!detail::grouping_splits(a.group, a.summands, grouping)) continue;
    DecompositionRecord d = detail::grouping_hulls(a.group, a.summands, grouping);
    QuotientSubgroup ib = image_in_quotient(a.quotient_map, d.summands[0]);
    QuotientSubgroup ic = image_in_quotient(a.quotient_map, d.summands[1]);
    bool direct = ib == u && ic == w;
    bool swapped = ib == w && ic == u;
    if (!direct && !swapped) continue;
    rep.lifted = true;
    rep.grouping = grouping;
    if (swapped) {
      std::swap(rep.grouping[0], rep.grouping[1]);
      std::swap(d.summands[0], d.summands[1]);
      std::swap(d.flags[0], d.flags[1]);
      std::swap(ib, ic);
    }
    rep.lift = std::move(d);
    rep.images = {ib, ic};
    return rep;
  }
  return rep;
}

// Maximal liftable refinements of the trivial decomposition of G/A, obtained
// by splitting blocks of summands while the grouping still splits G.
inline std::vector<LiftReport> unrefinable_quotient_decompositions(const JonssonBasis& a) {
  const std::size_t t = a.summands.size();
  std::vector<LiftReport> out;
  std::set<Partition> seen;
  auto normalise = [](Partition p) {
    for (auto& b : p) std::sort(b.begin(), b.end());
    std::sort(p.begin(), p.end());
    return p;
  };
  std::vector<std::size_t> all(t);
  for (std::size_t i = 0; i < t; ++i) all[i] = i;
  auto rec = [&](auto&& self, const Partition& current) -> void {
    bool refined = false;
    for (std::size_t b = 0; b < current.size(); ++b) {
      if (current[b].size() < 2) continue;
      for (auto& sub : set_partitions(current[b].size(), 2)) {
        Partition next;
        for (std::size_t c = 0; c < current.size(); ++c)
          if (c != b) next.push_back(current[c]);
        for (auto& part : sub) {
          std::vector<std::size_t> blk;
          for (auto i : part) blk.push_back(current[b][i]);
          next.push_back(blk);
        }
        next = normalise(next);
        if (!detail::grouping_splits(a.group, a.summands, next)) continue;
        refined = true;
        self(self, next);
      }
    }
    if (refined) return;
    if (!seen.insert(current).second) return;
    LiftReport rep;
    rep.lifted = true;
    rep.grouping = current;
    rep.lift = detail::grouping_hulls(a.group, a.summands, current);
    for (auto& s : rep.lift.summands) rep.images.push_back(image_in_quotient(a.quotient_map, s));
    out.push_back(std::move(rep));
  };
  if (t > 0) rec(rec, Partition{all});
  return out;
}

// ---------------------------------------------------------------------------
// regulating search

struct RegulatingResult {
  std::optional<JonssonBasis> best;
  Integer index = 0;
  bool exhaustive = true;
  std::size_t subsets_examined = 0;
  std::vector<JonssonBasis> found;  // every Jonsson basis met, in search order
};

namespace detail {

inline std::vector<std::size_t> divisible_dimensions(const GroupRep& h, const std::vector<Prime>& classes) {
  std::vector<std::size_t> d;
  for (Prime p : classes) d.push_back(h.divisible_directions(p).dim());
  d.push_back(h.divisible_directions_all().dim());
  return d;
}

}  // namespace detail

// Candidate summands: pure lines through the candidate vectors, then the
// extras (strongly indecomposable pure subgroups supplied by the caller, and
// G itself when it carries a typeset certificate). Subsets of independent
// summands spanning G with finite index are Jonsson bases; the least index
// wins, ties going to the first found.
inline RegulatingResult regulating_search(const GroupRep& g, const SearchOptions& opt,
                                          const std::vector<GroupRep>& extras = {}) {
  RegulatingResult res;
  const std::size_t r = g.rank();
  if (r == 0) {
    res.best = jonsson_basis_from_summands(g, {});
    res.index = 1;
    res.found.push_back(*res.best);
    return res;
  }
  CandidateVectors cv = candidate_vectors(g, opt.height, opt.max_vectors);
  res.exhaustive = cv.exhaustive;
  std::vector<GroupRep> cands = parallel_map(cv.vectors.size(), opt.threads,
                                             [&](std::size_t i) { return pure_line(g, cv.vectors[i]); });
  for (auto& e : extras) cands.push_back(purify(g, e.span()));
  if (typeset_obstruction_certificate(g)) cands.push_back(g);

  std::vector<Prime> classes = comparison_primes(g, g);
  auto target = detail::divisible_dimensions(g, classes);
  std::vector<std::vector<std::size_t>> dims;
  for (auto& c : cands) dims.push_back(detail::divisible_dimensions(c, classes));

  // subsets of candidates with ranks adding to r, in lexicographic order
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> cur;
  bool capped = false;
  auto rec = [&](auto&& self, std::size_t start, std::size_t rank_left) -> void {
    if (capped) return;
    if (rank_left == 0) {
      std::vector<std::size_t> tot(target.size(), 0);
      for (auto i : cur)
        for (std::size_t k = 0; k < tot.size(); ++k) tot[k] += dims[i][k];
      if (tot != target) return;
      if (subsets.size() >= opt.max_bases) {
        capped = true;
        return;
      }
      subsets.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < cands.size(); ++i) {
      if (cands[i].rank() > rank_left) continue;
      cur.push_back(i);
      self(self, i + 1, rank_left - cands[i].rank());
      cur.pop_back();
      if (capped) return;
    }
  };
  rec(rec, 0, r);
  if (capped) res.exhaustive = false;

  auto results = parallel_map(subsets.size(), opt.threads, [&](std::size_t i) -> std::optional<JonssonBasis> {
    std::vector<GroupRep> parts;
    RationalMatrix m(0, g.ambient());
    for (auto k : subsets[i]) {
      parts.push_back(cands[k]);
      for (std::size_t j = 0; j < cands[k].span().dim(); ++j) m.append_row(cands[k].span().basis().row_vector(j));
    }
    if (rank(m) != r) return std::nullopt;
    try {
      return jonsson_basis_from_summands(g, parts);
    } catch (const infinite_index_error&) {
      return std::nullopt;
    }
  });
  res.subsets_examined = subsets.size();
  for (auto& jb : results) {
    if (!jb) continue;
    Integer idx = jb->quotient().order();
    if (!res.best || idx < res.index) {
      res.best = *jb;
      res.index = idx;
    }
    res.found.push_back(std::move(*jb));
  }
  return res;
}

// ---------------------------------------------------------------------------
// action of automorphisms on quotients

struct InducedMap {
  JonssonBasis transported;          // A alpha
  std::vector<Residues> images;      // row i: image in G/(A alpha) of the i-th generator of G/A
  bool same_subgroup = false;        // A alpha = A
  bool identity = false;             // alpha-bar is the identity of G/A
  bool kernel_check = false;         // (alpha - 1)/n maps G into G, n = exp(G/A)
};

inline bool kernel_check(const GroupRep& g, const RationalMatrix& alpha, const Integer& n) {
  RationalMatrix m = alpha - RationalMatrix::identity(g.ambient());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) /= Rational(n);
  return is_subgroup(transform_group(g, m), g);
}

inline InducedMap induced_quotient_map(const JonssonBasis& a, const RationalMatrix& alpha) {
  const GroupRep& g = a.group;
  if (!automorphism_check(g, alpha)) throw std::invalid_argument("matrix is not an automorphism of the group");
  InducedMap im;
  std::vector<GroupRep> moved;
  for (auto& s : a.summands) moved.push_back(transform_group(s, alpha));
  im.transported = jonsson_basis_from_summands(g, moved, a.pure);
  im.same_subgroup = equal_groups(im.transported.sum(), a.sum());
  const QuotientMap& target = im.same_subgroup ? a.quotient_map : im.transported.quotient_map;
  auto lifts = a.quotient_map.generator_lifts();
  for (auto& x : lifts) im.images.push_back(target.image(x * alpha));
  im.identity = im.same_subgroup;
  for (std::size_t i = 0; i < im.images.size() && im.identity; ++i) {
    Residues e(im.images.size(), 0);
    e[i] = 1;
    if (im.images[i] != e) im.identity = false;
  }
  im.kernel_check = kernel_check(g, alpha, a.quotient().exponent());
  return im;
}

}  // namespace tfag
