#pragma once

// Property SI for a basis, bounded search for quasi-decompositions, and the
// certificate that rules them out.

#include "tfag/decompositions.hpp"

namespace tfag {

struct SplitAttempt {
  Partition partition;
  bool splits = false;
};

struct SIReport {
  Basis basis;
  DecompositionRecord hull;       // (B)_*
  QuotientDescription quotient;   // G / (B)_*
  std::vector<SplitAttempt> attempts;
  bool holds = false;
  std::vector<std::string> reasons;  // why it fails
};

// SI holds for B when G/(B)_* is infinite and no two-block partition of B
// splits G.
inline SIReport property_si_check(const GroupRep& g, const Basis& b) {
  if (!is_basis(g, b)) throw std::invalid_argument("property_si_check: not a basis");
  SIReport rep;
  rep.basis = b;
  rep.hull = pure_hull_sum(g, b);
  rep.quotient = index_and_quotient(g, rep.hull.sum(g.ambient()));
  if (rep.quotient.finite()) rep.reasons.push_back("quotient is finite: " + rep.quotient.str());
  for (auto& p : set_partitions(b.size(), 2)) {
    bool s = partition_splits(g, b, p);
    rep.attempts.push_back({p, s});
    if (s) rep.reasons.push_back("partition " + format_partition(p) + " splits");
  }
  rep.holds = rep.reasons.empty();
  return rep;
}

struct DecomposabilityWitness {
  Basis basis;
  Partition partition;
  QuasiSplitKind kind;
  QuotientDescription quotient;  // G / sum of block hulls (finite)
};

struct WitnessSearch {
  std::optional<DecomposabilityWitness> witness;
  std::size_t bases_examined = 0;
  bool exhaustive = true;
};

namespace detail {

inline std::optional<DecomposabilityWitness> witness_for_basis(const GroupRep& g, const Basis& b) {
  for (auto& p : set_partitions(b.size(), 2)) {
    if (partition_splits(g, b, p)) {
      auto rep = quasi_split_check(g, b, p);
      return DecomposabilityWitness{b, p, rep.kind, rep.quotient};
    }
  }
  std::vector<Prime> classes = comparison_primes(g, g);
  for (auto& p : set_partitions(b.size(), 2)) {
    DecompositionRecord d = block_hulls(g, b, p);
    GroupRep sum = d.sum(g.ambient());
    // finite index needs matching divisible directions at every class
    bool possible = true;
    for (Prime q : classes)
      if (sum.divisible_directions(q).dim() != g.divisible_directions(q).dim()) possible = false;
    if (sum.divisible_directions_all().dim() != g.divisible_directions_all().dim()) possible = false;
    if (!possible) continue;
    QuotientDescription q = index_and_quotient(g, sum);
    if (q.finite()) return DecomposabilityWitness{b, p, QuasiSplitKind::QuasiSplit, q};
  }
  return std::nullopt;
}

}  // namespace detail

// First basis (in candidate order) with a two-block partition whose block
// hulls have finite index in G. A witness shows G is not strongly
// indecomposable; finding none proves nothing.
inline WitnessSearch strong_decomposability_witness_search(const GroupRep& g, const SearchOptions& opt,
                                                           const std::vector<Basis>& given = {}) {
  WitnessSearch out;
  if (g.rank() < 2) return out;
  CandidateBases cb = candidate_bases(g, given, opt);
  out.exhaustive = cb.exhaustive;
  auto results = parallel_map(cb.bases.size(), opt.threads,
                              [&](std::size_t i) { return detail::witness_for_basis(g, cb.bases[i]); });
  out.bases_examined = cb.bases.size();
  for (auto& r : results)
    if (r) {
      out.witness = std::move(r);
      break;
    }
  return out;
}

}  // namespace tfag
