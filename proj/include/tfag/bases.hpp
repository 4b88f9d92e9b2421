#pragma once

// Bases of G (maximal independent subsets), minimal multipliers,
// B-representations and the pure hull (B)_*.

#include "tfag/group.hpp"

namespace tfag {

using Basis = std::vector<RationalVector>;

inline RationalMatrix basis_matrix(const Basis& b, std::size_t n) {
  RationalMatrix m(0, n);
  for (auto& v : b) m.append_row(v);
  return m;
}

inline bool independent(const Basis& b, std::size_t n) {
  for (auto& v : b)
    if (v.size() != n) return false;
  return rank(basis_matrix(b, n)) == b.size();
}

inline bool is_basis(const GroupRep& g, const Basis& b) {
  if (b.size() != g.rank()) return false;
  for (auto& v : b)
    if (v.size() != g.ambient() || !member(g, v)) return false;
  return independent(b, g.ambient());
}

// Least m with m*b in G for every b (B independent, spanning span(G)).
inline Integer minimal_multiplier(const GroupRep& g, const Basis& b) {
  if (!independent(b, g.ambient()) || !(Subspace::span(b, g.ambient()) == g.span()))
    throw std::invalid_argument("minimal_multiplier: not a basis of the span of the group");
  Integer m = 1;
  for (auto& v : b) m = lcm(m, order_modulo(g, v));
  return m;
}

// a = k^-1 * sum_i n_i b_i with gcd(k, n_1, ...) = 1.
struct BRepresentation {
  Integer k;
  std::vector<Integer> n;

  friend bool operator==(const BRepresentation& x, const BRepresentation& y) {
    return x.k == y.k && x.n == y.n;
  }
};

inline BRepresentation b_representation(const GroupRep& g, const Basis& b, const RationalVector& a) {
  if (!is_basis(g, b)) throw std::invalid_argument("b_representation: not a basis");
  if (!member(g, a)) throw std::invalid_argument("b_representation: vector is not in the group");
  auto c = solve_left(basis_matrix(b, g.ambient()), a);
  if (!c) throw std::logic_error("b_representation: no solution");
  BRepresentation rep{common_denominator(*c), {}};
  for (auto& q : *c) rep.n.push_back(Integer(Rational(q * rep.k).get_num()));
  return rep;
}

// A basis of G containing C (a basis of H <= G). C is completed by rows of the
// canonical echelon basis of span(G) (the standard vectors when the span is
// everything), and the completing part is multiplied by its minimal multiplier.
inline Basis extend_basis(const GroupRep& g, const GroupRep& h, const Basis& c) {
  if (!is_subgroup(h, g)) throw std::invalid_argument("extend_basis: not a subgroup");
  if (!is_basis(h, c)) throw std::invalid_argument("extend_basis: not a basis of the subgroup");
  const std::size_t n = g.ambient();
  Basis out = c;
  Basis added;
  for (std::size_t i = 0; i < g.span().dim() && out.size() < g.rank(); ++i) {
    RationalVector e = g.span().basis().row_vector(i);
    Basis trial = out;
    trial.push_back(e);
    if (!independent(trial, n)) continue;
    out = std::move(trial);
    added.push_back(e);
  }
  Integer m = 1;
  for (auto& v : added) m = lcm(m, order_modulo(g, v));
  for (std::size_t i = c.size(); i < out.size(); ++i) out[i] = Rational(m) * out[i];
  return out;
}

enum class SummandFlag { Rank1, IndecomposableCertified, Unknown };

inline const char* to_string(SummandFlag f) {
  switch (f) {
    case SummandFlag::Rank1: return "rank1";
    case SummandFlag::IndecomposableCertified: return "certified";
    case SummandFlag::Unknown: return "unknown";
  }
  return "?";
}

// An internal direct sum of pure subgroups of G (not necessarily all of G).
struct DecompositionRecord {
  std::vector<GroupRep> summands;
  std::vector<SummandFlag> flags;

  std::size_t total_rank() const {
    std::size_t r = 0;
    for (auto& s : summands) r += s.rank();
    return r;
  }
  GroupRep sum(std::size_t n) const { return group_sum(summands, n); }
};

// (B)_* = sum of the pure hulls b_* of the basis elements.
inline DecompositionRecord pure_hull_sum(const GroupRep& g, const Basis& b) {
  if (!is_basis(g, b)) throw std::invalid_argument("pure_hull_sum: not a basis");
  DecompositionRecord d;
  for (auto& v : b) {
    d.summands.push_back(pure_line(g, v));
    d.flags.push_back(SummandFlag::Rank1);
  }
  return d;
}

}  // namespace tfag
