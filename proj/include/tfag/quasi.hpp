#pragma once

// Quasi-equality rH = G, commensurability, quasi-automorphisms and
// quasi-splitting of partitions.

#include "tfag/quotient.hpp"
#include "tfag/splitting.hpp"

namespace tfag {

namespace detail {

// Same span and the same divisible directions at every class of primes.
inline bool same_divisible_structure(const GroupRep& h, const GroupRep& g) {
  if (!(h.span() == g.span())) return false;
  for (Prime p : comparison_primes(h, g))
    if (!(h.divisible_directions(p) == g.divisible_directions(p))) return false;
  return h.divisible_directions_all() == g.divisible_directions_all();
}

// Elementary divisors s_i / den of T = L_h * L_g^+ (L_h = T L_g).
struct Transition {
  std::vector<Integer> s;
  Integer den;
};

inline Transition transition(const LocalFrame& fh, const LocalFrame& fg) {
  RationalMatrix t = fh.lattice * right_inverse(fg.lattice);
  auto [ti, den] = clear_denominators(t);
  return {smith_normal_form(ti).invariant_factors, den};
}

}  // namespace detail

// r > 0 with r H = G, if one exists. At each class of primes with a lattice
// part, the elementary divisors of the lattice transition fix the valuation
// of r; elsewhere the valuation is free and 0 is taken.
inline std::optional<Rational> quasi_equal_strict(const GroupRep& h, const GroupRep& g) {
  h.require_ambient(g.ambient(), "quasi_equal_strict");
  if (!detail::same_divisible_structure(h, g)) return std::nullopt;
  std::set<Prime> explicit_set(h.explicit_primes().begin(), h.explicit_primes().end());
  explicit_set.insert(g.explicit_primes().begin(), g.explicit_primes().end());
  std::vector<Prime> ex(explicit_set.begin(), explicit_set.end());

  Rational r = 1;
  // generic class
  {
    const LocalFrame& fh = h.generic_frame();
    const LocalFrame& fg = g.generic_frame();
    if (fh.lattice.rows() != fg.lattice.rows()) return std::nullopt;
    if (fh.lattice.rows() > 0) {
      auto t = detail::transition(fh, fg);
      if (t.s.size() != fh.lattice.rows()) return std::nullopt;
      if (strip_primes(Integer(t.s.back() / t.s.front()), ex) != 1) return std::nullopt;
      Integer num = strip_primes(t.den, ex);
      Integer den = strip_primes(t.s.front(), ex);
      r = Rational(num, den);
      r.canonicalize();
    }
  }
  for (Prime p : ex) {
    const LocalFrame& fh = h.frame_for(p);
    const LocalFrame& fg = g.frame_for(p);
    if (fh.lattice.rows() != fg.lattice.rows()) return std::nullopt;
    if (fh.lattice.rows() == 0) continue;
    auto t = detail::transition(fh, fg);
    if (t.s.size() != fh.lattice.rows()) return std::nullopt;
    unsigned long v0 = valuation(t.s.front(), p);
    for (auto& s : t.s)
      if (valuation(s, p) != v0) return std::nullopt;
    long v = static_cast<long>(valuation(t.den, p)) - static_cast<long>(v0);
    if (v > 0) r *= Rational(power(p, v));
    else if (v < 0) r /= Rational(power(p, -v));
  }
  r.canonicalize();
  if (!equal_groups(scale_group(h, r), g)) return std::nullopt;
  return r;
}

struct Commensurability {
  Integer a;  // a H <= G
  Integer b;  // b G <= H
};

// Least (a, b) with aH <= G and bG <= H, if the indices are finite.
inline std::optional<Commensurability> commensurable(const GroupRep& h, const GroupRep& g) {
  h.require_ambient(g.ambient(), "commensurable");
  if (!detail::same_divisible_structure(h, g)) return std::nullopt;
  Integer a = 1, b = 1;
  for (auto& gen : h.generators()) a = lcm(a, order_modulo(g, gen.v));
  for (auto& gen : g.generators()) b = lcm(b, order_modulo(h, gen.v));
  if (!is_subgroup(scale_group(h, a), g) || !is_subgroup(scale_group(g, b), h))
    throw std::logic_error("commensurable: witness failed verification");
  return Commensurability{a, b};
}

// ---------------------------------------------------------------------------
// automorphisms (matrices act on row vectors: x -> x * M)

inline RationalMatrix require_invertible(const RationalMatrix& m, std::size_t n) {
  if (m.rows() != n || m.cols() != n)
    throw dimension_error("matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  auto inv = inverse(m);
  if (!inv) throw std::invalid_argument("matrix is singular");
  return *inv;
}

inline bool automorphism_check(const GroupRep& g, const RationalMatrix& m) {
  RationalMatrix inv = require_invertible(m, g.ambient());
  return is_subgroup(transform_group(g, m), g) && is_subgroup(transform_group(g, inv), g);
}

struct QuasiAutomorphism {
  Rational r;
  RationalMatrix automorphism;  // (1/r) M
};

inline std::optional<QuasiAutomorphism> quasi_automorphism_check(const GroupRep& g,
                                                                const RationalMatrix& m) {
  require_invertible(m, g.ambient());
  auto s = quasi_equal_strict(transform_group(g, m), g);
  if (!s) return std::nullopt;
  RationalMatrix a = m;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) *= *s;
  if (!automorphism_check(g, a)) return std::nullopt;
  Rational r = 1 / *s;
  return QuasiAutomorphism{r, a};
}

// ---------------------------------------------------------------------------

enum class QuasiSplitKind { ExactSplit, QuasiSplit, NoSplit };

inline const char* to_string(QuasiSplitKind k) {
  switch (k) {
    case QuasiSplitKind::ExactSplit: return "ExactSplit";
    case QuasiSplitKind::QuasiSplit: return "QuasiSplit";
    case QuasiSplitKind::NoSplit: return "NoSplit";
  }
  return "?";
}

struct QuasiSplitReport {
  QuasiSplitKind kind;
  DecompositionRecord blocks;      // (B_j)_*
  QuotientDescription quotient;    // G / sum of blocks
};

inline QuasiSplitReport quasi_split_check(const GroupRep& g, const Basis& b, const Partition& p) {
  if (!is_basis(g, b)) throw std::invalid_argument("quasi_split_check: not a basis");
  validate_partition(p, b.size());
  DecompositionRecord d = block_hulls(g, b, p);
  QuotientDescription q = index_and_quotient(g, d.sum(g.ambient()));
  QuasiSplitKind kind = QuasiSplitKind::NoSplit;
  if (partition_splits(g, b, p)) kind = QuasiSplitKind::ExactSplit;
  else if (q.finite()) kind = QuasiSplitKind::QuasiSplit;
  return {kind, std::move(d), std::move(q)};
}

}  // namespace tfag
