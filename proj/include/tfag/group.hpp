#pragma once

// Finite sums G = sum_i Z[S_i^-1] v_i inside Q^n.
//
// Membership and everything built on it is decided locally: G is the
// intersection of its localisations G_(p), and G_(p) has a simple shape,
// namely a divisible subspace D_p plus a free Z_(p)-module. Only the primes
// explicitly named by some S_i can behave differently from the rest, so one
// "generic" frame serves every other prime.

#include "tfag/linalg.hpp"
#include "tfag/primes.hpp"
#include "tfag/types.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tfag {

struct Generator {
  RationalVector v;
  PrimeSet s;

  friend bool operator==(const Generator& a, const Generator& b) {
    return a.v == b.v && a.s == b.s;
  }
};

// Local picture of G at one class of primes.
struct LocalFrame {
  Subspace divisible;                    // D: directions divisible at this class
  RationalMatrix projection;             // n x k, kernel exactly D
  RationalMatrix lattice;                // r x k, Z-basis of projected generators
  IntegerMatrix from_generators;         // lattice = from_generators * projected gens
  std::vector<std::size_t> generator_index;  // the non-divisible generators
  RationalMatrix coords;                 // n x r; x * coords = lattice coordinates

  RationalVector project(const RationalVector& x) const { return x * projection; }
  RationalVector coordinates(const RationalVector& x) const { return x * coords; }
};

class GroupRep {
public:
  GroupRep() : GroupRep(0, {}) {}
  GroupRep(std::size_t ambient, std::vector<Generator> gens, std::string name = {})
      : n_(ambient), gens_(std::move(gens)), name_(std::move(name)) {
    for (auto& g : gens_) {
      if (g.v.size() != n_)
        throw dimension_error("generator has length " + std::to_string(g.v.size()) +
                              ", ambient dimension is " + std::to_string(n_));
      for (auto& q : g.v) q.canonicalize();
      if (is_zero(g.v)) throw std::invalid_argument("zero generator vector");
    }
    build();
  }

  std::size_t ambient() const { return n_; }
  std::size_t rank() const { return cache_->span.dim(); }
  const std::vector<Generator>& generators() const { return gens_; }
  const std::string& name() const { return name_; }
  GroupRep renamed(std::string name) const {
    GroupRep g = *this;
    g.name_ = std::move(name);
    return g;
  }

  const Subspace& span() const { return cache_->span; }
  // Primes named by some finite S_i.
  const std::vector<Prime>& explicit_primes() const { return cache_->explicit_primes; }
  bool is_explicit(Prime p) const {
    return std::binary_search(explicit_primes().begin(), explicit_primes().end(), p);
  }

  const LocalFrame& generic_frame() const { return cache_->generic; }
  // The frame governing G_(p).
  const LocalFrame& frame_for(Prime p) const {
    auto it = cache_->local.find(p);
    return it == cache_->local.end() ? cache_->generic : it->second;
  }

  // Span of the generators divisible by every power of p (p-divisible part's span).
  const Subspace& divisible_directions(Prime p) const { return frame_for(p).divisible; }
  // Span of the generators with S = ALL.
  const Subspace& divisible_directions_all() const { return cache_->generic.divisible; }

  void require_ambient(std::size_t n, const char* what) const {
    if (n != n_)
      throw dimension_error(std::string(what) + ": ambient dimension " + std::to_string(n) +
                            " does not match " + std::to_string(n_));
  }

private:
  struct Cache {
    Subspace span;
    std::vector<Prime> explicit_primes;
    LocalFrame generic;
    std::map<Prime, LocalFrame> local;
  };

  template <class Pred>
  LocalFrame build_frame(Pred divisible) const {
    LocalFrame f;
    RationalMatrix drows(0, n_);
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (divisible(gens_[i])) drows.append_row(gens_[i].v);
      else f.generator_index.push_back(i);
    f.divisible = Subspace::span(drows, n_);
    RationalMatrix ann = nullspace_rows(f.divisible.basis().rows() ? f.divisible.basis()
                                                                   : RationalMatrix(0, n_),
                                        n_);
    f.projection = ann.transpose();
    const std::size_t k = ann.rows();
    RationalMatrix projected(0, k);
    for (auto i : f.generator_index) projected.append_row(gens_[i].v * f.projection);
    if (f.generator_index.empty()) projected = RationalMatrix(0, k);
    LatticeBasis lb = lattice_basis(projected);
    f.lattice = std::move(lb.basis);
    f.from_generators = std::move(lb.from_gens);
    f.coords = f.projection * right_inverse(f.lattice);
    return f;
  }

  void build() {
    auto c = std::make_shared<Cache>();
    RationalMatrix vs(0, n_);
    std::set<Prime> ps;
    for (auto& g : gens_) {
      vs.append_row(g.v);
      if (!g.s.is_all()) ps.insert(g.s.primes().begin(), g.s.primes().end());
    }
    c->span = Subspace::span(vs, n_);
    c->explicit_primes.assign(ps.begin(), ps.end());
    c->generic = build_frame([](const Generator& g) { return g.s.is_all(); });
    for (Prime p : c->explicit_primes)
      c->local.emplace(p, build_frame([p](const Generator& g) { return g.s.contains(p); }));
    cache_ = std::move(c);
  }

  std::size_t n_ = 0;
  std::vector<Generator> gens_;
  std::string name_;
  std::shared_ptr<const Cache> cache_;
};

// ---------------------------------------------------------------------------
// formatting

inline std::string format_vector(const RationalVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + "]";
}

inline std::string format_tuple(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

// Compact description, e.g. `Z[3]*(1,0) + Z*(1/2,1/2)`; `0` for the zero group.
inline std::string describe(const GroupRep& g) {
  if (g.generators().empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    const auto& gen = g.generators()[i];
    if (i) s += " + ";
    s += DivisibilityType(1, gen.s).str() + "*" + format_tuple(gen.v);
  }
  return s;
}

// ---------------------------------------------------------------------------
// construction helpers

inline RationalVector make_vector(std::initializer_list<Rational> xs) {
  RationalVector v(xs);
  for (auto& q : v) q.canonicalize();
  return v;
}

inline GroupRep free_group(const std::vector<RationalVector>& basis, std::size_t n) {
  std::vector<Generator> gens;
  for (auto& v : basis) gens.push_back({v, PrimeSet{}});
  return GroupRep(n, std::move(gens));
}

inline GroupRep standard_lattice(std::size_t n) {
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n);
    e[i] = 1;
    rows.push_back(e);
  }
  return free_group(rows, n);
}

inline GroupRep scale_group(const GroupRep& g, const Rational& r) {
  if (r == 0) throw std::invalid_argument("scale_group: zero scalar");
  std::vector<Generator> gens;
  for (auto& gen : g.generators()) gens.push_back({r * gen.v, gen.s});
  return GroupRep(g.ambient(), std::move(gens));
}

// Image of G under x -> x * m (m an n x n matrix).
inline GroupRep transform_group(const GroupRep& g, const RationalMatrix& m) {
  std::vector<Generator> gens;
  for (auto& gen : g.generators()) {
    RationalVector w = gen.v * m;
    if (is_zero(w)) continue;
    gens.push_back({std::move(w), gen.s});
  }
  return GroupRep(m.cols(), std::move(gens));
}

inline GroupRep group_sum(const std::vector<GroupRep>& parts, std::size_t n) {
  std::vector<Generator> gens;
  for (auto& p : parts) {
    p.require_ambient(n, "group_sum");
    gens.insert(gens.end(), p.generators().begin(), p.generators().end());
  }
  return GroupRep(n, std::move(gens));
}

// External direct sum G (+) H inside Q^(n+m).
inline GroupRep direct_sum(const GroupRep& g, const GroupRep& h) {
  const std::size_t n = g.ambient() + h.ambient();
  std::vector<Generator> gens;
  for (auto& gen : g.generators()) {
    RationalVector v(n);
    std::copy(gen.v.begin(), gen.v.end(), v.begin());
    gens.push_back({v, gen.s});
  }
  for (auto& gen : h.generators()) {
    RationalVector v(n);
    std::copy(gen.v.begin(), gen.v.end(), v.begin() + g.ambient());
    gens.push_back({v, gen.s});
  }
  return GroupRep(n, std::move(gens));
}

// Z-span of the generator vectors, given by an HNF basis.
inline GroupRep lattice_hull(const GroupRep& g) {
  RationalMatrix vs(0, g.ambient());
  for (auto& gen : g.generators()) vs.append_row(gen.v);
  LatticeBasis lb = lattice_basis(vs);
  return free_group(lb.basis.row_vectors(), g.ambient());
}

// Explicit primes together with the primes dividing entries of the lattice
// hull's HNF basis.
inline std::vector<Prime> active_primes(const GroupRep& g) {
  std::set<Prime> ps(g.explicit_primes().begin(), g.explicit_primes().end());
  GroupRep hull = lattice_hull(g);
  for (auto& gen : hull.generators())
    for (auto& q : gen.v) {
      if (q == 0) continue;
      for (auto p : prime_divisors(Integer(q.get_num()))) ps.insert(p);
      for (auto p : prime_divisors(Integer(q.get_den()))) ps.insert(p);
    }
  return {ps.begin(), ps.end()};
}

// ---------------------------------------------------------------------------
// membership, orders and types

inline bool member(const GroupRep& g, const RationalVector& x) {
  g.require_ambient(x.size(), "member");
  if (!g.span().contains(x)) return false;
  RationalVector c = g.generic_frame().coordinates(x);
  if (strip_primes(common_denominator(c), g.explicit_primes()) != 1) return false;
  for (Prime p : g.explicit_primes()) {
    RationalVector lc = g.frame_for(p).coordinates(x);
    if (mpz_divisible_ui_p(common_denominator(lc).get_mpz_t(), p)) return false;
  }
  return true;
}

// Least k > 0 with k x in G. x must lie in span(G).
inline Integer order_modulo(const GroupRep& g, const RationalVector& x) {
  g.require_ambient(x.size(), "order_modulo");
  if (!g.span().contains(x)) throw std::invalid_argument("vector is not in the span of the group");
  Integer k = strip_primes(common_denominator(g.generic_frame().coordinates(x)),
                           g.explicit_primes());
  for (Prime p : g.explicit_primes()) {
    Integer d = common_denominator(g.frame_for(p).coordinates(x));
    k *= power(p, valuation(d, p));
  }
  return k;
}

namespace detail {

// Rational gcd of the nonzero entries (zero vector -> 0).
inline Rational rational_gcd(const RationalVector& c) {
  Integer num = 0, den = 1;
  for (auto& q : c) {
    if (q == 0) continue;
    num = gcd(num, Integer(q.get_num()));
    den = lcm(den, Integer(q.get_den()));
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace detail

// type_G(a) = {r in Q : r a in G}.
inline DivisibilityType element_type(const GroupRep& g, const RationalVector& a) {
  g.require_ambient(a.size(), "element_type");
  if (!member(g, a)) throw std::invalid_argument("element_type: vector is not in the group");
  if (is_zero(a) || g.divisible_directions_all().contains(a))
    return DivisibilityType::rationals();
  const auto& e = g.explicit_primes();
  Rational gen = detail::rational_gcd(g.generic_frame().coordinates(a));
  Rational m(strip_primes(Integer(gen.get_num()), e), strip_primes(Integer(gen.get_den()), e));
  std::vector<Prime> s;
  for (Prime p : e) {
    const LocalFrame& f = g.frame_for(p);
    if (f.divisible.contains(a)) {
      s.push_back(p);
      continue;
    }
    long v = valuation(detail::rational_gcd(f.coordinates(a)), p);
    if (v > 0) m *= Rational(power(p, v));
    else if (v < 0) m /= Rational(power(p, -v));
  }
  m.canonicalize();
  return {m, PrimeSet::of(s)};
}

// ---------------------------------------------------------------------------
// containment

enum class Comparison { Equal, LeftInRight, RightInLeft, Incomparable };

inline const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::Equal: return "Equal";
    case Comparison::LeftInRight: return "LeftInRight";
    case Comparison::RightInLeft: return "RightInLeft";
    case Comparison::Incomparable: return "Incomparable";
  }
  return "?";
}

// Is Z[S^-1] v contained in G?
inline bool contains_piece(const GroupRep& g, const Generator& piece) {
  if (!member(g, piece.v)) return false;
  if (piece.s.is_all()) return g.divisible_directions_all().contains(piece.v);
  for (Prime p : piece.s.primes())
    if (!g.divisible_directions(p).contains(piece.v)) return false;
  return true;
}

// H <= G
inline bool is_subgroup(const GroupRep& h, const GroupRep& g) {
  g.require_ambient(h.ambient(), "is_subgroup");
  for (auto& gen : h.generators())
    if (!contains_piece(g, gen)) return false;
  return true;
}

inline Comparison compare(const GroupRep& g, const GroupRep& h) {
  g.require_ambient(h.ambient(), "compare");
  bool h_in_g = is_subgroup(h, g);
  bool g_in_h = is_subgroup(g, h);
  if (h_in_g && g_in_h) return Comparison::Equal;
  if (g_in_h) return Comparison::LeftInRight;
  if (h_in_g) return Comparison::RightInLeft;
  return Comparison::Incomparable;
}

inline bool equal_groups(const GroupRep& g, const GroupRep& h) {
  return compare(g, h) == Comparison::Equal;
}

// ---------------------------------------------------------------------------
// purification

namespace detail {

// Primitive integer vector on the line spanned by x, first nonzero entry positive.
inline RationalVector primitive_direction(const RationalVector& x) {
  Rational g = rational_gcd(x);
  RationalVector y = (1 / g) * x;
  for (auto& q : y)
    if (q != 0) {
      if (q < 0) y = Rational(-1) * y;
      break;
    }
  return y;
}

// Drops generators whose piece is already contained in the group generated
// by the others.
inline GroupRep prune(const GroupRep& g) {
  std::vector<Generator> gens = g.generators();
  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<Generator> rest;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) rest.push_back(gens[j]);
    if (contains_piece(GroupRep(g.ambient(), rest), gens[i])) gens = std::move(rest);
  }
  return GroupRep(g.ambient(), std::move(gens));
}

// G-lattice part of W at one class: lifts into W of a Z-basis of
// pi(W) cap (Z-span of the frame's lattice).
inline std::vector<RationalVector> frame_lattice_lifts(const LocalFrame& f,
                                                       const Subspace& w) {
  const std::size_t k = f.projection.cols();
  const std::size_t r = f.lattice.rows();
  std::vector<RationalVector> out;
  if (r == 0 || w.dim() == 0) return out;
  RationalMatrix wproj(0, k);
  for (std::size_t i = 0; i < w.dim(); ++i) wproj.append_row(f.project(w.basis().row_vector(i)));
  Subspace pw = Subspace::span(wproj, k);
  if (pw.dim() == 0) return out;
  RationalMatrix ann = pw.annihilator();  // a x k
  IntegerMatrix z;
  if (ann.rows() == 0) {
    z = IntegerMatrix::identity(r);
  } else {
    RationalMatrix cond = f.lattice * ann.transpose();  // r x a
    z = integer_left_kernel(clear_denominators(cond).first);
  }
  for (std::size_t i = 0; i < z.rows(); ++i) {
    RationalVector y(k);
    for (std::size_t j = 0; j < r; ++j)
      if (z(i, j) != 0)
        for (std::size_t c = 0; c < k; ++c) y[c] += Rational(z(i, j)) * f.lattice(j, c);
    auto coeff = solve_left(wproj, y);
    if (!coeff) throw std::logic_error("purify: lattice vector has no lift");
    out.push_back(*coeff * w.basis());
  }
  return out;
}

}  // namespace detail

// Rank-1 pure subgroup G cap Q x, in the form Z[S^-1] * (x0 / m).
inline GroupRep pure_line(const GroupRep& g, const RationalVector& x) {
  RationalVector d = detail::primitive_direction(x);
  Integer k = order_modulo(g, d);
  RationalVector w0 = Rational(k) * d;
  DivisibilityType t = element_type(g, w0);
  if (t.primes().is_all()) return GroupRep(g.ambient(), {{d, PrimeSet::all()}});
  return GroupRep(g.ambient(), {{(1 / t.m()) * w0, t.primes()}});
}

// G cap (U cap span G): the pure subgroup of G with that span.
inline GroupRep purify(const GroupRep& g, const Subspace& u) {
  g.require_ambient(u.ambient(), "purify");
  Subspace w = subspace_intersection(u, g.span());
  const std::size_t n = g.ambient();
  if (w.dim() == 0) return GroupRep(n, {});
  if (w.dim() == 1) return pure_line(g, w.basis().row_vector(0));

  std::vector<Generator> gens;
  auto add_scaled = [&](const RationalVector& x, PrimeSet s) {
    if (is_zero(x)) return;
    RationalVector d = detail::primitive_direction(x);
    Rational scale = Rational(order_modulo(g, d));
    gens.push_back({scale * d, std::move(s)});
  };
  auto add_lattice = [&](const RationalVector& x) {
    if (is_zero(x)) return;
    gens.push_back({Rational(order_modulo(g, x)) * x, PrimeSet{}});
  };

  Subspace wall = subspace_intersection(w, g.divisible_directions_all());
  for (std::size_t i = 0; i < wall.dim(); ++i)
    gens.push_back({detail::primitive_direction(wall.basis().row_vector(i)), PrimeSet::all()});
  for (auto& x : detail::frame_lattice_lifts(g.generic_frame(), w)) add_lattice(x);
  for (Prime p : g.explicit_primes()) {
    const LocalFrame& f = g.frame_for(p);
    for (auto& x : detail::frame_lattice_lifts(f, w)) add_lattice(x);
    Subspace wp = subspace_intersection(w, f.divisible);
    for (std::size_t i = 0; i < wp.dim(); ++i) {
      RationalVector x = wp.basis().row_vector(i);
      if (wall.contains(x)) continue;
      add_scaled(x, PrimeSet::of({p}));
    }
  }
  return detail::prune(GroupRep(n, std::move(gens)));
}

inline GroupRep purify_vectors(const GroupRep& g, const std::vector<RationalVector>& vs) {
  return purify(g, Subspace::span(vs, g.ambient()));
}

// Largest p-divisible subgroup of G.
inline GroupRep divisible_part(const GroupRep& g, Prime p) {
  return purify(g, g.divisible_directions(p));
}
// Largest divisible subgroup of G.
inline GroupRep divisible_part_all(const GroupRep& g) {
  return purify(g, g.divisible_directions_all());
}

// ---------------------------------------------------------------------------
// typeset

struct TypesetEntry {
  PrimeSet primes;          // the type class Z[S^-1] (ALL for Q)
  RationalVector witness;   // element of G whose type is exactly Z[S^-1]
};

namespace detail {

inline PrimeSet subspace_class(const GroupRep& g, const Subspace& x) {
  if (g.divisible_directions_all().contains(x)) return PrimeSet::all();
  std::vector<Prime> s;
  for (Prime p : g.explicit_primes())
    if (g.divisible_directions(p).contains(x)) s.push_back(p);
  return PrimeSet::of(s);
}

// A vector of x avoiding each of the given proper subspaces of x.
inline RationalVector generic_vector(const Subspace& x, const std::vector<Subspace>& avoid) {
  const std::size_t d = x.dim();
  auto ok = [&](const RationalVector& v) {
    if (is_zero(v)) return false;
    for (auto& a : avoid)
      if (a.contains(v)) return false;
    return true;
  };
  for (std::size_t i = 0; i < d; ++i)
    if (ok(x.basis().row_vector(i))) return x.basis().row_vector(i);
  // b_0 + t b_1 + t^2 b_2 + ... avoids each proper subspace for all but finitely many t
  for (long t = 1;; ++t) {
    RationalVector v(x.ambient());
    Rational c = 1;
    for (std::size_t i = 0; i < d; ++i) {
      v = v + c * x.basis().row_vector(i);
      c *= t;
    }
    if (ok(v)) return v;
  }
}

}  // namespace detail

// The set of type classes of nonzero elements, sorted by prime set.
inline std::vector<TypesetEntry> typeset(const GroupRep& g) {
  const std::size_t n = g.ambient();
  std::vector<TypesetEntry> out;
  if (g.rank() == 0) return out;
  std::vector<Subspace> spaces{g.span()};
  std::set<std::string> seen{g.span().key()};
  auto add = [&](Subspace s) {
    if (seen.insert(s.key()).second) spaces.push_back(std::move(s));
  };
  add(subspace_intersection(g.span(), g.divisible_directions_all()));
  for (Prime p : g.explicit_primes()) add(subspace_intersection(g.span(), g.divisible_directions(p)));
  for (std::size_t i = 0; i < spaces.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(subspace_intersection(spaces[i], spaces[j]));

  std::map<PrimeSet, RationalVector> classes;
  for (auto& x : spaces) {
    if (x.dim() == 0) continue;
    PrimeSet cls = detail::subspace_class(g, x);
    if (classes.count(cls)) continue;
    std::vector<Subspace> avoid;
    if (!cls.is_all()) {
      Subspace all = subspace_intersection(x, g.divisible_directions_all());
      if (all.dim() > 0) avoid.push_back(all);
      for (Prime p : g.explicit_primes()) {
        if (cls.contains(p)) continue;
        Subspace xp = subspace_intersection(x, g.divisible_directions(p));
        if (xp.dim() > 0) avoid.push_back(xp);
      }
    }
    RationalVector a = detail::generic_vector(x, avoid);
    a = detail::primitive_direction(a);
    a = Rational(order_modulo(g, a)) * a;
    DivisibilityType t = element_type(g, a);
    if (!t.primes().is_all()) a = (1 / t.m()) * a;
    classes.emplace(cls, a);
  }
  (void)n;
  for (auto& [cls, a] : classes) out.push_back({cls, a});
  return out;
}

inline std::vector<PrimeSet> typeset_classes(const GroupRep& g) {
  std::vector<PrimeSet> out;
  for (auto& e : typeset(g)) out.push_back(e.primes);
  return out;
}

}  // namespace tfag
