#pragma once

// Torsion quotients G/A for A <= G of full span, and finite abelian groups
// presented by invariant factors.

#include "tfag/group.hpp"

#include <functional>
#include <numeric>
#include <optional>
#include <variant>

namespace tfag {

using Residues = std::vector<Integer>;

// Z/d_1 x ... x Z/d_k with d_i >= 2 and d_i | d_{i+1}.
struct FiniteQuotient {
  std::vector<Integer> invariant_factors;
  std::vector<Residues> generator_images;  // one per generator of G

  Integer order() const {
    Integer o = 1;
    for (auto& d : invariant_factors) o *= d;
    return o;
  }
  Integer exponent() const {
    return invariant_factors.empty() ? Integer(1) : invariant_factors.back();
  }
  bool trivial() const { return invariant_factors.empty(); }

  Residues reduce(Residues r) const {
    for (std::size_t i = 0; i < r.size(); ++i) mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), invariant_factors[i].get_mpz_t());
    return r;
  }

  // `Z/2 x Z/6`, `0` when trivial
  std::string str() const {
    if (invariant_factors.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
      if (i) s += " x ";
      s += "Z/" + invariant_factors[i].get_str();
    }
    return s;
  }
};

struct InfiniteTorsion {
  Prime prime;
  RationalVector direction;  // divisible by all powers of prime in G, not in A
};

// Full data for a finite quotient: presentation plus the map from G to it.
class QuotientMap {
public:
  QuotientMap() = default;
  QuotientMap(GroupRep g, GroupRep a, RationalMatrix hull_basis, RationalMatrix hull_inverse,
              IntegerMatrix v, std::vector<std::size_t> kept, std::vector<Integer> all_factors,
              FiniteQuotient q)
      : g_(std::move(g)), a_(std::move(a)), hull_(std::move(hull_basis)),
        hull_inv_(std::move(hull_inverse)), v_(std::move(v)), kept_(std::move(kept)),
        all_factors_(std::move(all_factors)), q_(std::move(q)) {}

  const FiniteQuotient& quotient() const { return q_; }
  const GroupRep& group() const { return g_; }
  const GroupRep& subgroup() const { return a_; }

  // Image of x in G/A (x must be in G).
  Residues image(const RationalVector& x) const {
    if (!member(g_, x)) throw std::invalid_argument("quotient image: vector is not in the group");
    return image_of_hull(lift_to_hull(x));
  }

  // Elements of G mapping to the standard generators of G/A.
  std::vector<RationalVector> generator_lifts() const {
    std::vector<RationalVector> out;
    if (kept_.empty()) return out;
    auto vinv = inverse(to_rational(v_));
    for (std::size_t idx : kept_) {
      RationalVector e(v_.rows());
      e[idx] = 1;
      out.push_back((e * *vinv) * hull_);
    }
    return out;
  }

private:
  Residues image_of_hull(const RationalVector& y) const {
    RationalVector z = y * hull_inv_;
    IntegerVector zi(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z[i].get_den() != 1) throw std::logic_error("quotient image: not in lattice hull");
      zi[i] = z[i].get_num();
    }
    Residues out;
    for (std::size_t idx : kept_) {
      Integer s = 0;
      for (std::size_t i = 0; i < zi.size(); ++i) s += zi[i] * v_(i, idx);
      mpz_mod(s.get_mpz_t(), s.get_mpz_t(), all_factors_[idx].get_mpz_t());
      out.push_back(s);
    }
    return out;
  }

  // An element y of the lattice hull with y - x in A.
  RationalVector lift_to_hull(const RationalVector& x) const {
    const Integer e = q_.exponent();
    const std::size_t n = g_.ambient();
    if (e == 1) return RationalVector(n);
    RationalVector y(n);
    for (auto [p, k] : factor(e)) {
      Integer pk = power(p, k);
      Integer rest = e / pk;
      // eps = 1 mod p^k, 0 mod rest
      Integer inv;
      mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), pk.get_mpz_t());
      Integer eps = rest * inv;
      const LocalFrame& f = g_.frame_for(p);
      RationalVector c = f.coordinates(x);
      std::vector<Integer> coeff(g_.generators().size());
      for (std::size_t j = 0; j < f.generator_index.size(); ++j) {
        Rational a = 0;
        for (std::size_t i = 0; i < c.size(); ++i) a += c[i] * Rational(f.from_generators(i, j));
        Integer num = a.get_num(), den = a.get_den();
        Integer dinv;
        if (!mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t()))
          throw std::logic_error("quotient image: coordinate not p-integral");
        Integer r = num * dinv;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pk.get_mpz_t());
        coeff[f.generator_index[j]] = r;
      }
      for (std::size_t j = 0; j < coeff.size(); ++j)
        if (coeff[j] != 0) y = y + Rational(coeff[j] * eps) * g_.generators()[j].v;
    }
    return y;
  }

  GroupRep g_, a_;
  RationalMatrix hull_, hull_inv_;
  IntegerMatrix v_;
  std::vector<std::size_t> kept_;
  std::vector<Integer> all_factors_;
  FiniteQuotient q_;
};

struct QuotientDescription {
  std::variant<QuotientMap, InfiniteTorsion> value;

  bool finite() const { return std::holds_alternative<QuotientMap>(value); }
  const QuotientMap& map() const { return std::get<QuotientMap>(value); }
  const FiniteQuotient& quotient() const { return map().quotient(); }
  const InfiniteTorsion& witness() const { return std::get<InfiniteTorsion>(value); }

  std::string str() const {
    if (finite()) return quotient().str();
    const auto& w = witness();
    return "infinite " + std::to_string(w.prime) + "-torsion along " + format_tuple(w.direction);
  }
};

// Classes at which G and A must have equal divisible parts: the explicit
// primes of either group plus one representative prime outside them.
inline std::vector<Prime> comparison_primes(const GroupRep& g, const GroupRep& a) {
  std::set<Prime> ps(g.explicit_primes().begin(), g.explicit_primes().end());
  ps.insert(a.explicit_primes().begin(), a.explicit_primes().end());
  std::vector<Prime> v(ps.begin(), ps.end());
  v.push_back(smallest_prime_outside(v));
  std::sort(v.begin(), v.end());
  return v;
}

// Finite or infinite torsion quotient G/A.
inline QuotientDescription index_and_quotient(const GroupRep& g, const GroupRep& a) {
  g.require_ambient(a.ambient(), "index_and_quotient");
  if (!(a.span() == g.span()))
    throw std::invalid_argument("index_and_quotient: subgroup does not have full span");
  if (!is_subgroup(a, g)) throw std::invalid_argument("index_and_quotient: not a subgroup");

  for (Prime p : comparison_primes(g, a)) {
    const Subspace& dg = g.divisible_directions(p);
    const Subspace& da = a.divisible_directions(p);
    if (dg == da) continue;
    for (std::size_t i = 0; i < dg.dim(); ++i) {
      RationalVector d = dg.basis().row_vector(i);
      if (!da.contains(d)) {
        d = detail::primitive_direction(d);
        return {InfiniteTorsion{p, Rational(order_modulo(g, d)) * d}};
      }
    }
  }

  const std::size_t n = g.ambient();
  RationalMatrix vs(0, n);
  for (auto& gen : g.generators()) vs.append_row(gen.v);
  LatticeBasis hull = lattice_basis(vs);
  const std::size_t r = hull.basis.rows();
  RationalMatrix hull_inv = right_inverse(hull.basis);

  // L cap A = {z : z * hull in A}, as congruences z * K_c = 0 mod mu_c
  std::vector<std::pair<IntegerMatrix, Integer>> conditions;
  auto add_condition = [&](const LocalFrame& f, const std::function<Integer(const Integer&)>& part) {
    RationalMatrix k = hull.basis * f.coords;
    if (k.cols() == 0) return;
    auto [ki, den] = clear_denominators(k);
    Integer mu = part(den);
    if (mu != 1) conditions.emplace_back(std::move(ki), mu);
  };
  add_condition(a.generic_frame(),
                [&](const Integer& d) { return strip_primes(d, a.explicit_primes()); });
  for (Prime p : a.explicit_primes())
    add_condition(a.frame_for(p), [p](const Integer& d) { return prime_part(d, p); });

  IntegerMatrix nbasis;
  if (conditions.empty()) {
    nbasis = IntegerMatrix::identity(r);
  } else {
    Integer mu = 1;
    std::size_t cols = 0;
    for (auto& [k, m] : conditions) {
      mu = lcm(mu, m);
      cols += k.cols();
    }
    IntegerMatrix sys(r + cols, cols);
    std::size_t c0 = 0;
    for (auto& [k, m] : conditions) {
      Integer f = mu / m;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) sys(i, c0 + j) = k(i, j) * f;
      c0 += k.cols();
    }
    for (std::size_t j = 0; j < cols; ++j) sys(r + j, j) = mu;
    IntegerMatrix ker = integer_left_kernel(sys);
    IntegerMatrix z(ker.rows(), r);
    for (std::size_t i = 0; i < ker.rows(); ++i)
      for (std::size_t j = 0; j < r; ++j) z(i, j) = ker(i, j);
    HermiteForm hf = hermite_normal_form(z);
    nbasis = IntegerMatrix(hf.rank, r);
    for (std::size_t i = 0; i < hf.rank; ++i)
      for (std::size_t j = 0; j < r; ++j) nbasis(i, j) = hf.h(i, j);
  }
  if (nbasis.rows() != r) throw std::logic_error("index_and_quotient: intersection lattice lost rank");

  SmithForm sf = smith_normal_form(nbasis);
  std::vector<std::size_t> kept;
  FiniteQuotient q;
  for (std::size_t i = 0; i < sf.invariant_factors.size(); ++i)
    if (sf.invariant_factors[i] != 1) {
      kept.push_back(i);
      q.invariant_factors.push_back(sf.invariant_factors[i]);
    }
  QuotientMap qm(g, a, hull.basis, hull_inv, sf.v, kept, sf.invariant_factors, q);
  FiniteQuotient full = q;
  for (auto& gen : g.generators()) full.generator_images.push_back(qm.image(gen.v));
  return {QuotientMap(g, a, hull.basis, hull_inv, sf.v, kept, sf.invariant_factors, full)};
}

// ---------------------------------------------------------------------------
// subgroups of a finite quotient, given by generating residue tuples

class QuotientSubgroup {
public:
  QuotientSubgroup(const FiniteQuotient& q, std::vector<Residues> gens)
      : factors_(q.invariant_factors) {
    const std::size_t k = factors_.size();
    IntegerMatrix m(0, k);
    for (auto& g : gens) {
      if (g.size() != k) throw std::invalid_argument("quotient element has wrong length");
      m.append_row(g);
    }
    for (std::size_t i = 0; i < k; ++i) {
      IntegerVector row(k);
      row[i] = factors_[i];
      m.append_row(row);
    }
    HermiteForm hf = hermite_normal_form(m);
    basis_ = IntegerMatrix(hf.rank, k);
    for (std::size_t i = 0; i < hf.rank; ++i)
      for (std::size_t j = 0; j < k; ++j) basis_(i, j) = hf.h(i, j);
    gens_ = std::move(gens);
  }

  // |subgroup| = |Z^k / diag(d)| / |Z^k / lattice|
  Integer order() const {
    Integer full = 1;
    for (auto& d : factors_) full *= d;
    Integer idx = 1;
    for (std::size_t i = 0; i < basis_.rows(); ++i) idx *= basis_(i, i);
    return full / idx;
  }

  bool contains(const Residues& x) const {
    auto c = solve_left(to_rational(basis_), [&] {
      RationalVector v;
      for (auto& e : x) v.push_back(Rational(e));
      return v;
    }());
    if (!c) return false;
    for (auto& q : *c)
      if (q.get_den() != 1) return false;
    return true;
  }

  bool contains(const QuotientSubgroup& o) const {
    for (std::size_t i = 0; i < o.basis_.rows(); ++i)
      if (!contains(o.basis_.row_vector(i))) return false;
    return true;
  }

  const std::vector<Residues>& generators() const { return gens_; }
  const IntegerMatrix& lattice() const { return basis_; }
  const std::vector<Integer>& factors() const { return factors_; }

  friend bool operator==(const QuotientSubgroup& a, const QuotientSubgroup& b) {
    return a.basis_ == b.basis_;
  }

private:
  std::vector<Integer> factors_;
  IntegerMatrix basis_;  // HNF of generators plus diag(d)
  std::vector<Residues> gens_;
};

inline QuotientSubgroup quotient_subgroup_sum(const QuotientSubgroup& u, const QuotientSubgroup& w,
                                              const FiniteQuotient& q) {
  std::vector<Residues> gens = u.generators();
  gens.insert(gens.end(), w.generators().begin(), w.generators().end());
  return QuotientSubgroup(q, gens);
}

// U (+) W = Q ?
inline bool is_internal_direct_sum(const QuotientSubgroup& u, const QuotientSubgroup& w,
                                   const FiniteQuotient& q) {
  if (u.order() * w.order() != q.order()) return false;
  return quotient_subgroup_sum(u, w, q).order() == q.order();
}

}  // namespace tfag
