#pragma once

// Brute-force reference implementations for small instances. They use only
// truncation and enumeration, not the local frames behind member/purify.
//
// With exponent bound b, each piece Z[S^-1] v is truncated to Z * v / d where
// d is the product of p^b over the primes of S in the universe (for S = ALL,
// over the whole universe). Truncations grow with b and exhaust G, so a
// positive answer is always a proof of membership.

#include "tfag/group.hpp"

namespace tfag {

struct OracleOptions {
  std::size_t max_steps = 1000000;  // coset enumeration budget before the lattice fallback
};

// Primes considered by the oracle: 2, 3, 5, the primes of the group's
// descriptions and lattice hull, the primes of the queried vector, and the
// primes dividing maximal minors of the generator vectors stacked with the
// query (Cramer's rule puts every solution denominator among those).
inline std::vector<Prime> oracle_universe(const GroupRep& g, const RationalVector& x) {
  std::set<Prime> ps{2, 3, 5};
  for (auto p : active_primes(g)) ps.insert(p);
  RationalMatrix rows(0, g.ambient());
  auto note = [&](const RationalVector& v) {
    for (auto& q : v) {
      if (q == 0) continue;
      for (auto p : prime_divisors(Integer(q.get_num()))) ps.insert(p);
      for (auto p : prime_divisors(Integer(q.get_den()))) ps.insert(p);
    }
    if (!is_zero(v)) rows.append_row(Rational(common_denominator(v)) * v);
  };
  for (auto& gen : g.generators()) note(gen.v);
  note(x);
  const std::size_t r = rank(rows);
  if (r == 0) return {ps.begin(), ps.end()};
  std::vector<std::vector<std::size_t>> row_sets, col_sets;
  auto subsets = [](std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (cur.size() == k) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  };
  subsets(rows.rows(), r, row_sets);
  subsets(rows.cols(), r, col_sets);
  for (auto& rs : row_sets)
    for (auto& cs : col_sets) {
      RationalMatrix m(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) m(i, j) = rows(rs[i], cs[j]);
      Rational det = determinant(m);
      if (det == 0) continue;
      for (auto p : prime_divisors(Integer(det.get_num()))) ps.insert(p);
    }
  return {ps.begin(), ps.end()};
}

namespace detail {

inline std::vector<RationalVector> truncated_generators(const GroupRep& g, const std::vector<Prime>& universe,
                                                        unsigned bound, std::vector<Integer>* dmax = nullptr) {
  std::vector<RationalVector> w;
  for (auto& gen : g.generators()) {
    Integer d = 1;
    for (Prime p : universe)
      if (gen.s.contains(p)) d *= power(p, bound);
    w.push_back(Rational(1, 1) / Rational(d) * gen.v);
    if (dmax) dmax->push_back(d);
  }
  return w;
}

// x in the Z-span of the rows of w, via a Hermite basis.
inline bool lattice_contains(const std::vector<RationalVector>& w, const RationalVector& x, std::size_t n) {
  RationalMatrix m(0, n);
  for (auto& v : w) m.append_row(v);
  LatticeBasis lb = lattice_basis(m);
  auto c = solve_left(lb.basis, x);
  if (!c) return false;
  for (auto& q : *c)
    if (q.get_den() != 1) return false;
  return true;
}

}  // namespace detail

// x in G, decided inside the truncation at the given exponent bound:
// x = sum_i c_i w_i with integers c_i. An independent subset I of the w_i
// (most divisible first) fixes c_I once the coefficients t_j of the others are
// chosen, and t_j only matters modulo the order of w_j over Z w_I, so the
// finitely many residue tuples are enumerated.
inline bool brute_force_member(const GroupRep& g, const RationalVector& x, unsigned bound,
                               const OracleOptions& opt = {}) {
  g.require_ambient(x.size(), "brute_force_member");
  const std::size_t n = g.ambient();
  if (is_zero(x)) return true;
  if (g.generators().empty()) return false;
  std::vector<Prime> universe = oracle_universe(g, x);
  std::vector<Integer> dmax;
  std::vector<RationalVector> w = detail::truncated_generators(g, universe, bound, &dmax);

  std::vector<std::size_t> order(w.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    bool aa = g.generators()[a].s.is_all(), ba = g.generators()[b].s.is_all();
    if (aa != ba) return aa;
    return dmax[a] > dmax[b];
  });
  std::vector<std::size_t> indep, dep;
  RationalMatrix wi(0, n);
  for (auto i : order) {
    RationalMatrix trial = wi;
    trial.append_row(w[i]);
    if (rank(trial) == trial.rows()) {
      wi = std::move(trial);
      indep.push_back(i);
    } else {
      dep.push_back(i);
    }
  }
  auto c0 = solve_left(wi, x);
  if (!c0) return false;

  std::vector<RationalVector> a;
  std::vector<Integer> ord;
  Integer steps = 1;
  for (auto j : dep) {
    auto aj = solve_left(wi, w[j]);
    a.push_back(*aj);
    ord.push_back(common_denominator(*aj));
    steps *= ord.back();
  }
  if (steps > opt.max_steps) return detail::lattice_contains(w, x, n);

  // integer residues of D * c modulo D, stepped like an odometer
  Integer d = common_denominator(*c0);
  for (auto& aj : a) d = lcm(d, common_denominator(aj));
  const std::size_t r = indep.size();
  auto scaled = [&](const RationalVector& v) {
    std::vector<Integer> out(r);
    for (std::size_t i = 0; i < r; ++i) {
      Rational q = v[i] * Rational(d);
      out[i] = q.get_num();
      mpz_mod(out[i].get_mpz_t(), out[i].get_mpz_t(), d.get_mpz_t());
    }
    return out;
  };
  std::vector<Integer> c = scaled(*c0);
  std::vector<std::vector<Integer>> step;
  for (auto& aj : a) step.push_back(scaled(aj));
  std::vector<Integer> t(dep.size(), 0);
  auto integral = [&] {
    for (auto& v : c)
      if (v != 0) return false;
    return true;
  };
  for (;;) {
    if (integral()) return true;
    std::size_t k = 0;
    for (; k < t.size(); ++k) {
      // c <- c - a_k (mod d); wrapping t_k adds ord_k * a_k back, which is 0 mod d
      for (std::size_t i = 0; i < r; ++i) {
        c[i] -= step[k][i];
        mpz_mod(c[i].get_mpz_t(), c[i].get_mpz_t(), d.get_mpz_t());
      }
      if (++t[k] < ord[k]) break;
      t[k] = 0;
    }
    if (k == t.size()) return false;
  }
}

// The pure subgroup on the line through u, found by height probing with
// brute_force_member. For each universe prime p the p-height of the
// primitive direction d is the largest h <= bound with n_p d / p^h in G, where
// n_p clears the other universe primes; reaching the bound means infinite
// height. A fresh prime outside the universe with infinite height means the
// line is divisible. Membership is decided in the truncation at twice the
// bound, since generator vectors may already carry powers of p.
struct OraclePure {
  RationalVector generator;
  PrimeSet primes;
};

inline OraclePure brute_force_purify(const GroupRep& g, const RationalVector& u, unsigned bound,
                                     const OracleOptions& opt = {}) {
  g.require_ambient(u.size(), "brute_force_purify");
  if (is_zero(u)) throw std::invalid_argument("brute_force_purify: zero direction");
  const unsigned deep = 2 * bound;
  RationalVector d = detail::primitive_direction(u);
  std::vector<Prime> universe = oracle_universe(g, d);
  Integer all = 1;
  for (Prime p : universe) all *= power(p, bound);
  // not in span: the pure subgroup is zero
  if (!brute_force_member(g, Rational(all) * d, deep, opt)) {
    bool in_span = false;
    for (unsigned b = bound + 1; b <= 2 * bound && !in_span; ++b) {
      Integer a2 = 1;
      for (Prime p : universe) a2 *= power(p, b);
      in_span = brute_force_member(g, Rational(a2) * d, 2 * b, opt);
    }
    if (!in_span) return {RationalVector(g.ambient()), PrimeSet{}};
  }
  Prime fresh = smallest_prime_outside(universe);
  if (brute_force_member(g, Rational(all, 1) / Rational(power(fresh, bound)) * d, deep, opt))
    return {d, PrimeSet::all()};
  Rational m = 1;
  std::vector<Prime> s;
  for (Prime p : universe) {
    Integer others = all / power(p, bound);
    // membership of n_p d / p^k is monotone in k, so bisect on [-bound, bound]
    auto probe = [&](long k) {
      Rational scale = Rational(others);
      if (k >= 0) scale /= Rational(power(p, k));
      else scale *= Rational(power(p, -k));
      return brute_force_member(g, scale * d, deep, opt);
    };
    long lo = -static_cast<long>(bound) - 1, hi = static_cast<long>(bound);
    if (probe(hi)) lo = hi;
    while (hi - lo > 1) {
      long mid = lo + (hi - lo) / 2;
      if (probe(mid)) lo = mid;
      else hi = mid;
    }
    long h = std::max(lo, -static_cast<long>(bound));
    if (h == static_cast<long>(bound)) {
      s.push_back(p);
      continue;
    }
    if (h > 0) m *= Rational(power(p, h));
    else if (h < 0) m /= Rational(power(p, -h));
  }
  return {Rational(1) / m * d, PrimeSet::of(s)};
}

}  // namespace tfag
