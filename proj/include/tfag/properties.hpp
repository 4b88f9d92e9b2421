#pragma once

// Property checks over corpus groups. Shared by the unit tests, the
// acceptance runner and `tfag verify`.

#include "tfag/corpus.hpp"
#include "tfag/io.hpp"
#include "tfag/jonsson.hpp"
#include "tfag/oracle.hpp"
#include "tfag/strong_indec.hpp"

namespace tfag {

struct PropertyTally {
  std::string name;
  std::size_t checks = 0;
  std::size_t unknown = 0;  // scope-limited outcomes, neither pass nor fail
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 20) failures.push_back(what);
    else if (!ok) failures.push_back("");
  }
  bool ok() const { return failures.empty(); }
  void merge(const PropertyTally& o) {
    checks += o.checks;
    unknown += o.unknown;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  }
};

inline std::string context(const GroupRep& g) { return g.name() + " = " + describe(g); }

// ---------------------------------------------------------------------------
// oracle agreement

inline bool oracle_member_agrees(const GroupRep& g, const RationalVector& x, unsigned bound) {
  bool fast = member(g, x);
  bool slow = brute_force_member(g, x, bound);
  // a truncation can miss a member whose coefficients need deeper denominators
  if (fast && !slow) slow = brute_force_member(g, x, 2 * bound);
  return fast == slow;
}

inline bool oracle_purify_agrees(const GroupRep& g, const RationalVector& u, unsigned bound) {
  GroupRep fast = pure_line(g, u);
  for (unsigned b : {bound, 2 * bound}) {
    OraclePure slow = brute_force_purify(g, u, b);
    GroupRep sg = is_zero(slow.generator) ? GroupRep(g.ambient(), {})
                                          : GroupRep(g.ambient(), {{slow.generator, slow.primes}});
    if (equal_groups(fast, sg)) return true;
  }
  return false;
}

inline void check_oracle_agreement(const CorpusGroup& cg, std::uint64_t seed, std::size_t member_queries,
                                   std::size_t purify_queries, unsigned bound, PropertyTally& t) {
  const GroupRep& g = cg.group;
  CorpusRng rng(seed);
  for (std::size_t i = 0; i < member_queries; ++i) {
    RationalVector x;
    switch (i % 3) {
      case 0: x = random_element(g, rng); break;
      case 1: x = random_query(g.ambient(), rng); break;
      default: {
        x = random_element(g, rng);
        x = Rational(1, static_cast<unsigned long>(rng.pick(std::vector<Prime>{2, 3, 5}))) * x;
      }
    }
    t.expect(oracle_member_agrees(g, x, bound), "member " + format_vector(x) + " in " + context(g));
  }
  for (std::size_t i = 0; i < purify_queries; ++i) {
    RationalVector u = i % 2 ? random_query(g.ambient(), rng) : random_element(g, rng);
    if (is_zero(u)) u = g.generators().empty() ? RationalVector(g.ambient(), Rational(1)) : g.generators()[0].v;
    if (is_zero(u)) continue;
    t.expect(oracle_purify_agrees(g, u, bound), "purify " + format_vector(u) + " in " + context(g));
  }
}

// ---------------------------------------------------------------------------
// bases

inline void check_basis_laws(const GroupRep& g, const Basis& b, CorpusRng& rng, PropertyTally& t) {
  const std::size_t n = g.ambient();
  std::string where = " for basis of " + context(g);
  t.expect(is_basis(g, b), "sampled basis rejected" + where);
  t.expect(Subspace::span(b, n) == g.span(), "[B] != [G]" + where);
  t.expect(equal_groups(purify(g, Subspace::span(b, n)), g), "B_* != G" + where);
  GroupRep free = free_group(b, n);
  t.expect(free.rank() == g.rank() && is_subgroup(free, g), "<B> is not a full free subgroup" + where);
  try {
    index_and_quotient(g, free);
    t.expect(true, "");
  } catch (const std::exception& e) {
    t.expect(false, std::string("G/<B> not torsion: ") + e.what() + where);
  }

  // minimal multiplier of a rescaled vector-space basis
  Basis scaled;
  for (auto& v : b) scaled.push_back(Rational(1, static_cast<unsigned long>(rng.range(1, 6))) * v);
  Integer m = minimal_multiplier(g, scaled);
  bool in = true;
  for (auto& v : scaled) in = in && member(g, Rational(m) * v);
  t.expect(in, "mB not in G" + where);
  for (Prime p : prime_divisors(m)) {
    bool all_in = true;
    for (auto& v : scaled) all_in = all_in && member(g, frac(m, Integer(static_cast<unsigned long>(p))) * v);
    t.expect(!all_in, "minimal multiplier not minimal at " + std::to_string(p) + where);
  }

  // B-representation: reconstruction, gcd and independence of order
  RationalVector a = random_element(g, rng);
  BRepresentation rep = b_representation(g, b, a);
  RationalVector back(n);
  for (std::size_t i = 0; i < b.size(); ++i) back = back + frac(rep.n[i], rep.k) * b[i];
  Integer gg = rep.k;
  for (auto& x : rep.n) gg = gcd(gg, x);
  t.expect(back == a && gg == 1 && rep.k > 0, "B-representation invalid" + where);
  Basis rev(b.rbegin(), b.rend());
  BRepresentation rrep = b_representation(g, rev, a);
  std::vector<Integer> rn(rrep.n.rbegin(), rrep.n.rend());
  t.expect(rrep.k == rep.k && rn == rep.n, "B-representation depends on order" + where);
}

// ---------------------------------------------------------------------------
// automorphisms

inline void check_automorphism_laws(const GroupRep& g, const RationalMatrix& alpha, CorpusRng& rng,
                                    PropertyTally& t) {
  std::string where = " under " + format_matrix(alpha) + " of " + context(g);
  RationalVector u = random_element(g, rng);
  if (!is_zero(u)) {
    GroupRep lhs = transform_group(pure_line(g, u), alpha);
    GroupRep rhs = pure_line(g, u * alpha);
    t.expect(equal_groups(lhs, rhs), "S_* alpha != (S alpha)_*" + where);
    t.expect(element_type(g, u) == element_type(g, u * alpha), "type not preserved" + where);
  }
  auto b = random_basis(g, rng);
  if (!b) return;
  Basis moved;
  for (auto& v : *b) moved.push_back(v * alpha);
  t.expect(is_basis(g, moved), "basis image is not a basis" + where);
  if (b->size() <= 4)
    for (auto& p : set_partitions(b->size(), 2))
      t.expect(partition_splits(g, *b, p) == partition_splits(g, moved, p),
               "splitting of " + format_partition(p) + " not transported" + where);
}

inline void check_decomposition_isomorphisms(const GroupRep& g, const DecompositionSearch& ds, PropertyTally& t) {
  for (std::size_t i = 0; i < ds.found.size(); ++i)
    for (std::size_t j = i + 1; j < ds.found.size(); ++j) {
      auto& d1 = ds.found[i].decomposition;
      auto& d2 = ds.found[j].decomposition;
      IsoResult r = decompositions_isomorphic(g, d1, d2);
      if (r.verdict == IsoVerdict::Unknown) {
        ++t.unknown;
        continue;
      }
      if (r.verdict == IsoVerdict::No) {
        // No comes from an invariant mismatch
        auto s1 = signatures(d1), s2 = signatures(d2);
        t.expect(d1.summands.size() != d2.summands.size() || s1 != s2, "No verdict without invariant mismatch in " + context(g));
        continue;
      }
      AssembledAutomorphism aa = automorphism_from_summand_isos(g, r);
      bool onto = aa.verified;
      for (std::size_t k = 0; k < d1.summands.size() && onto; ++k)
        onto = equal_groups(transform_group(d1.summands[k], aa.matrix), d2.summands[r.pairing[k]]);
      t.expect(onto, "Yes verdict without an assembled automorphism in " + context(g));
    }
}

// ---------------------------------------------------------------------------
// quasi-equality

inline void check_quasi_pair(const GroupRep& h, const GroupRep& g, PropertyTally& t) {
  auto s = quasi_equal_strict(h, g);
  if (s) t.expect(commensurable(h, g).has_value(), "strict quasi-equality without commensurability: " + context(h) + " vs " + context(g));
}

// Pure subgroups that are commensurable coincide.
inline void check_pure_quasi_equal(const GroupRep& g, CorpusRng& rng, PropertyTally& t) {
  RationalVector u = random_element(g, rng);
  if (is_zero(u)) return;
  GroupRep a = pure_line(g, u);
  long k = rng.range(2, 6);
  GroupRep b = purify_vectors(g, {Rational(k) * u});
  t.expect(commensurable(a, b).has_value() && equal_groups(a, b), "purified quasi-equal pair differs in " + context(g));
  if (g.rank() >= 2) {
    auto basis = random_basis(g, rng);
    if (!basis) return;
    Basis two{(*basis)[0], (*basis)[1]};
    GroupRep c = purify(g, Subspace::span(two, g.ambient()));
    Basis twice{Rational(k) * (*basis)[0], (*basis)[0] + Rational(k) * (*basis)[1]};
    GroupRep d = purify(g, Subspace::span(twice, g.ambient()));
    t.expect(equal_groups(c, d), "purified quasi-equal pair differs in " + context(g));
  }
}

// ---------------------------------------------------------------------------
// Jonsson bases

inline bool same_invariants(const JonssonBasis& a, const JonssonBasis& b) {
  return a.summands.size() == b.summands.size() && a.signatures() == b.signatures();
}

inline void check_jonsson_invariants(const GroupRep& g, const RegulatingResult& rr, PropertyTally& t) {
  for (std::size_t i = 1; i < rr.found.size(); ++i)
    t.expect(same_invariants(rr.found[0], rr.found[i]), "Jonsson invariants differ in " + context(g));
}

inline std::size_t bucket_count(const GroupRep& g, unsigned height) {
  SearchOptions opt;
  opt.height = height;
  DecompositionSearch ds = complete_decomposition_search(g, {}, opt);
  std::vector<GroupRep> all;
  for (auto& f : ds.found)
    for (auto& s : f.decomposition.summands) all.push_back(s);
  return bucket_summands(all).size();
}

// ---------------------------------------------------------------------------
// strong indecomposability

inline void check_si_soundness(const GroupRep& g, const SearchOptions& opt, PropertyTally& t) {
  if (g.rank() != 2) return;
  bool cert = typeset_obstruction_certificate(g).has_value();
  if (!cert) return;
  bool witness = strong_decomposability_witness_search(g, opt).witness.has_value();
  t.expect(!witness, "certificate and witness both hold for " + context(g));
}

}  // namespace tfag
