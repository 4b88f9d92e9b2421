#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace tfag;
using namespace tfag::test;

// ---------------------------------------------------------------- linalg

TEST(Linalg, HermiteFormOfSmallLattice) {
  IntegerMatrix m = IntegerMatrix::from_rows({{1, 1}, {0, 2}}, 2);
  HermiteForm h = hermite_normal_form(m);
  EXPECT_EQ(h.rank, 2u);
  EXPECT_EQ(h.u * m, h.h);
  EXPECT_EQ(h.h(0, 0), 1);
  EXPECT_EQ(h.h(1, 0), 0);
  EXPECT_EQ(h.h(1, 1), 2);
}

TEST(Linalg, SmithFormInvariantFactors) {
  IntegerMatrix m = IntegerMatrix::from_rows({{1, 1}, {0, 2}}, 2);
  SmithForm s = smith_normal_form(m);
  EXPECT_EQ(s.invariant_factors, (std::vector<Integer>{1, 2}));
  EXPECT_EQ(s.u * m * s.v, s.d);

  IntegerMatrix n = IntegerMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, 3);
  EXPECT_EQ(smith_normal_form(n).invariant_factors, (std::vector<Integer>{2, 6, 12}));
}

TEST(Linalg, SmithFormEqualMagnitudePivots) {
  IntegerMatrix m = IntegerMatrix::from_rows({{3, -3, 0}, {3, 3, 0}, {0, 0, 5}}, 3);
  SmithForm s = smith_normal_form(m);
  EXPECT_EQ(s.invariant_factors, (std::vector<Integer>{1, 3, 30}));
}

TEST(Linalg, InverseAndSolve) {
  RationalMatrix m = mat({vec({2, 1}), vec({1, 1})});
  auto inv = inverse(m);
  ASSERT_TRUE(inv);
  EXPECT_EQ(m * *inv, RationalMatrix::identity(2));
  EXPECT_FALSE(inverse(mat({vec({1, 2}), vec({2, 4})})));
  auto c = solve_left(m, vec({3, 2}));
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, vec({1, 1}));
  EXPECT_EQ(determinant(m), 1);
}

TEST(Linalg, SubspaceIntersection) {
  Subspace a = Subspace::span(std::vector<RationalVector>{vec({1, 0, 0}), vec({0, 1, 0})}, 3);
  Subspace b = Subspace::span(std::vector<RationalVector>{vec({0, 1, 0}), vec({0, 0, 1})}, 3);
  Subspace c = subspace_intersection(a, b);
  EXPECT_EQ(c.dim(), 1u);
  EXPECT_TRUE(c.contains(vec({0, 5, 0})));
  EXPECT_EQ(subspace_sum(a, b).dim(), 3u);
}

TEST(Linalg, FracIsCanonical) {
  EXPECT_EQ(frac(4, 6), Rational(2, 3));
  EXPECT_EQ(frac(4, -6), Rational(-2, 3));
}

// ---------------------------------------------------------------- primes

TEST(Primes, Factoring) {
  EXPECT_TRUE(is_prime(Integer(233)));
  EXPECT_FALSE(is_prime(Integer(221)));
  EXPECT_EQ(prime_divisors(Integer(360)), (std::vector<Prime>{2, 3, 5}));
  EXPECT_EQ(prime_divisors(Integer("1000000016000000063")), (std::vector<Prime>{1000000007, 1000000009}));
  EXPECT_EQ(valuation(Rational(3, 8), 2), -3);
  EXPECT_EQ(smallest_prime_outside({2, 3, 7}), 5u);
}

TEST(Primes, PrimeSetAlgebra) {
  PrimeSet a = ps({2, 3}), b = ps({3, 5});
  EXPECT_EQ(set_union(a, b), ps({2, 3, 5}));
  EXPECT_EQ(set_intersection(a, b), ps({3}));
  EXPECT_TRUE(set_union(a, PrimeSet::all()).is_all());
  EXPECT_EQ(set_intersection(a, PrimeSet::all()), a);
  EXPECT_THROW(PrimeSet::of({4}), std::invalid_argument);
}

// ---------------------------------------------------------------- types

namespace {
DivisibilityType ty(const char* s) { return DivisibilityType::parse(s); }
}  // namespace

TEST(Types, Meet) {
  EXPECT_EQ(type_meet(ty("Z[2]"), ty("Z[3]")), ty("Z"));
  EXPECT_EQ(type_meet(ty("Z[2]"), ty("Z[2]")), ty("Z[2]"));
  EXPECT_EQ(type_meet(ty("1/2 Z"), ty("Q")), ty("1/2 Z"));
}

TEST(Types, JoinLeqEq) {
  EXPECT_EQ(type_join(ty("Z[2]"), ty("Z[3]")), ty("Z[2,3]"));
  EXPECT_TRUE(type_leq(ty("Z"), ty("Z[5]")));
  EXPECT_FALSE(type_eq(ty("1/2 Z"), ty("Z")));
  EXPECT_TRUE(type_leq(ty("Z"), ty("1/2 Z")));
  EXPECT_FALSE(type_leq(ty("1/2 Z"), ty("Z")));
}

TEST(Types, Scale) {
  EXPECT_EQ(scale_type(ty("Z"), frac(1, 2)), ty("1/2 Z"));
  EXPECT_EQ(scale_type(ty("Z[2]"), 2), ty("Z[2]"));
  EXPECT_EQ(scale_type(ty("1/3 Z[2]"), 3), ty("Z[2]"));
  EXPECT_THROW(scale_type(ty("Z"), 0), std::invalid_argument);
}

TEST(Types, ParsePrintRoundTrip) {
  for (const char* s : {"Z", "Q", "Z[2,3]", "1/3 Z[2]", "2 Z", "1/2 Z"}) EXPECT_EQ(ty(s).str(), s);
  EXPECT_TRUE(ty("Z[2]").contains(frac(7, 64)));
  EXPECT_FALSE(ty("Z[2]").contains(frac(1, 3)));
}

TEST(Types, LatticeLawsOnSamples) {
  std::vector<DivisibilityType> ts;
  for (const char* s : {"Z", "Q", "Z[2]", "Z[3]", "1/2 Z", "3 Z[5]", "1/6 Z[2,5]", "4 Z"}) ts.push_back(ty(s));
  for (auto& a : ts)
    for (auto& b : ts) {
      EXPECT_EQ(type_meet(a, type_join(a, b)), a);
      EXPECT_EQ(type_join(a, type_meet(a, b)), a);
      EXPECT_EQ(type_leq(a, b), type_meet(a, b) == a);
      for (auto& c : ts) EXPECT_EQ(type_meet(a, type_meet(b, c)), type_meet(type_meet(a, b), c));
    }
}

TEST(Types, IsomorphismIgnoresScale) {
  EXPECT_TRUE(type_isomorphic(ty("1/4 Z[3]"), ty("5 Z[3]")));
  EXPECT_FALSE(type_isomorphic(ty("Z[2]"), ty("Z[3]")));
}

// ---------------------------------------------------------------- group model

TEST(Group, Membership) {
  GroupRep a = g1();
  EXPECT_TRUE(member(a, vec({1, frac(355, 113)})));
  EXPECT_FALSE(member(a, vec({frac(1, 2), 0})));
  GroupRep b = g3();
  EXPECT_TRUE(member(b, vec({frac(1, 2), frac(1, 2)})));
  EXPECT_FALSE(member(b, vec({frac(1, 2), 0})));
  EXPECT_TRUE(member(b, vec({frac(1, 9), 0})));
}

TEST(Group, ElementTypes) {
  EXPECT_EQ(element_type(g2(), vec({1, 1})).str(), "Z[5]");
  EXPECT_EQ(element_type(g2(), vec({1, 0})).str(), "Z[2]");
  EXPECT_EQ(element_type(g1(), vec({0, 1})).str(), "Q");
  EXPECT_EQ(element_type(g3(), vec({1, 1})).str(), "1/2 Z");
  EXPECT_THROW(element_type(g3(), vec({frac(1, 2), 0})), std::invalid_argument);
}

TEST(Group, Purify) {
  GroupRep p = pure_line(g3(), vec({2, 0}));
  EXPECT_TRUE(equal_groups(p, line(2, 0, ps({3}))));
  GroupRep q = pure_line(g1(), vec({1, 1}));
  EXPECT_TRUE(equal_groups(q, GroupRep(2, {{vec({1, 1}), {}}})));
  GroupRep whole = purify(g2(), g2().span());
  EXPECT_TRUE(equal_groups(whole, g2()));
}

TEST(Group, Compare) {
  EXPECT_EQ(compare(a3(), g3()), Comparison::LeftInRight);
  EXPECT_EQ(compare(g3(), a3()), Comparison::RightInLeft);
  EXPECT_EQ(compare(g1(), g1()), Comparison::Equal);
  EXPECT_EQ(compare(line(2, 0, ps({2})), line(2, 0, ps({3}))), Comparison::Incomparable);
}

TEST(Group, TypesetOfG2) {
  std::vector<std::string> got;
  for (auto& c : typeset_classes(g2())) got.push_back(c.str());
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::string>{"{2}", "{3}", "{5}", "{}"}));
}

TEST(Group, ZeroGroup) {
  GroupRep z(3, {});
  EXPECT_EQ(z.rank(), 0u);
  EXPECT_TRUE(member(z, vec({0, 0, 0})));
  EXPECT_FALSE(member(z, vec({1, 0, 0})));
}

// ---------------------------------------------------------------- quotient

TEST(Quotient, G3OverA3IsZ2) {
  QuotientDescription q = index_and_quotient(g3(), a3());
  ASSERT_TRUE(q.finite());
  EXPECT_EQ(q.quotient().str(), "Z/2");
  EXPECT_EQ(q.map().image(vec({frac(1, 2), frac(1, 2)})), (Residues{1}));
  EXPECT_EQ(q.map().image(vec({1, 0})), (Residues{0}));
}

TEST(Quotient, InfiniteTorsionWitness) {
  QuotientDescription q = index_and_quotient(g1(), standard_lattice(2));
  ASSERT_FALSE(q.finite());
  EXPECT_TRUE(q.witness().direction == vec({0, 1}));
  QuotientDescription r = index_and_quotient(g2(), GroupRep(2, {{vec({1, 0}), ps({2})}, {vec({0, 1}), ps({3})}}));
  ASSERT_FALSE(r.finite());
  EXPECT_EQ(r.witness().prime, 5u);
}

TEST(Quotient, FreeLatticeIndex) {
  QuotientDescription q =
      index_and_quotient(standard_lattice(2), free_group({vec({2, 0}), vec({0, 3})}, 2));
  ASSERT_TRUE(q.finite());
  EXPECT_EQ(q.quotient().str(), "Z/6");
  EXPECT_THROW(index_and_quotient(a3(), g3()), std::invalid_argument);
}

// ---------------------------------------------------------------- bases

TEST(Bases, IsBasis) {
  EXPECT_TRUE(is_basis(g1(), {vec({1, 0}), vec({0, 1})}));
  EXPECT_TRUE(is_basis(g1(), {vec({1, 0}), vec({1, 1})}));
  EXPECT_FALSE(is_basis(g1(), {vec({1, 0}), vec({2, 0})}));
  EXPECT_FALSE(is_basis(g1(), {vec({frac(1, 2), 0}), vec({0, 1})}));
}

TEST(Bases, MinimalMultiplier) {
  EXPECT_EQ(minimal_multiplier(standard_lattice(2), {vec({frac(1, 2), 0}), vec({0, frac(1, 3)})}), 6);
  EXPECT_EQ(minimal_multiplier(g2(), {vec({frac(1, 4), 0}), vec({0, frac(1, 3)})}), 1);
  EXPECT_EQ(minimal_multiplier(g3(), {vec({frac(1, 4), frac(1, 4)}), vec({1, 0})}), 2);
}

TEST(Bases, BRepresentation) {
  BRepresentation r = b_representation(standard_lattice(2), {vec({1, 1}), vec({1, -1})}, vec({1, 0}));
  EXPECT_EQ(r.k, 2);
  EXPECT_EQ(r.n, (std::vector<Integer>{1, 1}));
  EXPECT_THROW(b_representation(g3(), {vec({1, 0}), vec({0, 1})}, vec({frac(1, 2), 0})), std::invalid_argument);
}

TEST(Bases, ExtendBasis) {
  GroupRep g = standard_lattice(3);
  GroupRep h = free_group({vec({1, 1, 0})}, 3);
  Basis b = extend_basis(g, h, {vec({1, 1, 0})});
  EXPECT_TRUE(is_basis(g, b));
  EXPECT_EQ(b.front(), vec({1, 1, 0}));
}

TEST(Bases, PureHullSumOfG3) {
  DecompositionRecord d = pure_hull_sum(g3(), {vec({1, 0}), vec({0, 1})});
  ASSERT_EQ(d.summands.size(), 2u);
  EXPECT_TRUE(equal_groups(d.sum(2), a3()));
}

// ---------------------------------------------------------------- io

TEST(Io, RoundTrip) {
  for (const GroupRep& g : {g1(), g2(), g3()}) {
    GroupRep back = parse_group(print_group(g));
    EXPECT_EQ(print_group(back), print_group(g));
    EXPECT_TRUE(equal_groups(back, g));
  }
}

TEST(Io, MultipleGroupsAndComments) {
  auto gs = parse_groups("# two groups\ngroup A ambient 1\ngen [1] inv {2} # trailing\n\ngroup B ambient 2\n");
  ASSERT_EQ(gs.size(), 2u);
  EXPECT_EQ(gs[0].name(), "A");
  EXPECT_EQ(gs[1].rank(), 0u);
}

TEST(Io, ErrorsCarryPosition) {
  try {
    parse_group("group G ambient 2\ngen [1, 0] inv {4}\n");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 17u);
    EXPECT_EQ(std::string(e.what()), "2:17: 4 is not prime");
  }
  EXPECT_THROW(parse_group("group G ambient 2\ngen [1] inv {}\n"), parse_error);
  EXPECT_THROW(parse_group("gen [1] inv {}\n"), parse_error);
  EXPECT_THROW(parse_group("group G ambient 1\ngen [1/0] inv {}\n"), parse_error);
}

TEST(Io, ArgumentSyntaxes) {
  EXPECT_EQ(parse_vector("(1/2, -3)"), vec({frac(1, 2), -3}));
  EXPECT_EQ(parse_vector_list("(1,0);(0,1)").size(), 2u);
  EXPECT_EQ(parse_partition("1,3|2"), (Partition{{0, 2}, {1}}));
  EXPECT_EQ(format_matrix(parse_matrix("[[0,1],[1,0]]")), "[[0, 1], [1, 0]]");
  EXPECT_EQ(parse_residues("(1,0);(0,3)")[1], (std::vector<Integer>{0, 3}));
  EXPECT_THROW(parse_partition("0|1"), parse_error);
}
