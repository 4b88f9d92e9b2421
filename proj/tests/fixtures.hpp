#pragma once

#include "tfag/tfag.hpp"

namespace tfag::test {

inline GroupRep group_of(const char* text) { return parse_group(text); }

// Z (+) Q
inline GroupRep g1() { return group_of("group G1 ambient 2\ngen [1,0] inv {}\ngen [0,1] inv ALL\n"); }

inline GroupRep g2() {
  return group_of("group G2 ambient 2\ngen [1,0] inv {2}\ngen [0,1] inv {3}\ngen [1,1] inv {5}\n");
}

inline GroupRep g3() {
  return group_of("group G3 ambient 2\ngen [1,0] inv {3}\ngen [0,1] inv {5}\ngen [1/2,1/2] inv {}\n");
}

inline GroupRep a3() { return group_of("group A3 ambient 2\ngen [1,0] inv {3}\ngen [0,1] inv {5}\n"); }

inline GroupRep line(std::size_t n, std::size_t i, PrimeSet s, Rational c = 1) {
  RationalVector v(n);
  v[i] = c;
  return GroupRep(n, {{v, s}});
}

inline RationalVector vec(std::initializer_list<Rational> xs) { return make_vector(xs); }

inline PrimeSet ps(std::vector<Prime> p) { return PrimeSet::of(std::move(p)); }

inline RationalMatrix mat(std::vector<RationalVector> rows) {
  RationalMatrix m(0, rows.front().size());
  for (auto& r : rows) m.append_row(r);
  return m;
}

}  // namespace tfag::test
