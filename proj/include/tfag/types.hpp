#pragma once

// Rank-1 types: subgroups (1/m) Z[S^-1] of Q.

#include "tfag/primes.hpp"

#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tfag {

// The subgroup (1/m) Z[S^-1] of Q. m is kept as a positive rational so that
// scaling stays inside the class; canonically no prime of S divides the
// numerator or denominator of m, and S = ALL forces m = 1.
class DivisibilityType {
public:
  DivisibilityType() : m_(1) {}
  DivisibilityType(Rational m, PrimeSet s) : m_(std::move(m)), s_(std::move(s)) {
    if (m_ <= 0) throw std::invalid_argument("type co-denominator must be positive");
    canonicalize();
  }

  static DivisibilityType integers() { return {}; }
  static DivisibilityType rationals() { return {Rational(1), PrimeSet::all()}; }

  const Rational& m() const { return m_; }
  const PrimeSet& primes() const { return s_; }

  // Does the subgroup contain r?
  bool contains(const Rational& r) const {
    if (r == 0 || s_.is_all()) return true;
    Rational x = r * m_;
    return s_.strip(Integer(x.get_den())) == 1;
  }

  friend bool operator==(const DivisibilityType& a, const DivisibilityType& b) {
    return a.m_ == b.m_ && a.s_ == b.s_;
  }
  friend bool operator<(const DivisibilityType& a, const DivisibilityType& b) {
    if (!(a.s_ == b.s_)) return a.s_ < b.s_;
    return a.m_ < b.m_;
  }

  // `Z`, `Q`, `Z[2,3]`, `1/3 Z[2]`, `2 Z`
  std::string str() const {
    if (s_.is_all()) return "Q";
    std::string ring = "Z";
    if (!s_.empty()) {
      ring += "[";
      for (std::size_t i = 0; i < s_.primes().size(); ++i) {
        if (i) ring += ",";
        ring += std::to_string(s_.primes()[i]);
      }
      ring += "]";
    }
    if (m_ == 1) return ring;
    Rational coeff = 1 / m_;
    return coeff.get_str() + " " + ring;
  }

  static DivisibilityType parse(std::string_view text);

private:
  void canonicalize() {
    if (s_.is_all()) {
      m_ = 1;
      return;
    }
    Integer num = s_.strip(Integer(m_.get_num()));
    Integer den = s_.strip(Integer(m_.get_den()));
    m_ = Rational(num, den);
    m_.canonicalize();
  }

  Rational m_;
  PrimeSet s_;
};

namespace detail {

// Local exponent of the type at p: the group localised at p is p^e Z_(p);
// returns -v_p(m). Only meaningful for p outside S.
inline long local_exponent(const DivisibilityType& t, Prime p) {
  return -valuation(t.m(), p);
}

inline std::set<Prime> support(const Rational& q) {
  std::set<Prime> ps;
  for (auto p : prime_divisors(Integer(q.get_num()))) ps.insert(p);
  for (auto p : prime_divisors(Integer(q.get_den()))) ps.insert(p);
  return ps;
}

inline Rational from_local_exponents(const std::map<Prime, long>& exps) {
  Rational m = 1;
  for (auto [p, e] : exps) {
    // exponent e means local group p^e Z_(p), i.e. v_p(m) = -e
    if (e < 0)
      m *= Rational(power(p, static_cast<unsigned long>(-e)));
    else if (e > 0)
      m /= Rational(power(p, static_cast<unsigned long>(e)));
  }
  return m;
}

}  // namespace detail

inline DivisibilityType type_meet(const DivisibilityType& a, const DivisibilityType& b) {
  PrimeSet s = set_intersection(a.primes(), b.primes());
  if (s.is_all()) return DivisibilityType::rationals();
  std::set<Prime> ps = detail::support(a.m());
  for (auto p : detail::support(b.m())) ps.insert(p);
  std::map<Prime, long> exps;
  for (Prime p : ps) {
    if (s.contains(p)) continue;
    bool ina = a.primes().contains(p), inb = b.primes().contains(p);
    long e;
    if (ina)
      e = detail::local_exponent(b, p);
    else if (inb)
      e = detail::local_exponent(a, p);
    else
      e = std::max(detail::local_exponent(a, p), detail::local_exponent(b, p));
    exps[p] = e;
  }
  return {detail::from_local_exponents(exps), s};
}

inline DivisibilityType type_join(const DivisibilityType& a, const DivisibilityType& b) {
  PrimeSet s = set_union(a.primes(), b.primes());
  if (s.is_all()) return DivisibilityType::rationals();
  std::set<Prime> ps = detail::support(a.m());
  for (auto p : detail::support(b.m())) ps.insert(p);
  std::map<Prime, long> exps;
  for (Prime p : ps) {
    if (s.contains(p)) continue;
    exps[p] = std::min(detail::local_exponent(a, p), detail::local_exponent(b, p));
  }
  return {detail::from_local_exponents(exps), s};
}

inline bool type_leq(const DivisibilityType& a, const DivisibilityType& b) {
  if (!a.primes().subset_of(b.primes())) return false;
  if (b.primes().is_all()) return true;
  std::set<Prime> ps = detail::support(a.m());
  for (auto p : detail::support(b.m())) ps.insert(p);
  for (Prime p : ps) {
    if (b.primes().contains(p)) continue;
    if (detail::local_exponent(a, p) < detail::local_exponent(b, p)) return false;
  }
  return true;
}

inline bool type_eq(const DivisibilityType& a, const DivisibilityType& b) { return a == b; }

// Two rank-1 groups are isomorphic iff their prime sets agree.
inline bool type_isomorphic(const DivisibilityType& a, const DivisibilityType& b) {
  return a.primes() == b.primes();
}

inline DivisibilityType scale_type(const DivisibilityType& t, const Rational& r) {
  if (r == 0) throw std::invalid_argument("scale_type: zero scalar");
  Rational m = t.m() / abs(r);
  return {m, t.primes()};
}

inline DivisibilityType DivisibilityType::parse(std::string_view text) {
  auto fail = [&](const std::string& why) -> DivisibilityType {
    throw std::invalid_argument("cannot parse type '" + std::string(text) + "': " + why);
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) return fail("empty");
  if (s == "Q") return rationals();
  std::size_t z = s.find('Z');
  if (z == std::string::npos) return fail("missing Z");
  Rational coeff = 1;
  if (z > 0) {
    try {
      coeff = Rational(s.substr(0, z));
      coeff.canonicalize();
    } catch (const std::exception&) {
      return fail("bad coefficient");
    }
    if (coeff <= 0) return fail("coefficient must be positive");
  }
  std::vector<Prime> ps;
  std::string rest = s.substr(z + 1);
  if (!rest.empty()) {
    if (rest.front() != '[' || rest.back() != ']') return fail("expected [primes]");
    std::string inner = rest.substr(1, rest.size() - 2);
    std::size_t pos = 0;
    while (pos < inner.size()) {
      std::size_t comma = inner.find(',', pos);
      if (comma == std::string::npos) comma = inner.size();
      std::string tok = inner.substr(pos, comma - pos);
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        return fail("bad prime '" + tok + "'");
      ps.push_back(std::stoul(tok));
      pos = comma + 1;
    }
  }
  return {1 / coeff, PrimeSet::of(ps)};
}

}  // namespace tfag
