#pragma once

// Primes, valuations and prime sets.

#include "tfag/linalg.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfag {

using Prime = unsigned long;

inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

// p-adic valuation of a nonzero integer.
inline unsigned long valuation(const Integer& n, Prime p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  Integer m = n;
  unsigned long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

// Signed valuation of a nonzero rational.
inline long valuation(const Rational& q, Prime p) {
  return static_cast<long>(valuation(Integer(q.get_num()), p)) -
         static_cast<long>(valuation(Integer(q.get_den()), p));
}

inline Integer power(Prime p, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

// n with all factors p removed.
inline Integer strip_prime(Integer n, Prime p) {
  if (n == 0) return n;
  while (mpz_divisible_ui_p(n.get_mpz_t(), p))
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
  return n;
}

template <class Range>
Integer strip_primes(Integer n, const Range& primes) {
  for (Prime p : primes) n = strip_prime(std::move(n), p);
  return n;
}

// p-part of a nonzero integer.
inline Integer prime_part(const Integer& n, Prime p) { return power(p, valuation(n, p)); }

namespace detail {

inline Integer pollard_rho(const Integer& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Integer x = 2 + seed, y = x, c = 1 + seed, d = 1;
  auto f = [&](const Integer& v) {
    Integer r = v * v + c;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    return r;
  };
  while (d == 1) {
    x = f(x);
    y = f(f(y));
    Integer diff = abs(x - y);
    d = gcd(diff, n);
  }
  return d;
}

inline void factor_into(Integer n, std::map<Prime, unsigned long>& out) {
  if (n < 2) return;
  if (is_prime(n)) {
    if (!n.fits_ulong_p()) throw std::overflow_error("prime factor exceeds machine word");
    ++out[n.get_ui()];
    return;
  }
  for (unsigned long seed = 0;; ++seed) {
    Integer d = pollard_rho(n, seed);
    if (d != n && d != 1) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
}

}  // namespace detail

// Prime factorisation of |n| (n nonzero): prime -> exponent.
inline std::map<Prime, unsigned long> factor(Integer n) {
  if (n == 0) throw std::invalid_argument("factor of zero");
  n = abs(n);
  std::map<Prime, unsigned long> out;
  for (Prime p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++out[p];
    }
  }
  detail::factor_into(n, out);
  return out;
}

inline std::vector<Prime> prime_divisors(const Integer& n) {
  std::vector<Prime> ps;
  for (auto& [p, e] : factor(n)) ps.push_back(p);
  return ps;
}

// Smallest prime not contained in the sorted list.
inline Prime smallest_prime_outside(const std::vector<Prime>& sorted) {
  for (Prime p = 2;; ++p) {
    if (!is_prime(Integer(p))) continue;
    if (!std::binary_search(sorted.begin(), sorted.end(), p)) return p;
  }
}

class PrimeSet {
public:
  PrimeSet() = default;

  static PrimeSet all() {
    PrimeSet s;
    s.all_ = true;
    return s;
  }
  static PrimeSet of(std::vector<Prime> ps) {
    for (Prime p : ps)
      if (!is_prime(Integer(p)))
        throw std::invalid_argument(std::to_string(p) + " is not prime");
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    PrimeSet s;
    s.primes_ = std::move(ps);
    return s;
  }

  bool is_all() const { return all_; }
  bool empty() const { return !all_ && primes_.empty(); }
  const std::vector<Prime>& primes() const { return primes_; }

  bool contains(Prime p) const {
    return all_ || std::binary_search(primes_.begin(), primes_.end(), p);
  }

  bool subset_of(const PrimeSet& o) const {
    if (o.all_) return true;
    if (all_) return false;
    return std::includes(o.primes_.begin(), o.primes_.end(), primes_.begin(), primes_.end());
  }

  friend PrimeSet set_union(const PrimeSet& a, const PrimeSet& b) {
    if (a.all_ || b.all_) return all();
    PrimeSet s;
    std::set_union(a.primes_.begin(), a.primes_.end(), b.primes_.begin(), b.primes_.end(),
                   std::back_inserter(s.primes_));
    return s;
  }
  friend PrimeSet set_intersection(const PrimeSet& a, const PrimeSet& b) {
    if (a.all_) return b;
    if (b.all_) return a;
    PrimeSet s;
    std::set_intersection(a.primes_.begin(), a.primes_.end(), b.primes_.begin(),
                          b.primes_.end(), std::back_inserter(s.primes_));
    return s;
  }

  // Removes from n every prime factor in the set (n nonzero; all -> 1).
  Integer strip(const Integer& n) const {
    if (all_) return 1;
    return strip_primes(abs(n), primes_);
  }

  friend bool operator==(const PrimeSet& a, const PrimeSet& b) {
    return a.all_ == b.all_ && a.primes_ == b.primes_;
  }
  friend bool operator<(const PrimeSet& a, const PrimeSet& b) {
    if (a.all_ != b.all_) return !a.all_;
    return a.primes_ < b.primes_;
  }

  // `{}`, `{2,3}` or `ALL`
  std::string str() const {
    if (all_) return "ALL";
    std::string s = "{";
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(primes_[i]);
    }
    return s + "}";
  }

private:
  bool all_ = false;
  std::vector<Prime> primes_;
};

}  // namespace tfag
