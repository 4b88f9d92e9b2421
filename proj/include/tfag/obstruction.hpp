#pragma once

// Typeset obstruction: a rank-2 group whose typeset holds three pairwise
// incomparable types has no quasi-decomposition, since a quasi-sum A (+) B
// of rank-1 groups only realises tA, tB and their meet.

#include "tfag/group.hpp"

#include <optional>

namespace tfag {

struct TypesetCertificate {
  std::vector<TypesetEntry> types;  // three pairwise incomparable entries
};

inline bool type_classes_comparable(const PrimeSet& a, const PrimeSet& b) {
  return a.subset_of(b) || b.subset_of(a);
}

inline std::optional<TypesetCertificate> typeset_obstruction_certificate(const GroupRep& g) {
  if (g.rank() != 2) return std::nullopt;
  auto ts = typeset(g);
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      if (type_classes_comparable(ts[i].primes, ts[j].primes)) continue;
      for (std::size_t k = j + 1; k < ts.size(); ++k) {
        if (type_classes_comparable(ts[i].primes, ts[k].primes) ||
            type_classes_comparable(ts[j].primes, ts[k].primes))
          continue;
        return TypesetCertificate{{ts[i], ts[j], ts[k]}};
      }
    }
  return std::nullopt;
}

}  // namespace tfag
