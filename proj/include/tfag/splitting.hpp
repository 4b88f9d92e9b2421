#pragma once

// Set partitions of a basis and the splitting test.

#include "tfag/bases.hpp"

#include <optional>
#include <string>

namespace tfag {

// Blocks of basis positions (0-based), in order of first element.
using Partition = std::vector<std::vector<std::size_t>>;

inline std::size_t max_partition_rank() { return 10; }

// All set partitions of {0..k-1} into at most max_blocks blocks, in
// restricted-growth-string order. With proper_only, the one-block partition
// is skipped.
inline std::vector<Partition> set_partitions(std::size_t k, std::size_t max_blocks,
                                             bool proper_only = true) {
  if (k > max_partition_rank())
    throw std::invalid_argument("partition enumeration: rank " + std::to_string(k) +
                                " exceeds limit " + std::to_string(max_partition_rank()));
  std::vector<Partition> out;
  if (k == 0) return out;
  std::vector<std::size_t> rgs(k, 0);
  // rgs[i] <= 1 + max(rgs[0..i-1]), visited in lexicographic order
  auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
    if (i == k) {
      if (blocks > max_blocks || (proper_only && blocks < 2)) return;
      Partition p(blocks);
      for (std::size_t j = 0; j < k; ++j) p[rgs[j]].push_back(j);
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t v = 0; v <= blocks && v < max_blocks; ++v) {
      rgs[i] = v;
      self(self, i + 1, std::max(blocks, v + 1));
    }
  };
  rgs[0] = 0;
  rec(rec, 1, 1);
  return out;
}

inline std::string format_partition(const Partition& p) {
  std::string s;
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (b) s += "|";
    for (std::size_t i = 0; i < p[b].size(); ++i) {
      if (i) s += ",";
      s += std::to_string(p[b][i] + 1);
    }
  }
  return s;
}

inline void validate_partition(const Partition& p, std::size_t k) {
  std::vector<int> seen(k, 0);
  for (auto& block : p) {
    if (block.empty()) throw std::invalid_argument("partition has an empty block");
    for (auto i : block) {
      if (i >= k) throw std::invalid_argument("partition refers to a missing basis element");
      if (seen[i]++) throw std::invalid_argument("partition blocks overlap");
    }
  }
  for (auto s : seen)
    if (!s) throw std::invalid_argument("partition does not cover the basis");
}

// Projections of Q^n-vectors in span(B) onto the block spans.
class BlockProjector {
public:
  BlockProjector(const Basis& b, std::size_t n, Partition p)
      : basis_(basis_matrix(b, n)), inv_(right_inverse(basis_)), p_(std::move(p)), n_(n) {}

  std::vector<RationalVector> components(const RationalVector& v) const {
    RationalVector c = v * inv_;
    std::vector<RationalVector> out;
    for (auto& block : p_) {
      RationalVector w(n_);
      for (auto i : block)
        if (c[i] != 0)
          for (std::size_t j = 0; j < n_; ++j) w[j] += c[i] * basis_(i, j);
      out.push_back(std::move(w));
    }
    return out;
  }

private:
  RationalMatrix basis_, inv_;
  Partition p_;
  std::size_t n_;
};

// Does G = (+)_j (B_j)_* ? Every generator piece must split into pieces of G.
inline bool partition_splits(const GroupRep& g, const Basis& b, const Partition& p) {
  BlockProjector proj(b, g.ambient(), p);
  for (auto& gen : g.generators())
    for (auto& comp : proj.components(gen.v))
      if (!contains_piece(g, {comp, gen.s})) return false;
  return true;
}

inline Basis block_vectors(const Basis& b, const std::vector<std::size_t>& block) {
  Basis out;
  for (auto i : block) out.push_back(b[i]);
  return out;
}

// (B_j)_* for each block.
inline DecompositionRecord block_hulls(const GroupRep& g, const Basis& b, const Partition& p) {
  DecompositionRecord d;
  for (auto& block : p) {
    GroupRep s = purify_vectors(g, block_vectors(b, block));
    d.flags.push_back(s.rank() == 1 ? SummandFlag::Rank1 : SummandFlag::Unknown);
    d.summands.push_back(std::move(s));
  }
  return d;
}

struct SplitCheck {
  bool splits = false;
  std::optional<DecompositionRecord> decomposition;
};

inline SplitCheck check_splitting_partition(const GroupRep& g, const Basis& b, const Partition& p) {
  if (!is_basis(g, b)) throw std::invalid_argument("check_splitting_partition: not a basis");
  validate_partition(p, b.size());
  if (!partition_splits(g, b, p)) return {};
  return {true, block_hulls(g, b, p)};
}

struct SplittingPartition {
  Partition partition;
  DecompositionRecord decomposition;
};

// Proper partitions of B into at most max_blocks blocks that split G, in
// restricted-growth-string order.
inline std::vector<SplittingPartition> enumerate_splitting_partitions(const GroupRep& g, const Basis& b,
                                                                     std::size_t max_blocks) {
  if (!is_basis(g, b)) throw std::invalid_argument("enumerate_splitting_partitions: not a basis");
  std::vector<SplittingPartition> out;
  for (auto& p : set_partitions(b.size(), max_blocks))
    if (partition_splits(g, b, p)) out.push_back({p, block_hulls(g, b, p)});
  return out;
}

// The finest splitting partition of B: the common refinement of all
// splitting two-block partitions (the one-block partition if none split).
inline Partition finest_splitting_partition(const GroupRep& g, const Basis& b) {
  const std::size_t k = b.size();
  std::vector<std::vector<int>> label(k);  // side of each splitting cut
  for (auto& p : set_partitions(k, 2)) {
    if (!partition_splits(g, b, p)) continue;
    std::vector<int> side(k, 0);
    for (auto i : p[1]) side[i] = 1;
    for (std::size_t i = 0; i < k; ++i) label[i].push_back(side[i]);
  }
  Partition out;
  std::vector<std::vector<int>> keys;
  for (std::size_t i = 0; i < k; ++i) {
    auto it = std::find(keys.begin(), keys.end(), label[i]);
    if (it == keys.end()) {
      keys.push_back(label[i]);
      out.push_back({i});
    } else {
      out[it - keys.begin()].push_back(i);
    }
  }
  return out;
}

}  // namespace tfag
