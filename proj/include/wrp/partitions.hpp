#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wrp/errors.hpp"
#include "wrp/simd/gf2.hpp"

namespace wrp {

// Ordered set of vertex ids over which partitions live. Elements are
// addressed by position, the rank of the id in ascending order.
class Universe {
 public:
  static constexpr std::size_t kMaxUniverse = 32;
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Universe() = default;
  explicit Universe(std::vector<std::uint32_t> ids);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  std::uint32_t id_at(std::size_t pos) const { return ids_[pos]; }
  const std::vector<std::uint32_t>& ids() const { return ids_; }
  std::size_t position_of(std::uint32_t id) const;  // npos when absent
  bool contains(std::uint32_t id) const { return position_of(id) != npos; }

  Universe unioned_with(const std::vector<std::uint32_t>& more) const;
  Universe without(const std::vector<std::uint32_t>& drop) const;

  bool operator==(const Universe&) const = default;

 private:
  std::vector<std::uint32_t> ids_;  // sorted ascending, unique
};

// Partition of universe positions in canonical restricted-growth form:
// block_of(0) = 0 and every later position's block index is at most one
// more than the largest index seen before it. Two partitions describe the
// same set family iff their encodings are byte-identical, so the encoding
// doubles as the dedup and ordering key.
class Partition {
 public:
  Partition() = default;

  static Partition singletons(std::size_t n);
  static Partition single_block(std::size_t n);
  // Canonicalizes an arbitrary block labeling (one label per position).
  static Partition from_raw(const std::vector<std::uint32_t>& raw);

  std::size_t size() const { return block_of_.size(); }
  std::size_t block_count() const;
  std::uint32_t block_of(std::size_t pos) const { return block_of_[pos]; }
  bool same_block(std::size_t a, std::size_t b) const { return block_of_[a] == block_of_[b]; }
  const std::vector<std::uint8_t>& encoding() const { return block_of_; }

  // Position masks per block, indexed by block number. Block 0 always
  // contains position 0, which reduce uses as the cut anchor.
  std::vector<std::uint32_t> block_masks() const;

  Partition merged(std::size_t a, std::size_t b) const;
  // Removes the given positions (sorted ascending) and recanonicalizes.
  Partition with_erased(const std::vector<std::size_t>& positions) const;
  // Maps this partition onto a larger universe: posmap[i] is the position
  // in the old universe of new position i, or Universe::npos for elements
  // that enter as fresh singletons.
  Partition extended(const std::vector<std::size_t>& posmap) const;

  Partition lattice_join(const Partition& other) const;
  bool joins_to_single_block(const Partition& other) const;

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<std::uint8_t> block_of_;
};

// Enumerates all partitions of an n-element universe in encoding order.
// Sizes stay tiny in tests (Bell(5) = 52, Bell(8) = 4140).
std::vector<Partition> all_partitions(std::size_t n);

// Conversions between the positional encoding and explicit block lists
// (blocks sorted by smallest member, members ascending).
Partition partition_from_blocks(const Universe& u, const std::vector<std::vector<std::uint32_t>>& blocks);
std::vector<std::vector<std::uint32_t>> blocks_of(const Universe& u, const Partition& p);
std::string to_string(const Universe& u, const Partition& p);

template <typename Tag>
struct WpsEntry {
  Partition partition;
  std::uint64_t weight = 0;
  Tag tag{};

  bool operator==(const WpsEntry&) const = default;
};

// Weighted partition set: distinct partitions with minimal weights, stored
// sorted by encoding so equality checks and merges are linear scans. The
// tag rides along untouched by the algebra; the solver threads provenance
// through it, plain sets use std::monostate-like NoTag.
struct NoTag {
  bool operator==(const NoTag&) const = default;
};

template <typename Tag>
struct WpsT {
  Universe universe;
  std::vector<WpsEntry<Tag>> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

using Wps = WpsT<NoTag>;

namespace detail {

// Keeps, per distinct partition, the entry of minimal weight; ties go to
// the earliest input entry. Output is sorted by partition encoding.
template <typename Tag>
void rmc_in_place(std::vector<WpsEntry<Tag>>& entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const WpsEntry<Tag>& a, const WpsEntry<Tag>& b) {
    return a.partition < b.partition;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t best = i;
    std::size_t j = i + 1;
    while (j < entries.size() && entries[j].partition == entries[i].partition) {
      if (entries[j].weight < entries[best].weight) best = j;
      ++j;
    }
    if (best != out) entries[out] = std::move(entries[best]);
    ++out;
    i = j;
  }
  entries.resize(out);
}

// Positions in `target` of each id of `source`, npos for fresh elements.
inline std::vector<std::size_t> position_map(const Universe& target, const Universe& source) {
  std::vector<std::size_t> posmap(target.size(), Universe::npos);
  for (std::size_t i = 0; i < target.size(); ++i) {
    posmap[i] = source.position_of(target.id_at(i));
  }
  return posmap;
}

// Row selection behind reduce: partitions arrive in priority order and the
// survivors' indices (into that order) come back, determined by incremental
// GF(2) elimination of the consistent-cut rows.
std::vector<std::size_t> rank_select(std::size_t universe_size,
                                     const std::vector<const Partition*>& parts,
                                     const simd::Gf2Kernels& kernels);

}  // namespace detail

template <typename Tag>
WpsT<Tag> rmc(WpsT<Tag> a) {
  detail::rmc_in_place(a.entries);
  return a;
}

template <typename Tag>
WpsT<Tag> mincup(WpsT<Tag> a, const WpsT<Tag>& b) {
  if (a.universe != b.universe) throw InternalError("mincup: universe mismatch");
  a.entries.insert(a.entries.end(), b.entries.begin(), b.entries.end());
  detail::rmc_in_place(a.entries);
  return a;
}

template <typename Tag>
WpsT<Tag> ins(const std::vector<std::uint32_t>& fresh, const WpsT<Tag>& a) {
  for (std::uint32_t id : fresh) {
    if (a.universe.contains(id)) {
      throw InternalError("ins: element " + std::to_string(id) + " already in universe");
    }
  }
  WpsT<Tag> out;
  out.universe = a.universe.unioned_with(fresh);
  auto posmap = detail::position_map(out.universe, a.universe);
  out.entries.reserve(a.entries.size());
  for (const auto& e : a.entries) {
    out.entries.push_back({e.partition.extended(posmap), e.weight, e.tag});
  }
  detail::rmc_in_place(out.entries);
  return out;
}

template <typename Tag>
WpsT<Tag> shift(std::uint64_t w, WpsT<Tag> a) {
  for (auto& e : a.entries) e.weight = checked_add(e.weight, w);
  return a;
}

template <typename Tag>
WpsT<Tag> glue(std::uint32_t u, std::uint32_t v, const WpsT<Tag>& a) {
  WpsT<Tag> out;
  out.universe = a.universe.unioned_with({u, v});
  auto posmap = detail::position_map(out.universe, a.universe);
  std::size_t pu = out.universe.position_of(u);
  std::size_t pv = out.universe.position_of(v);
  out.entries.reserve(a.entries.size());
  for (const auto& e : a.entries) {
    out.entries.push_back({e.partition.extended(posmap).merged(pu, pv), e.weight, e.tag});
  }
  detail::rmc_in_place(out.entries);
  return out;
}

template <typename Tag>
WpsT<Tag> glue_w(std::uint32_t u, std::uint32_t v, std::uint64_t w, const WpsT<Tag>& a) {
  return shift(w, glue(u, v, a));
}

template <typename Tag>
WpsT<Tag> proj(const std::vector<std::uint32_t>& drop, const WpsT<Tag>& a) {
  std::uint32_t drop_mask = 0;
  for (std::uint32_t id : drop) {
    std::size_t pos = a.universe.position_of(id);
    if (pos == Universe::npos) throw InternalError("proj: element " + std::to_string(id) + " not in universe");
    drop_mask |= std::uint32_t{1} << pos;
  }
  WpsT<Tag> out;
  out.universe = a.universe.without(drop);
  std::vector<std::size_t> erased;
  for (std::size_t pos = 0; pos < a.universe.size(); ++pos) {
    if (drop_mask >> pos & 1u) erased.push_back(pos);
  }
  for (const auto& e : a.entries) {
    // A block living entirely inside the dropped set loses all witnesses
    // of its connectivity, so the entry is discarded.
    bool dead = false;
    for (std::uint32_t m : e.partition.block_masks()) {
      if ((m & ~drop_mask) == 0) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    out.entries.push_back({e.partition.with_erased(erased), e.weight, e.tag});
  }
  detail::rmc_in_place(out.entries);
  return out;
}

// Pairwise combination over the united universe. The combiner builds the
// output tag from the two input tags.
template <typename TagA, typename TagB, typename Comb>
auto join(const WpsT<TagA>& a, const WpsT<TagB>& b, Comb comb)
    -> WpsT<decltype(comb(std::declval<const TagA&>(), std::declval<const TagB&>()))> {
  using TagOut = decltype(comb(std::declval<const TagA&>(), std::declval<const TagB&>()));
  WpsT<TagOut> out;
  out.universe = a.universe.unioned_with(b.universe.ids());
  auto map_a = detail::position_map(out.universe, a.universe);
  auto map_b = detail::position_map(out.universe, b.universe);
  out.entries.reserve(a.entries.size() * b.entries.size());
  for (const auto& ea : a.entries) {
    Partition pa = ea.partition.extended(map_a);
    for (const auto& eb : b.entries) {
      Partition pb = eb.partition.extended(map_b);
      out.entries.push_back({pa.lattice_join(pb), checked_add(ea.weight, eb.weight), comb(ea.tag, eb.tag)});
    }
  }
  detail::rmc_in_place(out.entries);
  return out;
}

inline Wps join(const Wps& a, const Wps& b) {
  return join(a, b, [](const NoTag&, const NoTag&) { return NoTag{}; });
}

// Minimum weight over entries whose partition coarsens with q to a single
// block; empty optional when no entry qualifies.
template <typename Tag>
std::optional<std::uint64_t> opt(const Partition& q, const WpsT<Tag>& a) {
  if (q.size() != a.universe.size()) throw InternalError("opt: universe size mismatch");
  std::optional<std::uint64_t> best;
  for (const auto& e : a.entries) {
    if (!e.partition.joins_to_single_block(q)) continue;
    if (!best || e.weight < *best) best = e.weight;
  }
  return best;
}

// Representative-set trim: keeps a subset of at most 2^{|U|-1} entries that
// preserves opt against every partition. Entries are re-ranked by weight
// (ties by encoding) for the elimination, then emitted in encoding order.
template <typename Tag>
WpsT<Tag> reduce(const WpsT<Tag>& a, const simd::Gf2Kernels& kernels = simd::active_kernels()) {
  if (a.entries.size() <= 1 || a.universe.empty()) return a;
  std::vector<std::size_t> order(a.entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (a.entries[x].weight != a.entries[y].weight) return a.entries[x].weight < a.entries[y].weight;
    return a.entries[x].partition < a.entries[y].partition;
  });
  std::vector<const Partition*> parts(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) parts[i] = &a.entries[order[i]].partition;
  std::vector<std::size_t> kept_rank = detail::rank_select(a.universe.size(), parts, kernels);
  std::vector<std::size_t> kept;
  kept.reserve(kept_rank.size());
  for (std::size_t r : kept_rank) kept.push_back(order[r]);
  std::sort(kept.begin(), kept.end());
  WpsT<Tag> out;
  out.universe = a.universe;
  out.entries.reserve(kept.size());
  for (std::size_t i : kept) out.entries.push_back(a.entries[i]);
  return out;
}

}  // namespace wrp
