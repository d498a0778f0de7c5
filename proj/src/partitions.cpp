#include "wrp/partitions.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace wrp {

Universe::Universe(std::vector<std::uint32_t> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  if (ids_.size() > kMaxUniverse) {
    throw InternalError("universe of " + std::to_string(ids_.size()) + " elements exceeds the budget of " +
                        std::to_string(kMaxUniverse));
  }
}

std::size_t Universe::position_of(std::uint32_t id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return npos;
  return static_cast<std::size_t>(it - ids_.begin());
}

Universe Universe::unioned_with(const std::vector<std::uint32_t>& more) const {
  std::vector<std::uint32_t> ids = ids_;
  ids.insert(ids.end(), more.begin(), more.end());
  return Universe(std::move(ids));
}

Universe Universe::without(const std::vector<std::uint32_t>& drop) const {
  std::vector<std::uint32_t> ids;
  ids.reserve(ids_.size());
  for (std::uint32_t id : ids_) {
    if (std::find(drop.begin(), drop.end(), id) == drop.end()) ids.push_back(id);
  }
  return Universe(std::move(ids));
}

Partition Partition::singletons(std::size_t n) {
  Partition p;
  p.block_of_.resize(n);
  std::iota(p.block_of_.begin(), p.block_of_.end(), std::uint8_t{0});
  return p;
}

Partition Partition::single_block(std::size_t n) {
  Partition p;
  p.block_of_.assign(n, 0);
  return p;
}

Partition Partition::from_raw(const std::vector<std::uint32_t>& raw) {
  Partition p;
  p.block_of_.resize(raw.size());
  std::vector<std::uint32_t> seen;  // raw label of each canonical block, in order
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto it = std::find(seen.begin(), seen.end(), raw[i]);
    if (it == seen.end()) {
      p.block_of_[i] = static_cast<std::uint8_t>(seen.size());
      seen.push_back(raw[i]);
    } else {
      p.block_of_[i] = static_cast<std::uint8_t>(it - seen.begin());
    }
  }
  return p;
}

std::size_t Partition::block_count() const {
  std::size_t count = 0;
  for (std::uint8_t b : block_of_) count = std::max<std::size_t>(count, b + 1u);
  return count;
}

std::vector<std::uint32_t> Partition::block_masks() const {
  std::vector<std::uint32_t> masks(block_count(), 0);
  for (std::size_t pos = 0; pos < block_of_.size(); ++pos) {
    masks[block_of_[pos]] |= std::uint32_t{1} << pos;
  }
  return masks;
}

Partition Partition::merged(std::size_t a, std::size_t b) const {
  std::vector<std::uint32_t> raw(block_of_.begin(), block_of_.end());
  std::uint32_t from = raw[b], to = raw[a];
  for (auto& label : raw) {
    if (label == from) label = to;
  }
  return from_raw(raw);
}

Partition Partition::with_erased(const std::vector<std::size_t>& positions) const {
  std::vector<std::uint32_t> raw;
  raw.reserve(block_of_.size());
  std::size_t next = 0;
  for (std::size_t pos = 0; pos < block_of_.size(); ++pos) {
    if (next < positions.size() && positions[next] == pos) {
      ++next;
      continue;
    }
    raw.push_back(block_of_[pos]);
  }
  return from_raw(raw);
}

Partition Partition::extended(const std::vector<std::size_t>& posmap) const {
  std::vector<std::uint32_t> raw(posmap.size());
  for (std::size_t i = 0; i < posmap.size(); ++i) {
    // Fresh elements get labels past any block index so each stays a
    // singleton after canonicalization.
    raw[i] = posmap[i] == Universe::npos ? static_cast<std::uint32_t>(Universe::kMaxUniverse + i)
                                         : block_of_[posmap[i]];
  }
  return from_raw(raw);
}

namespace {

struct Dsu {
  std::vector<std::uint32_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Partition Partition::lattice_join(const Partition& other) const {
  if (other.size() != size()) throw InternalError("lattice_join: size mismatch");
  Dsu dsu(size());
  std::vector<std::uint32_t> first_of_block(std::max(block_count(), other.block_count()), UINT32_MAX);
  for (std::size_t pos = 0; pos < size(); ++pos) {
    std::uint32_t b = block_of_[pos];
    if (first_of_block[b] == UINT32_MAX) first_of_block[b] = static_cast<std::uint32_t>(pos);
    else dsu.unite(static_cast<std::uint32_t>(pos), first_of_block[b]);
  }
  std::fill(first_of_block.begin(), first_of_block.end(), UINT32_MAX);
  for (std::size_t pos = 0; pos < size(); ++pos) {
    std::uint32_t b = other.block_of_[pos];
    if (first_of_block[b] == UINT32_MAX) first_of_block[b] = static_cast<std::uint32_t>(pos);
    else dsu.unite(static_cast<std::uint32_t>(pos), first_of_block[b]);
  }
  std::vector<std::uint32_t> raw(size());
  for (std::size_t pos = 0; pos < size(); ++pos) raw[pos] = dsu.find(static_cast<std::uint32_t>(pos));
  return from_raw(raw);
}

bool Partition::joins_to_single_block(const Partition& other) const {
  return lattice_join(other).block_count() <= 1;
}

std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  if (n == 0) {
    out.push_back(Partition{});
    return out;
  }
  std::vector<std::uint32_t> raw(n, 0);
  // Restricted-growth strings enumerated in lexicographic order.
  while (true) {
    out.push_back(Partition::from_raw(raw));
    std::size_t i = n;
    while (i-- > 1) {
      std::uint32_t limit = 0;
      for (std::size_t j = 0; j < i; ++j) limit = std::max(limit, raw[j]);
      if (raw[i] <= limit) {
        ++raw[i];
        std::fill(raw.begin() + static_cast<std::ptrdiff_t>(i) + 1, raw.end(), 0u);
        break;
      }
      if (i == 1) return out;
    }
    if (n == 1) return out;
  }
}

Partition partition_from_blocks(const Universe& u, const std::vector<std::vector<std::uint32_t>>& blocks) {
  std::vector<std::uint32_t> raw(u.size(), UINT32_MAX);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::uint32_t id : blocks[b]) {
      std::size_t pos = u.position_of(id);
      if (pos == Universe::npos) throw InternalError("block element " + std::to_string(id) + " not in universe");
      if (raw[pos] != UINT32_MAX) throw InternalError("element " + std::to_string(id) + " in two blocks");
      raw[pos] = static_cast<std::uint32_t>(b);
    }
  }
  for (std::size_t pos = 0; pos < raw.size(); ++pos) {
    if (raw[pos] == UINT32_MAX) {
      throw InternalError("element " + std::to_string(u.id_at(pos)) + " not covered by blocks");
    }
  }
  return Partition::from_raw(raw);
}

std::vector<std::vector<std::uint32_t>> blocks_of(const Universe& u, const Partition& p) {
  std::vector<std::vector<std::uint32_t>> blocks(p.block_count());
  for (std::size_t pos = 0; pos < p.size(); ++pos) {
    blocks[p.block_of(pos)].push_back(u.id_at(pos));
  }
  return blocks;
}

std::string to_string(const Universe& u, const Partition& p) {
  std::ostringstream out;
  out << '{';
  auto blocks = blocks_of(u, p);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    out << (b ? ",{" : "{");
    for (std::size_t i = 0; i < blocks[b].size(); ++i) out << (i ? "," : "") << blocks[b][i];
    out << '}';
  }
  out << '}';
  return out.str();
}

namespace detail {

namespace {

// Bit index of the lowest set bit; the caller guarantees a nonzero row.
std::size_t lowest_set_bit(const std::uint64_t* row, std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) {
    if (row[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(row[w]));
  }
  throw InternalError("lowest_set_bit on zero row");
}

// Row of the cut matrix for one partition: bit c is set iff cut c keeps
// every block on one side. Such cuts are exactly the unions of non-anchor
// blocks, so the row has 2^{blocks-1} ones. Cut c stands for the side
// containing positions {p > 0 : bit p-1 of c}; the anchor (position 0)
// is pinned to the other side.
void build_row(const Partition& p, std::uint64_t* row, std::size_t words) {
  std::fill(row, row + words, 0);
  auto masks = p.block_masks();
  std::size_t free_blocks = masks.size() - 1;  // block 0 holds the anchor
  std::vector<std::uint32_t> ors(std::size_t{1} << free_blocks, 0);
  for (std::size_t sub = 1; sub < ors.size(); ++sub) {
    ors[sub] = ors[sub & (sub - 1)] | masks[1 + static_cast<std::size_t>(std::countr_zero(sub))];
  }
  for (std::uint32_t side : ors) {
    std::uint32_t c = side >> 1;
    row[c >> 6] |= std::uint64_t{1} << (c & 63);
  }
}

}  // namespace

std::vector<std::size_t> rank_select(std::size_t universe_size,
                                     const std::vector<const Partition*>& parts,
                                     const simd::Gf2Kernels& kernels) {
  const std::size_t cuts = std::size_t{1} << (universe_size - 1);
  const std::size_t words = (cuts + 63) / 64;
  std::vector<std::uint32_t> pivot_row_of_bit(cuts, UINT32_MAX);
  std::vector<std::vector<std::uint64_t>> pivot_rows;
  std::vector<std::size_t> kept;
  std::vector<std::uint64_t> row(words);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    build_row(*parts[i], row.data(), words);
    while (true) {
      if (kernels.is_zero(row.data(), words)) break;  // linear combination of kept rows
      std::size_t bit = lowest_set_bit(row.data(), words);
      std::uint32_t pivot = pivot_row_of_bit[bit];
      if (pivot == UINT32_MAX) {
        pivot_row_of_bit[bit] = static_cast<std::uint32_t>(pivot_rows.size());
        pivot_rows.push_back(row);
        kept.push_back(i);
        break;
      }
      kernels.xor_rows(row.data(), pivot_rows[pivot].data(), words);
    }
  }
  return kept;
}

}  // namespace detail

}  // namespace wrp
