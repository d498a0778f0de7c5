#pragma once

// Definitional re-implementation of the weighted-partition operators over
// explicit block lists. Deliberately slow and literal; unit tests compare
// the library's positional-encoding algebra against these.

#include <cstdint>
#include <optional>
#include <vector>

#include "wrp/partitions.hpp"

namespace wrp::testsupport {

using Block = std::vector<std::uint32_t>;   // sorted member ids
using Family = std::vector<Block>;          // blocks sorted by first member

struct NEntry {
  Family partition;
  std::uint64_t weight = 0;
};

struct NSet {
  std::vector<std::uint32_t> universe;  // sorted ids
  std::vector<NEntry> entries;
};

Family normalize_family(Family f);
Family family_up(const Family& f, const std::vector<std::uint32_t>& universe_up);
Family family_join(const Family& p, const Family& q);
bool family_equal(const Family& a, const Family& b);

NSet n_rmc(NSet a);
NSet n_mincup(const NSet& a, const NSet& b);
NSet n_ins(const std::vector<std::uint32_t>& fresh, const NSet& a);
NSet n_shift(std::uint64_t w, NSet a);
NSet n_glue(std::uint32_t u, std::uint32_t v, const NSet& a);
NSet n_glue_w(std::uint32_t u, std::uint32_t v, std::uint64_t w, const NSet& a);
NSet n_proj(const std::vector<std::uint32_t>& drop, const NSet& a);
NSet n_join(const NSet& a, const NSet& b);
std::optional<std::uint64_t> n_opt(const Family& q, const NSet& a);

// Bridges between the two representations.
NSet to_naive(const Wps& a);
Wps from_naive(const NSet& a);
Family to_family(const Universe& u, const Partition& p);

// True when both sets hold exactly the same (partition, weight) pairs.
bool same_set(const Wps& got, const NSet& expected);

}  // namespace wrp::testsupport
