#pragma once

#include <cstdint>
#include <optional>

#include "wrp/instance.hpp"
#include "wrp/unify.hpp"

namespace wrp::testing {

// Minimum cost of a closed walk at the unified root that visits every
// waypoint and uses each multi-edge at most once, found by shortest-path
// search over (vertex, used-edge set, visited-waypoint set) states. A
// deliberately different formulation from the subgraph enumeration, usable
// up to max_edges edges.
std::optional<std::uint64_t> closed_walk_min_cost(const UnifiedInstance& u,
                                                  std::size_t max_edges = 12);

// Minimum cost of a source-to-target walk on the original instance that
// visits every waypoint and traverses each edge at most its capacity, via
// enumeration of per-edge use counts in {0,1,2} with walk-parity checks.
// Uses of three and above never beat an optimum with non-negative weights.
std::optional<std::uint64_t> open_walk_min_cost(const Instance& inst, std::size_t max_edges = 13);

}  // namespace wrp::testing
