#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wrp/instance.hpp"
#include "wrp/unify.hpp"
#include "wrp/walk.hpp"

namespace wrp {

// Edge-subset enumeration budget for the brute force.
inline constexpr std::size_t kOracleMaxEdges = 24;

// Ground truth by exhaustion: minimum total weight over edge subsets that
// are even everywhere, connected, and cover every waypoint. The empty
// subset counts when the root is the only waypoint. Returns nullopt when no
// such subset exists. Throws BudgetError beyond kOracleMaxEdges edges.
std::optional<std::uint64_t> brute_force_min_cost(const UnifiedInstance& u);

// Independent check of a finished walk against the original instance:
// endpoints, waypoint coverage, edge existence, per-edge traversal counts
// against capacities, and the declared cost. Returns violations, empty when
// the walk is valid.
std::vector<std::string> verify_walk(const OriginalWalk& walk, const Instance& inst);

struct GenParams {
  std::uint32_t n = 1;
  double edge_prob = 0.5;
  std::uint32_t cap_min = 1;
  std::uint32_t cap_max = 2;
  std::uint64_t weight_min = 1;
  std::uint64_t weight_max = 5;
  std::uint32_t waypoint_count = 1;
  std::uint64_t seed = 0;
};

// Seeded random connected instance with the given shape. Resamples the edge
// set until the graph is connected; throws Error when the parameters are
// unsatisfiable (waypoint_count > n, empty ranges, or connectivity is
// hopeless at the given edge probability).
Instance gen_random(const GenParams& params);

}  // namespace wrp
