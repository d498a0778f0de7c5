#pragma once

#include <cstdint>
#include <vector>

namespace wrp {

// Closed walk in a unified instance: vertices[i] -- edges[i] -- vertices[i+1],
// one more vertex than edges. A single-vertex walk has no edges. Each
// multi-edge id appears at most once (unit capacities make walks trails).
struct UnifiedWalk {
  std::vector<std::uint32_t> vertices;
  std::vector<std::uint32_t> edges;
  std::uint64_t cost = 0;
};

// Walk in the original instance, vertex sequence only: consecutive vertices
// are joined by the unique edge between them.
struct OriginalWalk {
  std::vector<std::uint32_t> vertices;
  std::uint64_t cost = 0;
};

}  // namespace wrp
