#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace wrp {
namespace detail {

// Union-find over dense vertex ids, path-halving, union by blind attach.
// Small enough that rank bookkeeping would not pay for itself here.
struct Dsu {
  std::vector<std::uint32_t> parent;

  explicit Dsu(std::uint32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }

  std::uint32_t find(std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail
}  // namespace wrp
