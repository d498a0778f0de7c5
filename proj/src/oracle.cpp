#include "wrp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "dsu.hpp"
#include "wrp/errors.hpp"
#include "wrp/rng.hpp"

namespace wrp {

using detail::Dsu;

std::optional<std::uint64_t> brute_force_min_cost(const UnifiedInstance& u) {
  const std::size_t m = u.multi_edges.size();
  if (m > kOracleMaxEdges) {
    throw BudgetError("brute force over " + std::to_string(m) + " edges exceeds the budget of " +
                      std::to_string(kOracleMaxEdges));
  }
  if (u.n > 32) {
    throw BudgetError("brute force vertex masks cover at most 32 vertices, got " + std::to_string(u.n));
  }

  std::uint32_t waypoint_mask = 0;
  for (std::uint32_t w : u.waypoints) waypoint_mask |= std::uint32_t{1} << w;

  std::optional<std::uint64_t> best;
  if (waypoint_mask == (std::uint32_t{1} << u.root)) best = 0;  // the empty subgraph
  if (m == 0) return best;

  // Subset properties come from two half-tables: degree parity as a bit per
  // vertex, endpoint support, and total weight.
  const std::size_t lo_bits = m / 2;
  const std::size_t hi_bits = m - lo_bits;
  const std::uint32_t lo_mask = (std::uint32_t{1} << lo_bits) - 1;
  auto build = [&](std::size_t first, std::size_t count, std::vector<std::uint32_t>& parity,
                   std::vector<std::uint32_t>& support, std::vector<std::uint64_t>& weight) {
    parity.assign(std::size_t{1} << count, 0);
    support.assign(std::size_t{1} << count, 0);
    weight.assign(std::size_t{1} << count, 0);
    for (std::size_t sub = 1; sub < parity.size(); ++sub) {
      std::size_t low = sub & (sub - 1);
      const MultiEdge& e = u.multi_edges[first + std::countr_zero(sub)];
      parity[sub] = parity[low] ^ (std::uint32_t{1} << e.u) ^ (std::uint32_t{1} << e.v);
      support[sub] = support[low] | (std::uint32_t{1} << e.u) | (std::uint32_t{1} << e.v);
      weight[sub] = checked_add(weight[low], e.weight);
    }
  };
  std::vector<std::uint32_t> parity_lo, parity_hi, support_lo, support_hi;
  std::vector<std::uint64_t> weight_lo, weight_hi;
  build(0, lo_bits, parity_lo, support_lo, weight_lo);
  build(lo_bits, hi_bits, parity_hi, support_hi, weight_hi);

  std::uint64_t min_edge_weight = UINT64_MAX;
  for (const MultiEdge& e : u.multi_edges) min_edge_weight = std::min(min_edge_weight, e.weight);

  // Subsets by increasing popcount, then value, so that with positive
  // weights whole popcount classes can be skipped once the best is low.
  for (std::size_t k = 1; k <= m; ++k) {
    if (best && min_edge_weight > 0 && min_edge_weight > *best / k) break;
    std::uint64_t sub = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << m;
    while (sub < limit) {
      std::size_t lo = sub & lo_mask, hi = sub >> lo_bits;
      if ((parity_lo[lo] ^ parity_hi[hi]) == 0) {
        std::uint64_t weight = checked_add(weight_lo[lo], weight_hi[hi]);
        std::uint32_t support = support_lo[lo] | support_hi[hi];
        if ((!best || weight < *best) && (support & waypoint_mask) == waypoint_mask) {
          Dsu dsu(u.n);
          for (std::size_t i = 0; i < m; ++i) {
            if (sub >> i & 1u) dsu.unite(u.multi_edges[i].u, u.multi_edges[i].v);
          }
          std::uint32_t lead = dsu.find(static_cast<std::uint32_t>(std::countr_zero(support)));
          bool connected = true;
          for (std::uint32_t v = 0; v < u.n && connected; ++v) {
            if (support >> v & 1u) connected = dsu.find(v) == lead;
          }
          if (connected) best = weight;
        }
      }
      // Next subset of the same popcount (Gosper).
      std::uint64_t c = sub & -sub;
      std::uint64_t r = sub + c;
      sub = (((r ^ sub) >> 2) / c) | r;
    }
  }
  return best;
}

std::vector<std::string> verify_walk(const OriginalWalk& walk, const Instance& inst) {
  std::vector<std::string> out;
  if (walk.vertices.empty()) {
    out.push_back("walk has no vertices");
    return out;
  }
  for (std::uint32_t v : walk.vertices) {
    if (v >= inst.n) {
      out.push_back("vertex " + std::to_string(v) + " out of range");
      return out;
    }
  }
  if (walk.vertices.front() != inst.source) {
    out.push_back("walk starts at " + std::to_string(walk.vertices.front()) + ", not at the source " +
                  std::to_string(inst.source));
  }
  if (walk.vertices.back() != inst.target) {
    out.push_back("walk ends at " + std::to_string(walk.vertices.back()) + ", not at the target " +
                  std::to_string(inst.target));
  }

  std::set<std::uint32_t> visited(walk.vertices.begin(), walk.vertices.end());
  for (std::uint32_t w : inst.waypoints) {
    if (!visited.count(w)) out.push_back("waypoint " + std::to_string(w) + " not visited");
  }

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> edge_index;
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    edge_index[{inst.edges[i].u, inst.edges[i].v}] = i;
  }
  std::vector<std::size_t> uses(inst.edges.size(), 0);
  std::uint64_t cost = 0;
  bool steps_ok = true;
  for (std::size_t i = 0; i + 1 < walk.vertices.size(); ++i) {
    std::uint32_t a = walk.vertices[i], b = walk.vertices[i + 1];
    auto it = edge_index.find({std::min(a, b), std::max(a, b)});
    if (it == edge_index.end()) {
      out.push_back("no edge between " + std::to_string(a) + " and " + std::to_string(b));
      steps_ok = false;
      continue;
    }
    ++uses[it->second];
    cost = checked_add(cost, inst.edges[it->second].weight);
  }
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    if (uses[i] > inst.edges[i].capacity) {
      out.push_back("capacity exceeded on edge {" + std::to_string(inst.edges[i].u) + "," +
                    std::to_string(inst.edges[i].v) + "}: " + std::to_string(uses[i]) + " > " +
                    std::to_string(inst.edges[i].capacity));
    }
  }
  if (steps_ok && cost != walk.cost) {
    out.push_back("declared cost " + std::to_string(walk.cost) + " differs from traversed cost " +
                  std::to_string(cost));
  }
  return out;
}

Instance gen_random(const GenParams& params) {
  if (params.n == 0) throw Error("gen_random: n must be at least 1");
  if (params.waypoint_count > params.n) {
    throw Error("gen_random: waypoint count " + std::to_string(params.waypoint_count) +
                " exceeds vertex count " + std::to_string(params.n));
  }
  if (params.edge_prob < 0.0 || params.edge_prob > 1.0) {
    throw Error("gen_random: edge probability must lie in [0, 1]");
  }
  if (params.cap_min == 0 || params.cap_min > params.cap_max) {
    throw Error("gen_random: capacity range must satisfy 1 <= min <= max");
  }
  if (params.weight_min > params.weight_max) {
    throw Error("gen_random: weight range must satisfy min <= max");
  }

  Rng rng(params.seed);
  Instance inst;
  inst.n = params.n;

  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    inst.edges.clear();
    for (std::uint32_t u = 0; u < params.n; ++u) {
      for (std::uint32_t v = u + 1; v < params.n; ++v) {
        if (rng.chance(params.edge_prob)) {
          std::uint32_t cap = static_cast<std::uint32_t>(rng.in_range(params.cap_min, params.cap_max));
          std::uint64_t weight = rng.in_range(params.weight_min, params.weight_max);
          inst.edges.push_back({u, v, cap, weight});
        }
      }
    }
    Dsu dsu(params.n);
    for (const EdgeSpec& e : inst.edges) dsu.unite(e.u, e.v);
    bool connected = true;
    for (std::uint32_t v = 1; v < params.n && connected; ++v) {
      connected = dsu.find(v) == dsu.find(0);
    }
    if (connected) {
      inst.source = static_cast<std::uint32_t>(rng.below(params.n));
      inst.target = static_cast<std::uint32_t>(rng.below(params.n));
      // Waypoints by partial shuffle: the first waypoint_count slots of a
      // deterministic permutation.
      std::vector<std::uint32_t> perm(params.n);
      for (std::uint32_t v = 0; v < params.n; ++v) perm[v] = v;
      for (std::uint32_t i = 0; i < params.waypoint_count; ++i) {
        std::uint32_t j = i + static_cast<std::uint32_t>(rng.below(params.n - i));
        std::swap(perm[i], perm[j]);
      }
      inst.waypoints.assign(perm.begin(), perm.begin() + params.waypoint_count);
      std::sort(inst.waypoints.begin(), inst.waypoints.end());
      return inst;
    }
  }
  throw Error("gen_random: no connected graph after " + std::to_string(kMaxAttempts) +
              " attempts; raise the edge probability");
}

}  // namespace wrp
