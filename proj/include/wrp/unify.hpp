#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wrp/instance.hpp"
#include "wrp/walk.hpp"

namespace wrp {

// Origin marker for the two gadget edges, which have no source EdgeSpec.
inline constexpr std::uint32_t kGadgetOrigin = UINT32_MAX;
// to_original entry for the gadget vertex.
inline constexpr std::uint32_t kNoOriginal = UINT32_MAX;

struct MultiEdge {
  std::uint32_t id = 0;  // dense, parallel copies adjacent and ascending
  std::uint32_t u = 0, v = 0;
  std::uint64_t weight = 0;
  std::uint32_t origin = 0;  // index into Instance::edges, or kGadgetOrigin

  bool operator==(const MultiEdge&) const = default;
};

struct GadgetInfo {
  std::uint32_t vertex = 0;          // the added s=t vertex, always the top id
  std::uint32_t edge_to_source = 0;  // multi-edge id of {vertex, s}
  std::uint32_t edge_to_target = 0;  // multi-edge id of {vertex, t}
};

// Connected multigraph with unit capacities, at most two equal-weight
// parallel edges per vertex pair, a closed-walk root with root in the
// waypoint set. Vertices are relabeled densely; to_original maps them back
// (kNoOriginal for the gadget vertex).
struct UnifiedInstance {
  std::uint32_t n = 0;
  std::vector<MultiEdge> multi_edges;
  std::uint32_t root = 0;
  std::vector<std::uint32_t> waypoints;  // sorted, contains root
  std::optional<GadgetInfo> gadget;
  std::vector<std::uint32_t> to_original;
};

struct Infeasible {
  std::uint32_t witness = 0;  // original vertex unreachable from the source
  std::string reason;
};

std::variant<UnifiedInstance, Infeasible> unify(const Instance& inst);

std::vector<std::string> validate_unified(const UnifiedInstance& u);

// Maps a closed root walk of the unified instance back to an s-t walk of
// the original one: strips the gadget edges (cost -2), reverses if the
// gadget was entered on the target side, and restores original vertex ids.
// Throws WalkError on structurally invalid input walks.
OriginalWalk lift_walk(const UnifiedWalk& uw, const UnifiedInstance& u, const Instance& inst);

}  // namespace wrp
