#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wrp/instance.hpp"
#include "wrp/unify.hpp"

namespace wrp {

struct TreeDecomposition {
  std::vector<std::vector<std::uint32_t>> bags;  // sorted vertex ids per node
  std::vector<std::pair<std::uint32_t, std::uint32_t>> tree_edges;

  // Max bag size minus one; -1 for the empty decomposition.
  std::int64_t width() const;
};

enum class NodeKind : std::uint8_t { Leaf, IntroduceVertex, IntroduceEdge, Forget, Join };

inline constexpr std::uint32_t kNoChild = UINT32_MAX;

struct NiceNode {
  NodeKind kind = NodeKind::Leaf;
  std::uint32_t payload = 0;  // vertex id, or multi-edge id for IntroduceEdge
  std::vector<std::uint32_t> bag;  // sorted, always contains the root vertex
  std::array<std::uint32_t, 2> children{kNoChild, kNoChild};
};

// Nodes are stored children-before-parents; the root is the last node and
// its bag is exactly {root vertex}.
struct NiceDecomposition {
  std::vector<NiceNode> nodes;
  std::uint32_t root = 0;
};

// Syntax-only .td reader: 's <bags> <max bag size> <n>' header (a literal
// "td" token after 's' is tolerated), 'b <id> <v...>' bag lines, bare
// '<id1> <id2>' tree edges, 'c' comments. File ids are 1-based and shifted
// down; bags come out sorted.
TreeDecomposition parse_td(std::istream& in);
TreeDecomposition parse_td(const std::string& text);

// The four decomposition properties against the unified instance's simple
// graph (parallel edges collapse). Empty result means valid.
std::vector<std::string> validate_td(const TreeDecomposition& td, const UnifiedInstance& u);

// parse_td + validate_td; throws ParseError on syntax and Error listing the
// violated properties otherwise.
TreeDecomposition read_td(std::istream& in, const UnifiedInstance& u);

// Min-fill elimination ordering (ties: smaller degree, then smaller id).
// Valid on any connected unified instance; no width guarantee.
TreeDecomposition heuristic_decompose(const UnifiedInstance& u);

// Carries a decomposition of the original graph over to the unified one:
// bags are restricted to the source component, relabeled, and the gadget
// vertex (if any) is added to every bag.
TreeDecomposition transfer_td(const TreeDecomposition& td, const Instance& inst, const UnifiedInstance& u);

// Nicification: the unified root is added to every bag, leaves and root
// shrink to {root}, vertices change one per node, every multi-edge gets
// exactly one introduce-edge node at a deterministic position.
NiceDecomposition make_nice(const TreeDecomposition& td, const UnifiedInstance& u);

std::vector<std::string> validate_nice(const NiceDecomposition& nd, const UnifiedInstance& u);

}  // namespace wrp
