#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wrp/decomposition.hpp"
#include "wrp/partitions.hpp"
#include "wrp/simd/gf2.hpp"
#include "wrp/unify.hpp"
#include "wrp/walk.hpp"

namespace wrp {

// How a table entry was derived from child entries; enough to replay the
// derivation downward when reconstructing a walk.
enum class ProvKind : std::uint8_t {
  Leaf,         // base entry of a leaf row
  Copy,         // unchanged child entry (introduced element not selected)
  Ins,          // introduce-vertex: child entry extended by a fresh singleton
  EdgeSkip,     // introduce-edge: edge left out
  EdgeTake,     // introduce-edge: edge added to the subgraph
  ForgetPlain,  // forget: vertex was never selected below
  ForgetProj,   // forget: vertex was selected, projected out of the universe
  Join,         // combination of one left and one right child entry
};

struct Prov {
  ProvKind kind = ProvKind::Leaf;
  std::uint32_t a = 0;    // child entry index (left child for Join)
  std::uint32_t b = 0;    // right child entry index (Join only)
  std::uint32_t aux = 0;  // Join only: the left child's L mask

  bool operator==(const Prov&) const = default;
};

// Rows keyed by presignature (X, L), both bit masks over positions in the
// node's sorted bag. Valid keys have X covering the bag's waypoints and
// L ⊆ X; invalid and empty rows are simply absent from the map.
using DpRowKey = std::pair<std::uint32_t, std::uint32_t>;
using DpTable = std::map<DpRowKey, WpsT<Prov>>;
using DpTables = std::vector<DpTable>;  // one table per nice node

struct SolveOptions {
  bool trim = true;           // representative-set reduce on oversized rows
  bool keep_tables = true;    // retain all tables for reconstruct
  std::uint32_t threads = 1;  // worker threads for row computation
  const simd::Gf2Kernels* kernels = nullptr;  // nullptr: runtime dispatch
};

struct SolveStats {
  std::size_t max_row_entries = 0;  // largest stored row
  std::size_t total_entries = 0;    // entries summed over all stored rows
  std::size_t reduce_calls = 0;
  std::size_t rows_computed = 0;    // presignatures evaluated
};

struct SolveOutcome {
  std::optional<std::uint64_t> cost;  // empty: no feasible closed walk
  SolveStats stats;
  DpTables tables;  // empty when keep_tables is off
};

// Bottom-up table computation over the nice decomposition. The cost is the
// minimum weight of a connected even-degree subgraph of the unified
// multigraph covering all waypoints, equivalently of a closed waypoint
// walk through the root. Throws BudgetError when a bag exceeds the
// partition universe limit.
SolveOutcome solve(const UnifiedInstance& u, const NiceDecomposition& nd,
                   const SolveOptions& options = {});

// Replays provenance from the root entry of a feasible solved outcome
// (keep_tables required) down to the set of taken edges, checks the
// subgraph invariants (even degrees, connectivity, waypoint coverage,
// weight), and returns an Euler tour of it from the unified root.
UnifiedWalk reconstruct(const UnifiedInstance& u, const NiceDecomposition& nd,
                        const SolveOutcome& outcome);

}  // namespace wrp
