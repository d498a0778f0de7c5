#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"
#include "wrp/dp.hpp"
#include "wrp/walk.hpp"

namespace wrp::cli {

// Everything the solve command learns along the pipeline, in original
// instance terms. Phase fields stay unset when the run stopped earlier;
// the walk is present exactly when one was requested and the instance is
// feasible.
struct RunReport {
  std::uint32_t n = 0;
  std::size_t m = 0;
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  std::size_t waypoint_count = 0;

  bool reached_unified = false;
  std::uint32_t unified_n = 0;
  std::size_t unified_edges = 0;
  std::size_t unified_waypoints = 0;
  bool gadget = false;

  bool reached_decomposition = false;
  std::string decomposition_source;  // "heuristic" or "file"
  std::int64_t width = -1;
  std::size_t nice_nodes = 0;
  std::size_t max_bag = 0;

  std::optional<std::uint64_t> cost;  // gadget correction already applied
  std::string infeasible_reason;      // set exactly when cost is absent
  std::optional<OriginalWalk> walk;

  std::optional<SolveStats> stats;

  std::optional<double> parse_ms;
  std::optional<double> unify_ms;
  std::optional<double> decompose_ms;
  std::optional<double> solve_ms;
  std::optional<double> reconstruct_ms;
  std::uint32_t threads = 1;
};

// '#' info lines followed by the machine-readable tail: either 'cost <c>'
// (plus 'walk <v...>' when present) or 'infeasible: <reason>'. The tail is
// exactly the walk file format, so a report can be piped back into verify.
void print_human(const RunReport& rep, std::ostream& out);

// Fixed-schema object; unreached phases become null, never missing keys.
nlohmann::json to_json(const RunReport& rep);

}  // namespace wrp::cli
