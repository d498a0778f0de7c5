#include "report.hpp"

#include <iomanip>
#include <sstream>

namespace wrp::cli {

namespace {

std::string fmt_ms(double ms) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << ms;
  return out.str();
}

}  // namespace

void print_human(const RunReport& rep, std::ostream& out) {
  out << "# instance: n=" << rep.n << " m=" << rep.m << " source=" << rep.source
      << " target=" << rep.target << " waypoints=" << rep.waypoint_count << "\n";
  if (rep.reached_unified) {
    out << "# unified: n=" << rep.unified_n << " edges=" << rep.unified_edges
        << " waypoints=" << rep.unified_waypoints << " gadget=" << (rep.gadget ? "yes" : "no")
        << "\n";
  }
  if (rep.reached_decomposition) {
    out << "# decomposition: source=" << rep.decomposition_source << " width=" << rep.width
        << " nice_nodes=" << rep.nice_nodes << " max_bag=" << rep.max_bag << "\n";
  }
  if (rep.stats) {
    out << "# tables: rows=" << rep.stats->rows_computed << " entries=" << rep.stats->total_entries
        << " max_row_entries=" << rep.stats->max_row_entries
        << " reduce_calls=" << rep.stats->reduce_calls << "\n";
  }
  out << "# timings_ms:";
  if (rep.parse_ms) out << " parse=" << fmt_ms(*rep.parse_ms);
  if (rep.unify_ms) out << " unify=" << fmt_ms(*rep.unify_ms);
  if (rep.decompose_ms) out << " decompose=" << fmt_ms(*rep.decompose_ms);
  if (rep.solve_ms) out << " solve=" << fmt_ms(*rep.solve_ms);
  if (rep.reconstruct_ms) out << " reconstruct=" << fmt_ms(*rep.reconstruct_ms);
  out << "\n";
  out << "# threads: " << rep.threads << "\n";
  if (rep.cost) {
    out << "cost " << *rep.cost << "\n";
    if (rep.walk) {
      out << "walk";
      for (std::uint32_t v : rep.walk->vertices) out << ' ' << v;
      out << "\n";
    }
  } else {
    out << "infeasible: " << rep.infeasible_reason << "\n";
  }
}

nlohmann::json to_json(const RunReport& rep) {
  using nlohmann::json;
  json j;
  j["instance"] = {{"n", rep.n},
                   {"m", rep.m},
                   {"source", rep.source},
                   {"target", rep.target},
                   {"waypoints", rep.waypoint_count}};
  j["unified"] = nullptr;
  if (rep.reached_unified) {
    j["unified"] = {{"n", rep.unified_n},
                    {"edges", rep.unified_edges},
                    {"waypoints", rep.unified_waypoints},
                    {"gadget", rep.gadget}};
  }
  j["decomposition"] = nullptr;
  if (rep.reached_decomposition) {
    j["decomposition"] = {{"source", rep.decomposition_source},
                          {"width", rep.width},
                          {"nice_nodes", rep.nice_nodes},
                          {"max_bag", rep.max_bag}};
  }
  j["answer"] = {{"feasible", rep.cost.has_value()},
                 {"cost", nullptr},
                 {"reason", nullptr}};
  if (rep.cost) {
    j["answer"]["cost"] = *rep.cost;
  } else {
    j["answer"]["reason"] = rep.infeasible_reason;
  }
  j["walk"] = nullptr;
  if (rep.walk) {
    j["walk"] = {{"cost", rep.walk->cost}, {"vertices", rep.walk->vertices}};
  }
  j["tables"] = nullptr;
  if (rep.stats) {
    j["tables"] = {{"rows", rep.stats->rows_computed},
                   {"entries", rep.stats->total_entries},
                   {"max_row_entries", rep.stats->max_row_entries},
                   {"reduce_calls", rep.stats->reduce_calls}};
  }
  auto ms_or_null = [](const std::optional<double>& ms) {
    return ms ? json(*ms) : json(nullptr);
  };
  j["timings_ms"] = {{"parse", ms_or_null(rep.parse_ms)},
                     {"unify", ms_or_null(rep.unify_ms)},
                     {"decompose", ms_or_null(rep.decompose_ms)},
                     {"solve", ms_or_null(rep.solve_ms)},
                     {"reconstruct", ms_or_null(rep.reconstruct_ms)}};
  j["threads"] = rep.threads;
  return j;
}

}  // namespace wrp::cli
