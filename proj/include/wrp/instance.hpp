#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wrp/errors.hpp"

namespace wrp {

// One undirected edge of a simple graph, stored with u < v.
struct EdgeSpec {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  std::uint32_t capacity = 1;
  std::uint64_t weight = 0;

  bool operator==(const EdgeSpec&) const = default;
};

// A routing instance: simple capacitated weighted graph, source/target pair
// and a set of waypoint vertices. Vertices are dense ids 0..n-1.
//
// Instances parsed or generated by this library are canonical: edge endpoints
// ordered u < v, edges sorted by (u, v), waypoints sorted and duplicate-free.
struct Instance {
  std::uint32_t n = 0;
  std::vector<EdgeSpec> edges;
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  std::vector<std::uint32_t> waypoints;

  bool operator==(const Instance&) const = default;
};

// Parses the instance text format:
//   wrp <n> <m>
//   e <u> <v> <capacity> <weight>   (m lines)
//   s <v>
//   t <v>
//   w <v1> <v2> ...                 (possibly empty list)
// '#' starts a comment; tokens are whitespace-separated decimal integers.
// Throws ParseError on malformed input or invariant violations.
Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);

// Returns the list of violated invariants, empty if the instance is valid.
std::vector<std::string> validate(const Instance& inst);

// Writes the canonical text form. parse_instance(write_instance(x)) == x for
// every valid instance.
void write_instance(const Instance& inst, std::ostream& out);
std::string write_instance(const Instance& inst);

}  // namespace wrp
