#include "wrp/instance.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include "parse_util.hpp"

namespace wrp {

namespace {

using parse_util::parse_u32;
using parse_util::parse_u64;

std::vector<std::string_view> tokenize(std::string_view line) {
  return parse_util::tokenize(line, '#');
}

std::uint32_t parse_vertex(std::string_view tok, std::uint32_t n, int line, const char* what) {
  std::uint32_t v = parse_u32(tok, line, what);
  if (v >= n) {
    throw ParseError(line, std::string(what) + " out of range: '" + std::string(tok) +
                               "' (vertices are 0.." + std::to_string(n ? n - 1 : 0) + ")");
  }
  return v;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  Instance inst;
  bool seen_header = false, seen_s = false, seen_t = false, seen_w = false;
  std::uint32_t declared_m = 0;
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen_edges;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    std::string_view kind = toks[0];

    if (kind == "wrp") {
      if (seen_header) throw ParseError(lineno, "duplicate header line");
      if (toks.size() != 3) throw ParseError(lineno, "header must be 'wrp <n> <m>'");
      inst.n = parse_u32(toks[1], lineno, "vertex count");
      declared_m = parse_u32(toks[2], lineno, "edge count");
      if (inst.n == 0) throw ParseError(lineno, "vertex count must be >= 1");
      seen_header = true;
      continue;
    }
    if (!seen_header) throw ParseError(lineno, "expected 'wrp <n> <m>' header first");

    if (kind == "e") {
      if (toks.size() != 5) throw ParseError(lineno, "edge line must be 'e <u> <v> <capacity> <weight>'");
      EdgeSpec e;
      e.u = parse_vertex(toks[1], inst.n, lineno, "edge endpoint");
      e.v = parse_vertex(toks[2], inst.n, lineno, "edge endpoint");
      e.capacity = parse_u32(toks[3], lineno, "capacity");
      e.weight = parse_u64(toks[4], lineno, "weight");
      if (e.u == e.v) {
        throw ParseError(lineno, "self-loop at vertex '" + std::string(toks[1]) + "'");
      }
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.capacity == 0) {
        throw ParseError(lineno, "capacity must be >= 1, got '" + std::string(toks[3]) + "'");
      }
      if (!seen_edges.insert({e.u, e.v}).second) {
        throw ParseError(lineno, "duplicate edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
      }
      inst.edges.push_back(e);
    } else if (kind == "s") {
      if (seen_s) throw ParseError(lineno, "duplicate 's' line");
      if (toks.size() != 2) throw ParseError(lineno, "source line must be 's <v>'");
      inst.source = parse_vertex(toks[1], inst.n, lineno, "source");
      seen_s = true;
    } else if (kind == "t") {
      if (seen_t) throw ParseError(lineno, "duplicate 't' line");
      if (toks.size() != 2) throw ParseError(lineno, "target line must be 't <v>'");
      inst.target = parse_vertex(toks[1], inst.n, lineno, "target");
      seen_t = true;
    } else if (kind == "w") {
      if (seen_w) throw ParseError(lineno, "duplicate 'w' line");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        inst.waypoints.push_back(parse_vertex(toks[i], inst.n, lineno, "waypoint"));
      }
      seen_w = true;
    } else {
      throw ParseError(lineno, "unknown line kind '" + std::string(kind) + "'");
    }
  }

  if (!seen_header) throw ParseError(lineno ? lineno : 1, "missing 'wrp <n> <m>' header");
  if (inst.edges.size() != declared_m) {
    throw ParseError(lineno, "header declares " + std::to_string(declared_m) + " edges, found " +
                                 std::to_string(inst.edges.size()));
  }
  if (!seen_s) throw ParseError(lineno, "missing 's <v>' line");
  if (!seen_t) throw ParseError(lineno, "missing 't <v>' line");
  if (!seen_w) throw ParseError(lineno, "missing 'w ...' line");

  std::sort(inst.edges.begin(), inst.edges.end(),
            [](const EdgeSpec& a, const EdgeSpec& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  std::sort(inst.waypoints.begin(), inst.waypoints.end());
  inst.waypoints.erase(std::unique(inst.waypoints.begin(), inst.waypoints.end()), inst.waypoints.end());
  return inst;
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.n == 0) out.push_back("vertex count must be >= 1");
  auto check_vertex = [&](std::uint64_t v, const std::string& what) {
    if (v >= inst.n) out.push_back(what + " " + std::to_string(v) + " out of range");
  };
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const EdgeSpec& e : inst.edges) {
    check_vertex(e.u, "edge endpoint");
    check_vertex(e.v, "edge endpoint");
    if (e.u == e.v) out.push_back("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) out.push_back("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} not stored with u < v");
    if (e.capacity == 0) out.push_back("capacity must be >= 1 on edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert({key.first, key.second}).second) {
      out.push_back("duplicate edge {" + std::to_string(key.first) + "," + std::to_string(key.second) + "}");
    }
  }
  check_vertex(inst.source, "source");
  check_vertex(inst.target, "target");
  for (std::uint32_t w : inst.waypoints) check_vertex(w, "waypoint");
  return out;
}

void write_instance(const Instance& inst, std::ostream& out) {
  std::vector<EdgeSpec> edges = inst.edges;
  std::sort(edges.begin(), edges.end(),
            [](const EdgeSpec& a, const EdgeSpec& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  out << "wrp " << inst.n << ' ' << edges.size() << '\n';
  for (const EdgeSpec& e : edges) {
    out << "e " << e.u << ' ' << e.v << ' ' << e.capacity << ' ' << e.weight << '\n';
  }
  out << "s " << inst.source << '\n';
  out << "t " << inst.target << '\n';
  out << "w";
  for (std::uint32_t w : inst.waypoints) out << ' ' << w;
  out << '\n';
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  write_instance(inst, out);
  return out.str();
}

}  // namespace wrp
