#include "wrp/unify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "wrp/errors.hpp"

namespace wrp {

std::variant<UnifiedInstance, Infeasible> unify(const Instance& inst) {
  // Restrict to the connected component of the source.
  std::vector<std::vector<std::uint32_t>> adj(inst.n);
  for (const EdgeSpec& e : inst.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> reach(inst.n, false);
  std::vector<std::uint32_t> stack{inst.source};
  reach[inst.source] = true;
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t nb : adj[v]) {
      if (!reach[nb]) {
        reach[nb] = true;
        stack.push_back(nb);
      }
    }
  }
  if (!reach[inst.target]) {
    return Infeasible{inst.target, "target " + std::to_string(inst.target) + " is unreachable from the source"};
  }
  for (std::uint32_t w : inst.waypoints) {
    if (!reach[w]) {
      return Infeasible{w, "waypoint " + std::to_string(w) + " is unreachable from the source"};
    }
  }

  // Dense relabeling of the surviving vertices, original order preserved.
  std::vector<std::uint32_t> to_new(inst.n, kNoOriginal);
  UnifiedInstance out;
  for (std::uint32_t v = 0; v < inst.n; ++v) {
    if (reach[v]) {
      to_new[v] = out.n++;
      out.to_original.push_back(v);
    }
  }

  // min(c(e), 2) parallel copies per surviving edge, ids grouped by edge.
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    const EdgeSpec& e = inst.edges[i];
    if (!reach[e.u]) continue;  // a component edge has both endpoints inside
    std::uint32_t copies = std::min<std::uint32_t>(e.capacity, 2);
    for (std::uint32_t c = 0; c < copies; ++c) {
      std::uint32_t id = static_cast<std::uint32_t>(out.multi_edges.size());
      out.multi_edges.push_back({id, to_new[e.u], to_new[e.v], e.weight, static_cast<std::uint32_t>(i)});
    }
  }

  std::uint32_t s = to_new[inst.source];
  std::uint32_t t = to_new[inst.target];
  out.waypoints.clear();
  for (std::uint32_t w : inst.waypoints) out.waypoints.push_back(to_new[w]);
  out.waypoints.push_back(s);
  out.waypoints.push_back(t);

  if (inst.source != inst.target) {
    std::uint32_t v = out.n++;
    out.to_original.push_back(kNoOriginal);
    std::uint32_t e1 = static_cast<std::uint32_t>(out.multi_edges.size());
    out.multi_edges.push_back({e1, s, v, 1, kGadgetOrigin});
    std::uint32_t e2 = static_cast<std::uint32_t>(out.multi_edges.size());
    out.multi_edges.push_back({e2, t, v, 1, kGadgetOrigin});
    out.gadget = GadgetInfo{v, e1, e2};
    out.root = v;
  } else {
    out.root = s;
  }
  out.waypoints.push_back(out.root);
  std::sort(out.waypoints.begin(), out.waypoints.end());
  out.waypoints.erase(std::unique(out.waypoints.begin(), out.waypoints.end()), out.waypoints.end());
  return out;
}

std::vector<std::string> validate_unified(const UnifiedInstance& u) {
  std::vector<std::string> out;
  if (u.n == 0) {
    out.push_back("no vertices");
    return out;
  }
  // Connectivity over the multigraph.
  std::vector<std::vector<std::uint32_t>> adj(u.n);
  for (const MultiEdge& e : u.multi_edges) {
    if (e.u >= u.n || e.v >= u.n) {
      out.push_back("edge " + std::to_string(e.id) + " endpoint out of range");
      return out;
    }
    if (e.u == e.v) out.push_back("edge " + std::to_string(e.id) + " is a self-loop");
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> reach(u.n, false);
  std::vector<std::uint32_t> stack{0};
  reach[0] = true;
  std::uint32_t seen = 1;
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t nb : adj[v]) {
      if (!reach[nb]) {
        reach[nb] = true;
        ++seen;
        stack.push_back(nb);
      }
    }
  }
  if (seen != u.n) out.push_back("multigraph is not connected");

  // Parallel-edge structure: at most two copies, equal weights.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<const MultiEdge*>> groups;
  for (const MultiEdge& e : u.multi_edges) {
    groups[{std::min(e.u, e.v), std::max(e.u, e.v)}].push_back(&e);
  }
  for (const auto& [key, copies] : groups) {
    if (copies.size() > 2) {
      out.push_back("more than two parallel edges between " + std::to_string(key.first) + " and " +
                    std::to_string(key.second));
    }
    for (const MultiEdge* e : copies) {
      if (e->weight != copies[0]->weight) {
        out.push_back("parallel edges between " + std::to_string(key.first) + " and " +
                      std::to_string(key.second) + " differ in weight");
        break;
      }
    }
  }

  if (u.root >= u.n) out.push_back("root out of range");
  if (!std::binary_search(u.waypoints.begin(), u.waypoints.end(), u.root)) {
    out.push_back("root is not a waypoint");
  }
  for (std::uint32_t w : u.waypoints) {
    if (w >= u.n) out.push_back("waypoint " + std::to_string(w) + " out of range");
  }
  return out;
}

OriginalWalk lift_walk(const UnifiedWalk& uw, const UnifiedInstance& u, const Instance& inst) {
  if (uw.vertices.empty() || uw.vertices.size() != uw.edges.size() + 1) {
    throw WalkError("walk must alternate vertices and edges");
  }
  if (uw.vertices.front() != u.root || uw.vertices.back() != u.root) {
    throw WalkError("walk is not closed at the root");
  }
  std::set<std::uint32_t> used;
  for (std::size_t i = 0; i < uw.edges.size(); ++i) {
    std::uint32_t id = uw.edges[i];
    if (id >= u.multi_edges.size()) throw WalkError("unknown edge id " + std::to_string(id));
    const MultiEdge& e = u.multi_edges[id];
    std::uint32_t a = uw.vertices[i], b = uw.vertices[i + 1];
    if (!((e.u == a && e.v == b) || (e.u == b && e.v == a))) {
      throw WalkError("edge " + std::to_string(id) + " does not join step " + std::to_string(i));
    }
    if (!used.insert(id).second) throw WalkError("edge " + std::to_string(id) + " used twice");
  }

  std::vector<std::uint32_t> seq = uw.vertices;
  std::uint64_t cost = uw.cost;
  if (u.gadget) {
    const GadgetInfo& g = *u.gadget;
    if (uw.edges.size() < 2 || uw.edges.front() == uw.edges.back()) {
      throw WalkError("walk does not enter and leave through the gadget");
    }
    bool first_is_source = uw.edges.front() == g.edge_to_source && uw.edges.back() == g.edge_to_target;
    bool first_is_target = uw.edges.front() == g.edge_to_target && uw.edges.back() == g.edge_to_source;
    if (!first_is_source && !first_is_target) {
      throw WalkError("walk does not enter and leave through the gadget");
    }
    seq.erase(seq.begin());
    seq.pop_back();
    if (!first_is_source) std::reverse(seq.begin(), seq.end());
    if (cost < 2) throw WalkError("gadget walk of cost below 2");
    cost -= 2;
  }

  OriginalWalk out;
  out.cost = cost;
  out.vertices.reserve(seq.size());
  for (std::uint32_t v : seq) {
    std::uint32_t orig = v < u.to_original.size() ? u.to_original[v] : kNoOriginal;
    if (orig == kNoOriginal || orig >= inst.n) {
      throw WalkError("walk visits the gadget vertex mid-way");
    }
    out.vertices.push_back(orig);
  }
  return out;
}

}  // namespace wrp
