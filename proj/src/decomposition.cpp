#include "wrp/decomposition.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "parse_util.hpp"
#include "wrp/errors.hpp"
#include "wrp/partitions.hpp"

namespace wrp {

std::int64_t TreeDecomposition::width() const {
  std::int64_t w = -1;
  for (const auto& b : bags) w = std::max<std::int64_t>(w, static_cast<std::int64_t>(b.size()) - 1);
  return w;
}

TreeDecomposition parse_td(std::istream& in) {
  TreeDecomposition td;
  bool seen_header = false;
  std::uint32_t declared_bags = 0, declared_maxbag = 0, declared_n = 0;
  std::vector<bool> bag_defined;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = parse_util::tokenize(line, '\0');
    if (toks.empty() || toks[0] == "c") continue;
    if (toks[0] == "s") {
      if (seen_header) throw ParseError(lineno, "duplicate 's' header");
      std::size_t at = 1;
      if (at < toks.size() && toks[at] == "td") ++at;  // PACE writes a literal token here
      if (toks.size() - at != 3) throw ParseError(lineno, "header must be 's [td] <bags> <max bag size> <n>'");
      declared_bags = parse_util::parse_u32(toks[at], lineno, "bag count");
      declared_maxbag = parse_util::parse_u32(toks[at + 1], lineno, "max bag size");
      declared_n = parse_util::parse_u32(toks[at + 2], lineno, "vertex count");
      td.bags.assign(declared_bags, {});
      bag_defined.assign(declared_bags, false);
      seen_header = true;
      continue;
    }
    if (!seen_header) throw ParseError(lineno, "expected 's' header before '" + std::string(toks[0]) + "'");
    if (toks[0] == "b") {
      if (toks.size() < 2) throw ParseError(lineno, "bag line must be 'b <id> <v...>'");
      std::uint32_t id = parse_util::parse_u32(toks[1], lineno, "bag id");
      if (id == 0 || id > declared_bags) throw ParseError(lineno, "bag id '" + std::string(toks[1]) + "' out of range");
      if (bag_defined[id - 1]) throw ParseError(lineno, "bag " + std::to_string(id) + " defined twice");
      bag_defined[id - 1] = true;
      auto& bag = td.bags[id - 1];
      for (std::size_t i = 2; i < toks.size(); ++i) {
        std::uint32_t v = parse_util::parse_u32(toks[i], lineno, "vertex id");
        if (v == 0 || v > declared_n) throw ParseError(lineno, "vertex id '" + std::string(toks[i]) + "' out of range");
        bag.push_back(v - 1);
      }
      std::sort(bag.begin(), bag.end());
      if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
        throw ParseError(lineno, "bag " + std::to_string(id) + " repeats a vertex");
      }
      continue;
    }
    if (toks.size() != 2) throw ParseError(lineno, "tree edge line must be '<id1> <id2>'");
    std::uint32_t a = parse_util::parse_u32(toks[0], lineno, "bag id");
    std::uint32_t b = parse_util::parse_u32(toks[1], lineno, "bag id");
    if (a == 0 || a > declared_bags || b == 0 || b > declared_bags) {
      throw ParseError(lineno, "tree edge endpoint out of range");
    }
    td.tree_edges.emplace_back(a - 1, b - 1);
  }
  if (!seen_header) throw ParseError(lineno ? lineno : 1, "missing 's' header");
  for (std::uint32_t i = 0; i < declared_bags; ++i) {
    if (!bag_defined[i]) throw ParseError(lineno, "bag " + std::to_string(i + 1) + " has no 'b' line");
  }
  if (td.width() + 1 != static_cast<std::int64_t>(declared_maxbag)) {
    throw ParseError(lineno, "header declares max bag size " + std::to_string(declared_maxbag) + ", found " +
                                 std::to_string(td.width() + 1));
  }
  return td;
}

TreeDecomposition parse_td(const std::string& text) {
  std::istringstream in(text);
  return parse_td(in);
}

std::vector<std::string> validate_td(const TreeDecomposition& td, const UnifiedInstance& u) {
  std::vector<std::string> out;
  std::vector<std::vector<std::uint32_t>> bags = td.bags;
  for (auto& b : bags) std::sort(b.begin(), b.end());
  auto in_bag = [&](std::size_t node, std::uint32_t v) {
    return std::binary_search(bags[node].begin(), bags[node].end(), v);
  };

  for (const auto& b : bags) {
    for (std::uint32_t v : b) {
      if (v >= u.n) out.push_back("bag contains unknown vertex " + std::to_string(v));
    }
  }
  for (auto [a, b] : td.tree_edges) {
    if (a >= bags.size() || b >= bags.size()) {
      out.push_back("tree edge endpoint out of range");
      return out;
    }
  }

  // Property 1: every vertex occurs in some bag.
  std::vector<bool> seen(u.n, false);
  for (const auto& b : bags) {
    for (std::uint32_t v : b) {
      if (v < u.n) seen[v] = true;
    }
  }
  for (std::uint32_t v = 0; v < u.n; ++v) {
    if (!seen[v]) out.push_back("property 1 violated: vertex " + std::to_string(v) + " is in no bag");
  }

  // Property 2: both endpoints of every edge share a bag (copies collapse).
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const MultiEdge& e : u.multi_edges) pairs.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  for (auto [a, b] : pairs) {
    bool covered = false;
    for (std::size_t i = 0; i < bags.size() && !covered; ++i) {
      covered = in_bag(i, a) && in_bag(i, b);
    }
    if (!covered) {
      out.push_back("property 2 violated: edge {" + std::to_string(a) + "," + std::to_string(b) +
                    "} is covered by no bag");
    }
  }

  // Property 3: occurrences of each vertex induce a connected subtree.
  for (std::uint32_t v = 0; v < u.n; ++v) {
    std::size_t occ = 0, links = 0;
    for (const auto& b : bags) occ += std::binary_search(b.begin(), b.end(), v) ? 1 : 0;
    for (auto [a, b] : td.tree_edges) links += (in_bag(a, v) && in_bag(b, v)) ? 1 : 0;
    if (occ > 0 && links + 1 != occ) {
      out.push_back("property 3 violated: occurrences of vertex " + std::to_string(v) + " are disconnected");
    }
  }

  // The tree itself: connected and acyclic.
  if (bags.empty()) {
    out.push_back("decomposition has no bags");
  } else if (td.tree_edges.size() + 1 != bags.size()) {
    out.push_back("tree has " + std::to_string(td.tree_edges.size()) + " edges for " +
                  std::to_string(bags.size()) + " bags");
  } else {
    std::vector<std::vector<std::uint32_t>> adj(bags.size());
    for (auto [a, b] : td.tree_edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<bool> reach(bags.size(), false);
    std::vector<std::uint32_t> stack{0};
    reach[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      std::uint32_t x = stack.back();
      stack.pop_back();
      for (std::uint32_t y : adj[x]) {
        if (!reach[y]) {
          reach[y] = true;
          ++count;
          stack.push_back(y);
        }
      }
    }
    if (count != bags.size()) out.push_back("tree is disconnected");
  }
  return out;
}

TreeDecomposition read_td(std::istream& in, const UnifiedInstance& u) {
  TreeDecomposition td = parse_td(in);
  for (const auto& b : td.bags) {
    if (b.size() > Universe::kMaxUniverse) {
      throw BudgetError("bag of size " + std::to_string(b.size()) + " exceeds the budget of " +
                        std::to_string(Universe::kMaxUniverse));
    }
  }
  auto violations = validate_td(td, u);
  if (!violations.empty()) {
    std::string msg = "invalid tree decomposition:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw Error(msg);
  }
  return td;
}

TreeDecomposition heuristic_decompose(const UnifiedInstance& u) {
  const std::uint32_t n = u.n;
  std::vector<std::set<std::uint32_t>> adj(n);
  for (const MultiEdge& e : u.multi_edges) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }

  auto fill_of = [&](std::uint32_t v) {
    std::uint64_t missing = 0;
    for (auto it = adj[v].begin(); it != adj[v].end(); ++it) {
      for (auto jt = std::next(it); jt != adj[v].end(); ++jt) {
        if (!adj[*it].count(*jt)) ++missing;
      }
    }
    return missing;
  };

  // fill[] and deg[] mirror the keys currently stored in the candidate
  // set, so stale keys can be erased exactly.
  std::vector<std::uint64_t> fill(n);
  std::vector<std::size_t> deg(n);
  std::set<std::tuple<std::uint64_t, std::size_t, std::uint32_t>> candidates;
  for (std::uint32_t v = 0; v < n; ++v) {
    fill[v] = fill_of(v);
    deg[v] = adj[v].size();
    candidates.insert({fill[v], deg[v], v});
  }

  std::vector<bool> done(n, false);
  std::vector<std::uint32_t> elim_pos(n, 0);
  std::vector<std::vector<std::uint32_t>> elim_bags(n);
  std::vector<std::vector<std::uint32_t>> elim_nbrs(n);

  for (std::uint32_t step = 0; step < n; ++step) {
    auto [f, d, v] = *candidates.begin();
    candidates.erase(candidates.begin());
    done[v] = true;
    elim_pos[v] = step;
    std::vector<std::uint32_t> nbrs(adj[v].begin(), adj[v].end());
    elim_nbrs[step] = nbrs;
    elim_bags[step] = nbrs;
    elim_bags[step].push_back(v);
    std::sort(elim_bags[step].begin(), elim_bags[step].end());

    // Fill counts change for the neighbors and for common neighbors of
    // every clique pair added below; collect them before mutating.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> new_pairs;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (!adj[nbrs[i]].count(nbrs[j])) new_pairs.emplace_back(nbrs[i], nbrs[j]);
      }
    }
    std::set<std::uint32_t> affected(nbrs.begin(), nbrs.end());
    for (auto [x, y] : new_pairs) {
      const auto& smaller = adj[x].size() <= adj[y].size() ? adj[x] : adj[y];
      const auto& larger = adj[x].size() <= adj[y].size() ? adj[y] : adj[x];
      for (std::uint32_t w : smaller) {
        if (larger.count(w)) affected.insert(w);
      }
    }
    for (auto [x, y] : new_pairs) {
      adj[x].insert(y);
      adj[y].insert(x);
    }
    for (std::uint32_t nb : nbrs) adj[nb].erase(v);
    adj[v].clear();

    for (std::uint32_t w : affected) {
      if (done[w]) continue;
      candidates.erase({fill[w], deg[w], w});
      fill[w] = fill_of(w);
      deg[w] = adj[w].size();
      candidates.insert({fill[w], deg[w], w});
    }
  }

  TreeDecomposition td;
  td.bags = std::move(elim_bags);
  for (std::uint32_t step = 0; step < n; ++step) {
    const auto& nbrs = elim_nbrs[step];
    if (nbrs.empty()) continue;  // only the last surviving vertex, the root bag
    std::uint32_t first = nbrs[0];
    for (std::uint32_t w : nbrs) {
      if (elim_pos[w] < elim_pos[first]) first = w;
    }
    td.tree_edges.emplace_back(step, elim_pos[first]);
  }
  return td;
}

TreeDecomposition transfer_td(const TreeDecomposition& td, const Instance& inst, const UnifiedInstance& u) {
  std::vector<std::uint32_t> to_new(inst.n, kNoOriginal);
  for (std::uint32_t v = 0; v < u.to_original.size(); ++v) {
    if (u.to_original[v] != kNoOriginal) to_new[u.to_original[v]] = v;
  }
  TreeDecomposition out;
  out.tree_edges = td.tree_edges;
  out.bags.reserve(td.bags.size());
  for (const auto& bag : td.bags) {
    std::vector<std::uint32_t> mapped;
    for (std::uint32_t v : bag) {
      if (v < inst.n && to_new[v] != kNoOriginal) mapped.push_back(to_new[v]);
    }
    if (u.gadget) mapped.push_back(u.gadget->vertex);
    std::sort(mapped.begin(), mapped.end());
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
    out.bags.push_back(std::move(mapped));
  }
  return out;
}

namespace {

std::vector<std::uint32_t> with_vertex(std::vector<std::uint32_t> bag, std::uint32_t v) {
  bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
  return bag;
}

std::vector<std::uint32_t> minus_vertex(std::vector<std::uint32_t> bag, std::uint32_t v) {
  bag.erase(std::find(bag.begin(), bag.end(), v));
  return bag;
}

// Elements of a not in b; both sorted.
std::vector<std::uint32_t> bag_difference(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct NiceBuilder {
  std::vector<NiceNode> tmp;

  std::uint32_t add(NodeKind kind, std::uint32_t payload, std::vector<std::uint32_t> bag,
                    std::uint32_t c0 = kNoChild, std::uint32_t c1 = kNoChild) {
    NiceNode node;
    node.kind = kind;
    node.payload = payload;
    node.bag = std::move(bag);
    node.children = {c0, c1};
    tmp.push_back(std::move(node));
    return static_cast<std::uint32_t>(tmp.size() - 1);
  }
};

}  // namespace

NiceDecomposition make_nice(const TreeDecomposition& td, const UnifiedInstance& u) {
  if (td.bags.empty()) throw InternalError("make_nice on an empty decomposition");
  const std::uint32_t s = u.root;

  // Root vertex joins every bag.
  std::vector<std::vector<std::uint32_t>> aug(td.bags.size());
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    aug[i] = td.bags[i];
    if (!std::binary_search(aug[i].begin(), aug[i].end(), s)) aug[i] = with_vertex(std::move(aug[i]), s);
  }

  // Root the original tree at node 0; children sorted for reproducibility.
  std::vector<std::vector<std::uint32_t>> adj(td.bags.size());
  for (auto [a, b] : td.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  std::vector<std::uint32_t> order;  // BFS from the root
  std::vector<std::uint32_t> parent_orig(td.bags.size(), kNoChild);
  std::vector<bool> visited(td.bags.size(), false);
  order.push_back(0);
  visited[0] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    std::uint32_t x = order[head];
    for (std::uint32_t y : adj[x]) {
      if (!visited[y]) {
        visited[y] = true;
        parent_orig[y] = x;
        order.push_back(y);
      }
    }
  }
  if (order.size() != td.bags.size()) throw InternalError("make_nice on a disconnected decomposition");

  // Children before parents: walk the BFS order backwards, building one
  // strand per original node whose top bag equals the augmented bag.
  NiceBuilder b;
  std::vector<std::uint32_t> strand_top(td.bags.size(), kNoChild);
  std::vector<std::vector<std::uint32_t>> children_of(td.bags.size());
  for (std::uint32_t x : order) {
    if (parent_orig[x] != kNoChild) children_of[parent_orig[x]].push_back(x);
  }
  for (std::size_t i = order.size(); i-- > 0;) {
    std::uint32_t x = order[i];
    std::uint32_t cur;
    if (children_of[x].empty()) {
      cur = b.add(NodeKind::Leaf, 0, {s});
      for (std::uint32_t v : aug[x]) {
        if (v == s) continue;
        cur = b.add(NodeKind::IntroduceVertex, v, with_vertex(b.tmp[cur].bag, v), cur);
      }
    } else {
      std::vector<std::uint32_t> lifted;
      for (std::uint32_t c : children_of[x]) {
        std::uint32_t top = strand_top[c];
        for (std::uint32_t v : bag_difference(aug[c], aug[x])) {
          top = b.add(NodeKind::Forget, v, minus_vertex(b.tmp[top].bag, v), top);
        }
        for (std::uint32_t v : bag_difference(aug[x], aug[c])) {
          top = b.add(NodeKind::IntroduceVertex, v, with_vertex(b.tmp[top].bag, v), top);
        }
        lifted.push_back(top);
      }
      cur = lifted[0];
      for (std::size_t k = 1; k < lifted.size(); ++k) {
        cur = b.add(NodeKind::Join, 0, aug[x], cur, lifted[k]);
      }
    }
    strand_top[x] = cur;
  }
  std::uint32_t top = strand_top[0];
  for (std::uint32_t v : aug[0]) {
    if (v == s) continue;
    top = b.add(NodeKind::Forget, v, minus_vertex(b.tmp[top].bag, v), top);
  }
  const std::uint32_t root = top;

  // Vertex regions: each vertex except s has exactly one highest node, the
  // child of its forget node; edges hang off the lower of their endpoints'
  // highest nodes.
  std::vector<std::uint32_t> parent(b.tmp.size(), kNoChild);
  std::vector<std::uint32_t> depth(b.tmp.size(), 0);
  {
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
      std::uint32_t x = stack.back();
      stack.pop_back();
      for (std::uint32_t c : b.tmp[x].children) {
        if (c == kNoChild) continue;
        parent[c] = x;
        depth[c] = depth[x] + 1;
        stack.push_back(c);
      }
    }
  }
  std::vector<std::uint32_t> top_of(u.n, kNoChild);
  for (std::uint32_t x = 0; x < b.tmp.size(); ++x) {
    for (std::uint32_t v : b.tmp[x].bag) {
      bool boundary = parent[x] == kNoChild ||
                      !std::binary_search(b.tmp[parent[x]].bag.begin(), b.tmp[parent[x]].bag.end(), v);
      if (!boundary) continue;
      if (top_of[v] != kNoChild) throw InternalError("vertex " + std::to_string(v) + " has a split region");
      top_of[v] = x;
    }
  }

  std::map<std::uint32_t, std::vector<std::uint32_t>> edges_at;
  for (const MultiEdge& e : u.multi_edges) {
    std::uint32_t tu = top_of[e.u], tv = top_of[e.v];
    if (tu == kNoChild || tv == kNoChild) throw InternalError("edge endpoint missing from every bag");
    std::uint32_t site = depth[tu] >= depth[tv] ? tu : tv;
    const auto& bag = b.tmp[site].bag;
    if (!std::binary_search(bag.begin(), bag.end(), e.u) || !std::binary_search(bag.begin(), bag.end(), e.v)) {
      throw InternalError("no bag covers edge " + std::to_string(e.id));
    }
    edges_at[site].push_back(e.id);
  }
  for (auto& [site, ids] : edges_at) {
    std::sort(ids.begin(), ids.end());
    std::uint32_t below = site;
    std::uint32_t attach = parent[site];
    if (attach == kNoChild) throw InternalError("edge introduction above the root");
    for (std::uint32_t id : ids) {
      below = b.add(NodeKind::IntroduceEdge, id, b.tmp[site].bag, below);
    }
    for (std::uint32_t& c : b.tmp[attach].children) {
      if (c == site) {
        c = below;
        break;
      }
    }
  }

  // Emit children-before-parents via an explicit post-order walk.
  NiceDecomposition nd;
  nd.nodes.reserve(b.tmp.size());
  std::vector<std::uint32_t> remap(b.tmp.size(), kNoChild);
  std::vector<std::pair<std::uint32_t, std::uint8_t>> stack{{root, 0}};
  while (!stack.empty()) {
    auto& [x, phase] = stack.back();
    if (phase < 2) {
      std::uint32_t c = b.tmp[x].children[phase];
      ++phase;
      if (c != kNoChild) stack.emplace_back(c, 0);
      continue;
    }
    stack.pop_back();
    NiceNode node = b.tmp[x];
    for (std::uint32_t& c : node.children) {
      if (c != kNoChild) c = remap[c];
    }
    remap[x] = static_cast<std::uint32_t>(nd.nodes.size());
    nd.nodes.push_back(std::move(node));
  }
  nd.root = remap[root];
  return nd;
}

std::vector<std::string> validate_nice(const NiceDecomposition& nd, const UnifiedInstance& u) {
  std::vector<std::string> out;
  if (nd.nodes.empty()) {
    out.push_back("no nodes");
    return out;
  }
  if (nd.root != nd.nodes.size() - 1) out.push_back("root is not the last node");
  std::vector<std::uint32_t> ref_count(nd.nodes.size(), 0);
  auto has = [](const std::vector<std::uint32_t>& bag, std::uint32_t v) {
    return std::binary_search(bag.begin(), bag.end(), v);
  };

  for (std::uint32_t x = 0; x < nd.nodes.size(); ++x) {
    const NiceNode& node = nd.nodes[x];
    if (!std::is_sorted(node.bag.begin(), node.bag.end())) out.push_back("bag not sorted at node " + std::to_string(x));
    if (!has(node.bag, u.root)) out.push_back("root vertex missing from bag of node " + std::to_string(x));
    for (std::uint32_t v : node.bag) {
      if (v >= u.n) out.push_back("unknown vertex in bag of node " + std::to_string(x));
    }
    std::size_t arity = 0;
    for (std::uint32_t c : node.children) {
      if (c == kNoChild) continue;
      ++arity;
      if (c >= x) {
        out.push_back("child after parent at node " + std::to_string(x));
        return out;
      }
      ++ref_count[c];
    }
    const NiceNode* c0 = arity >= 1 ? &nd.nodes[node.children[0]] : nullptr;
    switch (node.kind) {
      case NodeKind::Leaf:
        if (arity != 0) out.push_back("leaf with children at node " + std::to_string(x));
        if (node.bag != std::vector<std::uint32_t>{u.root}) {
          out.push_back("leaf bag is not {root} at node " + std::to_string(x));
        }
        break;
      case NodeKind::IntroduceVertex:
        if (arity != 1) {
          out.push_back("introduce-vertex arity at node " + std::to_string(x));
        } else if (!has(node.bag, node.payload) || has(c0->bag, node.payload) ||
                   node.bag != with_vertex(c0->bag, node.payload)) {
          out.push_back("introduce-vertex bag relation at node " + std::to_string(x));
        }
        break;
      case NodeKind::IntroduceEdge: {
        if (node.payload >= u.multi_edges.size()) {
          out.push_back("unknown edge at node " + std::to_string(x));
          break;
        }
        const MultiEdge& e = u.multi_edges[node.payload];
        if (arity != 1) {
          out.push_back("introduce-edge arity at node " + std::to_string(x));
        } else if (node.bag != c0->bag || !has(node.bag, e.u) || !has(node.bag, e.v)) {
          out.push_back("introduce-edge bag relation at node " + std::to_string(x));
        }
        break;
      }
      case NodeKind::Forget:
        if (arity != 1) {
          out.push_back("forget arity at node " + std::to_string(x));
        } else if (has(node.bag, node.payload) || !has(c0->bag, node.payload) ||
                   with_vertex(node.bag, node.payload) != c0->bag) {
          out.push_back("forget bag relation at node " + std::to_string(x));
        }
        break;
      case NodeKind::Join:
        if (arity != 2) {
          out.push_back("join arity at node " + std::to_string(x));
        } else if (node.bag != c0->bag || node.bag != nd.nodes[node.children[1]].bag) {
          out.push_back("join children bags differ at node " + std::to_string(x));
        }
        break;
    }
  }
  for (std::uint32_t x = 0; x < nd.nodes.size(); ++x) {
    if (x != nd.root && ref_count[x] != 1) {
      out.push_back("node " + std::to_string(x) + " referenced " + std::to_string(ref_count[x]) + " times");
    }
  }
  if (ref_count[nd.root] != 0) out.push_back("root has a parent");
  if (nd.nodes[nd.root].bag != std::vector<std::uint32_t>{u.root}) out.push_back("root bag is not {root}");

  // Every vertex appears somewhere, and its nodes form a subtree.
  for (std::uint32_t v = 0; v < u.n; ++v) {
    std::size_t occ = 0, links = 0;
    for (std::uint32_t x = 0; x < nd.nodes.size(); ++x) {
      if (!has(nd.nodes[x].bag, v)) continue;
      ++occ;
      for (std::uint32_t c : nd.nodes[x].children) {
        if (c != kNoChild && has(nd.nodes[c].bag, v)) ++links;
      }
    }
    if (occ == 0) out.push_back("vertex " + std::to_string(v) + " is in no bag");
    else if (links + 1 != occ) out.push_back("vertex " + std::to_string(v) + " region is disconnected");
  }

  // Each multi-edge introduced exactly once.
  std::vector<std::uint32_t> intro_count(u.multi_edges.size(), 0);
  for (const NiceNode& node : nd.nodes) {
    if (node.kind == NodeKind::IntroduceEdge && node.payload < intro_count.size()) ++intro_count[node.payload];
  }
  for (std::uint32_t e = 0; e < intro_count.size(); ++e) {
    if (intro_count[e] != 1) {
      out.push_back("edge " + std::to_string(e) + " introduced " + std::to_string(intro_count[e]) + " times");
    }
  }
  return out;
}

}  // namespace wrp
