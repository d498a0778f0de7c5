#include "wrp/dp.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstddef>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dsu.hpp"
#include "wrp/errors.hpp"

namespace wrp {

namespace {

// Removes the bit at position pos; higher bits shift down one place.
std::uint32_t mask_drop_position(std::uint32_t mask, std::size_t pos) {
  std::uint64_t wide = mask;
  std::uint64_t low = wide & ((std::uint64_t{1} << pos) - 1);
  std::uint64_t high = wide >> (pos + 1);
  return static_cast<std::uint32_t>(low | (high << pos));
}

// Inserts a bit at position pos; bits at pos and above shift up one place.
std::uint32_t mask_insert_position(std::uint32_t mask, std::size_t pos, bool bit) {
  std::uint64_t wide = mask;
  std::uint64_t low = wide & ((std::uint64_t{1} << pos) - 1);
  std::uint64_t high = wide >> pos;
  return static_cast<std::uint32_t>(low | (std::uint64_t{bit} << pos) | (high << (pos + 1)));
}

std::size_t bag_position(const std::vector<std::uint32_t>& bag, std::uint32_t v) {
  auto it = std::lower_bound(bag.begin(), bag.end(), v);
  if (it == bag.end() || *it != v) {
    throw InternalError("dp: vertex " + std::to_string(v) + " missing from its bag");
  }
  return static_cast<std::size_t>(it - bag.begin());
}

// Copy of a row with each entry's tag replaced by its own index. The algebra
// operators keep tags untouched, so the indices ride through them and come
// out as back-pointers into the child row.
WpsT<Prov> indexed(const WpsT<Prov>& row, ProvKind kind) {
  WpsT<Prov> out;
  out.universe = row.universe;
  out.entries.reserve(row.entries.size());
  for (std::size_t i = 0; i < row.entries.size(); ++i) {
    out.entries.push_back({row.entries[i].partition, row.entries[i].weight,
                           Prov{kind, static_cast<std::uint32_t>(i), 0, 0}});
  }
  return out;
}

const WpsT<Prov>* find_row(const DpTable& table, std::uint32_t x_mask, std::uint32_t l_mask) {
  auto it = table.find({x_mask, l_mask});
  return it == table.end() ? nullptr : &it->second;
}

WpsT<Prov> compute_row(const UnifiedInstance& u, const NiceDecomposition& nd,
                       const DpTables& tables, std::uint32_t ni, std::uint32_t x_mask,
                       std::uint32_t l_mask) {
  const NiceNode& node = nd.nodes[ni];
  switch (node.kind) {
    case NodeKind::Leaf: {
      // Bag {root}: the selected singleton with even degree, weight zero.
      if (l_mask != 0) return {};
      WpsT<Prov> row;
      row.universe = Universe({node.bag[0]});
      row.entries.push_back({Partition::singletons(1), 0, Prov{}});
      return row;
    }
    case NodeKind::IntroduceVertex: {
      std::size_t pos = bag_position(node.bag, node.payload);
      std::uint32_t bit = std::uint32_t{1} << pos;
      // A vertex cannot have odd degree the moment it appears.
      if (l_mask & bit) return {};
      const DpTable& child = tables[node.children[0]];
      const WpsT<Prov>* base =
          find_row(child, mask_drop_position(x_mask, pos), mask_drop_position(l_mask, pos));
      if (!base) return {};
      if (x_mask & bit) return ins({node.payload}, indexed(*base, ProvKind::Ins));
      return indexed(*base, ProvKind::Copy);
    }
    case NodeKind::IntroduceEdge: {
      const MultiEdge& e = u.multi_edges[node.payload];
      std::uint32_t bits = (std::uint32_t{1} << bag_position(node.bag, e.u)) |
                           (std::uint32_t{1} << bag_position(node.bag, e.v));
      const DpTable& child = tables[node.children[0]];
      if ((x_mask & bits) != bits) {
        // The edge can only enter subgraphs selecting both endpoints.
        const WpsT<Prov>* base = find_row(child, x_mask, l_mask);
        return base ? indexed(*base, ProvKind::Copy) : WpsT<Prov>{};
      }
      const WpsT<Prov>* skip = find_row(child, x_mask, l_mask);
      const WpsT<Prov>* take = find_row(child, x_mask, l_mask ^ bits);
      WpsT<Prov> out;
      if (skip) out = indexed(*skip, ProvKind::EdgeSkip);
      if (take) {
        // Taking the edge flips both endpoint parities and merges their blocks.
        WpsT<Prov> taken = glue_w(e.u, e.v, e.weight, indexed(*take, ProvKind::EdgeTake));
        out = skip ? mincup(std::move(out), taken) : std::move(taken);
      }
      return out;
    }
    case NodeKind::Forget: {
      const NiceNode& child_node = nd.nodes[node.children[0]];
      std::size_t vpos = bag_position(child_node.bag, node.payload);
      const DpTable& child = tables[node.children[0]];
      std::uint32_t child_l = mask_insert_position(l_mask, vpos, false);
      const WpsT<Prov>* plain =
          find_row(child, mask_insert_position(x_mask, vpos, false), child_l);
      const WpsT<Prov>* selected =
          find_row(child, mask_insert_position(x_mask, vpos, true), child_l);
      WpsT<Prov> dropped;
      if (selected) {
        // proj discards entries where the vertex was a block of its own:
        // those subgraphs can never reconnect it to the rest.
        dropped = proj({node.payload}, indexed(*selected, ProvKind::ForgetProj));
      }
      if (plain && !dropped.entries.empty()) {
        return mincup(indexed(*plain, ProvKind::ForgetPlain), dropped);
      }
      if (plain) return indexed(*plain, ProvKind::ForgetPlain);
      return dropped;
    }
    case NodeKind::Join: {
      const DpTable& left = tables[node.children[0]];
      const DpTable& right = tables[node.children[1]];
      // Split the odd set over the two sides in every way: L = L_y xor L_z.
      WpsT<Prov> acc;
      bool have = false;
      std::uint32_t ly = 0;
      while (true) {
        const WpsT<Prov>* a = find_row(left, x_mask, ly);
        const WpsT<Prov>* b = find_row(right, x_mask, l_mask ^ ly);
        if (a && b) {
          std::uint32_t left_l = ly;
          WpsT<Prov> part = join(indexed(*a, ProvKind::Join), indexed(*b, ProvKind::Join),
                                 [left_l](const Prov& ta, const Prov& tb) {
                                   return Prov{ProvKind::Join, ta.a, tb.a, left_l};
                                 });
          if (!have) {
            acc = std::move(part);
            have = true;
          } else {
            acc = mincup(std::move(acc), part);
          }
        }
        if (ly == x_mask) break;
        ly = (ly - x_mask) & x_mask;
      }
      return acc;
    }
  }
  throw InternalError("dp: unhandled node kind");
}

void check_shape(const UnifiedInstance& u, const NiceDecomposition& nd) {
  if (nd.nodes.empty()) throw InternalError("solve: empty decomposition");
  if (nd.root != nd.nodes.size() - 1) throw InternalError("solve: root must be the last node");
  for (std::uint32_t ni = 0; ni < nd.nodes.size(); ++ni) {
    const NiceNode& node = nd.nodes[ni];
    if (node.bag.empty()) throw InternalError("solve: empty bag at node " + std::to_string(ni));
    if (node.bag.size() > Universe::kMaxUniverse) {
      throw BudgetError("solve: bag of " + std::to_string(node.bag.size()) +
                        " vertices exceeds the limit of " + std::to_string(Universe::kMaxUniverse));
    }
    for (std::uint32_t c : node.children) {
      if (c != kNoChild && c >= ni) {
        throw InternalError("solve: children must precede parents");
      }
    }
    if (node.kind == NodeKind::Leaf &&
        (node.bag.size() != 1 || node.bag[0] != u.root)) {
      throw InternalError("solve: leaf bag must be exactly the root vertex");
    }
    if (node.kind == NodeKind::IntroduceEdge && node.payload >= u.multi_edges.size()) {
      throw InternalError("solve: introduce-edge payload out of range");
    }
  }
  const NiceNode& root = nd.nodes[nd.root];
  if (root.bag.size() != 1 || root.bag[0] != u.root) {
    throw InternalError("solve: root bag must be exactly the root vertex");
  }
}

}  // namespace

SolveOutcome solve(const UnifiedInstance& u, const NiceDecomposition& nd,
                   const SolveOptions& options) {
  check_shape(u, nd);

  const simd::Gf2Kernels& kernels = options.kernels ? *options.kernels : simd::active_kernels();
  std::vector<char> is_waypoint(u.n, 0);
  for (std::uint32_t w : u.waypoints) is_waypoint[w] = 1;

  SolveOutcome outcome;
  SolveStats& stats = outcome.stats;
  DpTables tables(nd.nodes.size());

  struct RowResult {
    WpsT<Prov> row;
    std::size_t reduces = 0;
  };

  std::vector<DpRowKey> keys;
  for (std::uint32_t ni = 0; ni < nd.nodes.size(); ++ni) {
    const NiceNode& node = nd.nodes[ni];
    std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << node.bag.size()) - 1);
    std::uint32_t forced = 0;
    for (std::size_t pos = 0; pos < node.bag.size(); ++pos) {
      if (is_waypoint[node.bag[pos]]) forced |= std::uint32_t{1} << pos;
    }

    // Valid presignatures: X ⊇ bag waypoints, L ⊆ X, both ascending.
    keys.clear();
    std::uint32_t free = full & ~forced;
    std::uint32_t sub = 0;
    while (true) {
      std::uint32_t x_mask = forced | sub;
      std::uint32_t l_mask = 0;
      while (true) {
        keys.push_back({x_mask, l_mask});
        if (l_mask == x_mask) break;
        l_mask = (l_mask - x_mask) & x_mask;
      }
      if (sub == free) break;
      sub = (sub - free) & free;
    }

    std::vector<RowResult> results(keys.size());
    auto work = [&](std::size_t i) {
      WpsT<Prov> row = compute_row(u, nd, tables, ni, keys[i].first, keys[i].second);
      std::size_t bound = std::size_t{1} << (std::popcount(keys[i].first) - 1);
      if (options.trim && row.entries.size() > bound) {
        row = reduce(row, kernels);
        results[i].reduces = 1;
      }
      results[i].row = std::move(row);
    };

    std::size_t workers = std::min<std::size_t>(std::max<std::uint32_t>(options.threads, 1),
                                                keys.size());
    if (workers <= 1) {
      for (std::size_t i = 0; i < keys.size(); ++i) work(i);
    } else {
      // Rows of one node only read immutable child tables and write their own
      // slot, so any work division yields the same results.
      std::atomic<std::size_t> next{0};
      std::exception_ptr failure;
      std::mutex failure_mutex;
      auto runner = [&] {
        try {
          for (std::size_t i = next.fetch_add(1); i < keys.size(); i = next.fetch_add(1)) {
            work(i);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      };
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(runner);
      for (std::thread& th : pool) th.join();
      if (failure) std::rethrow_exception(failure);
    }

    DpTable& table = tables[ni];
    for (std::size_t i = 0; i < keys.size(); ++i) {
      stats.reduce_calls += results[i].reduces;
      if (results[i].row.entries.empty()) continue;
      stats.max_row_entries = std::max(stats.max_row_entries, results[i].row.entries.size());
      stats.total_entries += results[i].row.entries.size();
      table.emplace(keys[i], std::move(results[i].row));
    }
    stats.rows_computed += keys.size();

    if (!options.keep_tables) {
      // Each node feeds exactly one parent; drop consumed child tables.
      for (std::uint32_t c : node.children) {
        if (c != kNoChild) tables[c] = DpTable{};
      }
    }
  }

  // The root universe is the single root vertex, so the one possible
  // partition is {{root}}; its weight is the optimum, absence infeasibility.
  if (const WpsT<Prov>* root_row = find_row(tables[nd.root], 1, 0)) {
    outcome.cost = root_row->entries.front().weight;
  }
  if (options.keep_tables) outcome.tables = std::move(tables);
  return outcome;
}

UnifiedWalk reconstruct(const UnifiedInstance& u, const NiceDecomposition& nd,
                        const SolveOutcome& outcome) {
  if (!outcome.cost) throw InternalError("reconstruct: outcome is infeasible");
  if (outcome.tables.size() != nd.nodes.size()) {
    throw InternalError("reconstruct: tables missing, solve with keep_tables");
  }
  const WpsT<Prov>* root_row = find_row(outcome.tables[nd.root], 1, 0);
  if (!root_row) throw InternalError("reconstruct: root row missing");
  if (root_row->entries.front().weight != *outcome.cost) {
    throw InternalError("reconstruct: root weight differs from the solved cost");
  }

  // Walk the provenance tree; every visited nice node contributes at most
  // one decision, so taken edge ids cannot repeat.
  struct Frame {
    std::uint32_t node;
    std::uint32_t x_mask;
    std::uint32_t l_mask;
    std::uint32_t entry;
  };
  std::vector<Frame> pending{{nd.root, 1, 0, 0}};
  std::vector<char> taken(u.multi_edges.size(), 0);
  std::vector<std::uint32_t> subgraph;

  while (!pending.empty()) {
    Frame f = pending.back();
    pending.pop_back();
    const NiceNode& node = nd.nodes[f.node];
    const WpsT<Prov>* row = find_row(outcome.tables[f.node], f.x_mask, f.l_mask);
    if (!row || f.entry >= row->entries.size()) {
      throw InternalError("reconstruct: dangling back-pointer");
    }
    const Prov& tag = row->entries[f.entry].tag;
    switch (node.kind) {
      case NodeKind::Leaf:
        if (tag.kind != ProvKind::Leaf) throw InternalError("reconstruct: tag mismatch at leaf");
        break;
      case NodeKind::IntroduceVertex: {
        if (tag.kind != ProvKind::Ins && tag.kind != ProvKind::Copy) {
          throw InternalError("reconstruct: tag mismatch at introduce-vertex");
        }
        std::size_t pos = bag_position(node.bag, node.payload);
        pending.push_back({node.children[0], mask_drop_position(f.x_mask, pos),
                           mask_drop_position(f.l_mask, pos), tag.a});
        break;
      }
      case NodeKind::IntroduceEdge: {
        std::uint32_t child_l = f.l_mask;
        if (tag.kind == ProvKind::EdgeTake) {
          if (taken[node.payload]) throw InternalError("reconstruct: edge taken twice");
          taken[node.payload] = 1;
          subgraph.push_back(node.payload);
          const MultiEdge& e = u.multi_edges[node.payload];
          child_l ^= (std::uint32_t{1} << bag_position(node.bag, e.u)) |
                     (std::uint32_t{1} << bag_position(node.bag, e.v));
        } else if (tag.kind != ProvKind::EdgeSkip && tag.kind != ProvKind::Copy) {
          throw InternalError("reconstruct: tag mismatch at introduce-edge");
        }
        pending.push_back({node.children[0], f.x_mask, child_l, tag.a});
        break;
      }
      case NodeKind::Forget: {
        if (tag.kind != ProvKind::ForgetPlain && tag.kind != ProvKind::ForgetProj) {
          throw InternalError("reconstruct: tag mismatch at forget");
        }
        const NiceNode& child_node = nd.nodes[node.children[0]];
        std::size_t vpos = bag_position(child_node.bag, node.payload);
        bool selected = tag.kind == ProvKind::ForgetProj;
        pending.push_back({node.children[0], mask_insert_position(f.x_mask, vpos, selected),
                           mask_insert_position(f.l_mask, vpos, false), tag.a});
        break;
      }
      case NodeKind::Join: {
        if (tag.kind != ProvKind::Join) throw InternalError("reconstruct: tag mismatch at join");
        pending.push_back({node.children[0], f.x_mask, tag.aux, tag.a});
        pending.push_back({node.children[1], f.x_mask, f.l_mask ^ tag.aux, tag.b});
        break;
      }
    }
  }

  std::sort(subgraph.begin(), subgraph.end());

  // Check the subgraph invariants before touring it; a violation here is a
  // solver bug surfacing, never a property of the input.
  std::uint64_t total = 0;
  std::vector<std::uint32_t> degree(u.n, 0);
  for (std::uint32_t id : subgraph) {
    const MultiEdge& e = u.multi_edges[id];
    total = checked_add(total, e.weight);
    ++degree[e.u];
    ++degree[e.v];
  }
  if (total != *outcome.cost) throw InternalError("reconstruct: subgraph weight mismatch");
  for (std::uint32_t v = 0; v < u.n; ++v) {
    if (degree[v] % 2 != 0) {
      throw InternalError("reconstruct: odd degree at vertex " + std::to_string(v));
    }
  }
  if (subgraph.empty()) {
    for (std::uint32_t w : u.waypoints) {
      if (w != u.root) {
        throw InternalError("reconstruct: empty subgraph misses waypoint " + std::to_string(w));
      }
    }
    return UnifiedWalk{{u.root}, {}, 0};
  }
  detail::Dsu dsu(u.n);
  for (std::uint32_t id : subgraph) {
    dsu.unite(u.multi_edges[id].u, u.multi_edges[id].v);
  }
  for (std::uint32_t w : u.waypoints) {
    if (degree[w] == 0) {
      throw InternalError("reconstruct: waypoint " + std::to_string(w) + " not covered");
    }
  }
  for (std::uint32_t v = 0; v < u.n; ++v) {
    if (degree[v] != 0 && dsu.find(v) != dsu.find(u.root)) {
      throw InternalError("reconstruct: subgraph is disconnected");
    }
  }

  // Euler tour from the root (Hierholzer), neighbors in ascending edge-id
  // order: retreating vertices emit the circuit in reverse.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> incidence(u.n);
  for (std::uint32_t id : subgraph) {
    const MultiEdge& e = u.multi_edges[id];
    incidence[e.u].push_back({id, e.v});
    incidence[e.v].push_back({id, e.u});
  }
  std::vector<std::size_t> cursor(u.n, 0);
  std::vector<char> used(u.multi_edges.size(), 0);
  std::vector<std::uint32_t> vertices;
  std::vector<std::uint32_t> edges;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{u.root, UINT32_MAX}};
  while (!stack.empty()) {
    auto [v, via] = stack.back();
    const auto& inc = incidence[v];
    std::size_t& at = cursor[v];
    while (at < inc.size() && used[inc[at].first]) ++at;
    if (at == inc.size()) {
      stack.pop_back();
      vertices.push_back(v);
      if (via != UINT32_MAX) edges.push_back(via);
    } else {
      used[inc[at].first] = 1;
      stack.push_back({inc[at].second, inc[at].first});
    }
  }
  std::reverse(vertices.begin(), vertices.end());
  std::reverse(edges.begin(), edges.end());
  if (edges.size() != subgraph.size()) {
    throw InternalError("reconstruct: subgraph admits no Euler tour");
  }
  return UnifiedWalk{std::move(vertices), std::move(edges), total};
}

}  // namespace wrp
