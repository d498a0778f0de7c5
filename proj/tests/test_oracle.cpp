#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "support/random_instances.hpp"
#include "support/walk_oracles.hpp"
#include "wrp/errors.hpp"
#include "wrp/instance.hpp"
#include "wrp/oracle.hpp"
#include "wrp/rng.hpp"
#include "wrp/unify.hpp"

using namespace wrp;

namespace {

UnifiedInstance unified_of(const Instance& inst) {
  auto result = unify(inst);
  REQUIRE(std::holds_alternative<UnifiedInstance>(result));
  return std::get<UnifiedInstance>(std::move(result));
}

Instance make_instance(std::uint32_t n, std::vector<EdgeSpec> edges, std::uint32_t s,
                       std::uint32_t t, std::vector<std::uint32_t> waypoints) {
  Instance inst;
  inst.n = n;
  inst.edges = std::move(edges);
  inst.source = s;
  inst.target = t;
  inst.waypoints = std::move(waypoints);
  return inst;
}

}  // namespace

TEST_CASE("brute force on hand-checked instances") {
  SUBCASE("single vertex with only the root required") {
    UnifiedInstance u = unified_of(make_instance(1, {}, 0, 0, {0}));
    CHECK(brute_force_min_cost(u) == 0);
  }
  SUBCASE("triangle with every vertex required") {
    UnifiedInstance u = unified_of(
        make_instance(3, {{0, 1, 1, 1}, {0, 2, 1, 1}, {1, 2, 1, 1}}, 0, 0, {0, 1, 2}));
    CHECK(brute_force_min_cost(u) == 3);
  }
  SUBCASE("unit-capacity path cannot close a walk") {
    UnifiedInstance u = unified_of(make_instance(3, {{0, 1, 1, 1}, {1, 2, 1, 1}}, 0, 0, {2}));
    CHECK_FALSE(brute_force_min_cost(u).has_value());
  }
  SUBCASE("doubling the path capacities closes it") {
    UnifiedInstance u = unified_of(make_instance(3, {{0, 1, 2, 1}, {1, 2, 2, 1}}, 0, 0, {2}));
    CHECK(brute_force_min_cost(u) == 4);
  }
  SUBCASE("empty subgraph needs the root to be the only waypoint") {
    UnifiedInstance u = unified_of(make_instance(2, {{0, 1, 1, 3}}, 0, 0, {}));
    CHECK(brute_force_min_cost(u) == 0);
    UnifiedInstance v = unified_of(make_instance(2, {{0, 1, 2, 3}}, 0, 0, {1}));
    CHECK(brute_force_min_cost(v) == 6);
  }
  SUBCASE("gadget instance counts the two unit edges") {
    UnifiedInstance u = unified_of(make_instance(3, {{0, 1, 1, 1}, {1, 2, 1, 1}}, 0, 2, {1}));
    CHECK(brute_force_min_cost(u) == 4);
  }
}

TEST_CASE("brute force rejects oversized inputs") {
  // A star with 25 spokes has 25 multi-edges, one over the budget.
  std::vector<EdgeSpec> edges;
  for (std::uint32_t v = 1; v <= 25; ++v) edges.push_back({0, v, 1, 1});
  UnifiedInstance u = unified_of(make_instance(26, std::move(edges), 0, 0, {}));
  CHECK(u.multi_edges.size() == 25);
  CHECK_THROWS_AS(brute_force_min_cost(u), BudgetError);
}

TEST_CASE("brute force agrees with the walk-state search") {
  Rng rng(424242);
  int compared = 0;
  for (int iter = 0; iter < 400; ++iter) {
    Instance inst = testing::random_instance(rng, 1, 4, 0.55);
    auto result = unify(inst);
    if (!std::holds_alternative<UnifiedInstance>(result)) continue;
    const UnifiedInstance& u = std::get<UnifiedInstance>(result);
    if (u.multi_edges.size() > 10) continue;
    ++compared;
    CAPTURE(iter);
    CHECK(brute_force_min_cost(u) == testing::closed_walk_min_cost(u));
  }
  CHECK(compared > 150);
}

TEST_CASE("unification preserves the optimum up to the gadget cost") {
  Rng rng(777);
  int feasible_seen = 0, infeasible_seen = 0, compared = 0;
  for (int iter = 0; iter < 300; ++iter) {
    Instance inst = testing::random_instance(rng, 1, 6, 0.5);
    if (inst.edges.size() > 12) continue;
    auto result = unify(inst);
    auto original = testing::open_walk_min_cost(inst);
    if (!std::holds_alternative<UnifiedInstance>(result)) {
      // Disconnection: the open-walk oracle must agree nothing exists.
      CHECK_FALSE(original.has_value());
      continue;
    }
    const UnifiedInstance& u = std::get<UnifiedInstance>(result);
    if (u.multi_edges.size() > kOracleMaxEdges) continue;
    ++compared;
    auto unified = brute_force_min_cost(u);
    std::uint64_t correction = u.gadget ? 2 : 0;
    CAPTURE(iter);
    if (unified.has_value()) {
      ++feasible_seen;
      REQUIRE(original.has_value());
      CHECK(*original == *unified - correction);
    } else {
      ++infeasible_seen;
      CHECK_FALSE(original.has_value());
    }
  }
  CHECK(compared > 200);
  CHECK(feasible_seen > 100);
  CHECK(infeasible_seen > 5);
}

TEST_CASE("verify_walk on hand-checked walks") {
  Instance tri = make_instance(3, {{0, 1, 1, 1}, {0, 2, 1, 1}, {1, 2, 1, 1}}, 0, 0, {0, 1, 2});

  SUBCASE("valid triangle tour") {
    OriginalWalk walk{{0, 1, 2, 0}, 3};
    CHECK(verify_walk(walk, tri).empty());
  }
  SUBCASE("skipped waypoint is named") {
    OriginalWalk walk{{0, 1, 0}, 2};
    auto violations = verify_walk(walk, tri);
    REQUIRE_FALSE(violations.empty());
    bool found = false;
    for (const std::string& v : violations) {
      found = found || v.find("waypoint 2 not visited") != std::string::npos;
    }
    CHECK(found);
    // The walk also reuses edge {0,1} beyond its unit capacity.
    bool capacity = false;
    for (const std::string& v : violations) {
      capacity = capacity || v.find("capacity exceeded") != std::string::npos;
    }
    CHECK(capacity);
  }
  SUBCASE("wrong endpoints") {
    Instance path = make_instance(3, {{0, 1, 1, 1}, {1, 2, 1, 1}}, 0, 2, {});
    OriginalWalk walk{{1, 2}, 1};
    auto violations = verify_walk(walk, path);
    bool starts = false, ends = false;
    for (const std::string& v : violations) {
      starts = starts || v.find("not at the source") != std::string::npos;
      ends = ends || v.find("not at the target") != std::string::npos;
    }
    CHECK(starts);
    CHECK_FALSE(ends);
  }
  SUBCASE("nonexistent edge") {
    Instance path = make_instance(3, {{0, 1, 1, 1}, {1, 2, 1, 1}}, 0, 0, {});
    OriginalWalk walk{{0, 2, 0}, 0};
    auto violations = verify_walk(walk, path);
    bool found = false;
    for (const std::string& v : violations) {
      found = found || v.find("no edge between") != std::string::npos;
    }
    CHECK(found);
  }
  SUBCASE("declared cost mismatch") {
    OriginalWalk walk{{0, 1, 2, 0}, 5};
    auto violations = verify_walk(walk, tri);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("declared cost 5") != std::string::npos);
  }
  SUBCASE("empty vertex list") {
    OriginalWalk walk{{}, 0};
    CHECK_FALSE(verify_walk(walk, tri).empty());
  }
}

TEST_CASE("generated instances are reproducible and valid") {
  SUBCASE("same seed, same instance") {
    GenParams params;
    params.n = 7;
    params.seed = 99;
    params.waypoint_count = 3;
    CHECK(gen_random(params) == gen_random(params));
  }
  SUBCASE("different seeds differ eventually") {
    GenParams a, b;
    a.n = b.n = 7;
    a.seed = 1;
    b.seed = 2;
    CHECK(gen_random(a) != gen_random(b));
  }
  SUBCASE("single vertex") {
    GenParams params;
    params.n = 1;
    params.edge_prob = 0.0;
    Instance inst = gen_random(params);
    CHECK(inst.n == 1);
    CHECK(inst.edges.empty());
    CHECK(inst.waypoints == std::vector<std::uint32_t>{0});
  }
  SUBCASE("500 samples validate and are connected") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      GenParams params;
      params.n = static_cast<std::uint32_t>(1 + seed % 8);
      params.waypoint_count = static_cast<std::uint32_t>(1 + seed % params.n);
      params.seed = seed;
      Instance inst = gen_random(params);
      CAPTURE(seed);
      CHECK(validate(inst).empty());
      // Connectivity means unify never prunes anything.
      auto result = unify(inst);
      REQUIRE(std::holds_alternative<UnifiedInstance>(result));
      CHECK(std::get<UnifiedInstance>(result).to_original.size() >= inst.n);
    }
  }
  SUBCASE("unsatisfiable parameters are rejected") {
    GenParams params;
    params.n = 0;
    CHECK_THROWS_AS(gen_random(params), Error);
    params.n = 3;
    params.waypoint_count = 4;
    CHECK_THROWS_AS(gen_random(params), Error);
    params.waypoint_count = 1;
    params.edge_prob = 1.5;
    CHECK_THROWS_AS(gen_random(params), Error);
    params.edge_prob = 0.0;  // two vertices can never connect
    params.n = 2;
    CHECK_THROWS_AS(gen_random(params), Error);
    params.edge_prob = 0.5;
    params.cap_min = 0;
    CHECK_THROWS_AS(gen_random(params), Error);
    params.cap_min = 3;
    params.cap_max = 2;
    CHECK_THROWS_AS(gen_random(params), Error);
    params.cap_min = params.cap_max = 1;
    params.weight_min = 9;
    params.weight_max = 3;
    CHECK_THROWS_AS(gen_random(params), Error);
  }
}
