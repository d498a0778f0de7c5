#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "parse_util.hpp"
#include "report.hpp"
#include "wrp/decomposition.hpp"
#include "wrp/dp.hpp"
#include "wrp/errors.hpp"
#include "wrp/instance.hpp"
#include "wrp/oracle.hpp"
#include "wrp/rng.hpp"
#include "wrp/unify.hpp"
#include "wrp/walk.hpp"

namespace {

using namespace wrp;

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

Instance load_instance(const std::string& path) {
  if (path == "-") return parse_instance(std::cin);
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file: " + path);
  return parse_instance(in);
}

// Walk file: one 'cost <c>' line and one 'walk <v...>' line in either
// order, '#' comments and blank lines allowed. Vertex ids are original ids.
OriginalWalk load_walk(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open walk file: " + path);
  OriginalWalk walk;
  bool have_cost = false, have_walk = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = parse_util::tokenize(line, '#');
    if (toks.empty()) continue;
    if (toks[0] == "cost") {
      if (have_cost) throw ParseError(lineno, "duplicate cost line");
      if (toks.size() != 2) throw ParseError(lineno, "cost line must be 'cost <value>'");
      walk.cost = parse_util::parse_u64(toks[1], lineno, "cost");
      have_cost = true;
    } else if (toks[0] == "walk") {
      if (have_walk) throw ParseError(lineno, "duplicate walk line");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        walk.vertices.push_back(parse_util::parse_u32(toks[i], lineno, "vertex id"));
      }
      have_walk = true;
    } else {
      throw ParseError(lineno, "expected a 'cost' or 'walk' line, got '" + std::string(toks[0]) + "'");
    }
  }
  if (!have_cost) throw Error("walk file has no cost line");
  if (!have_walk) throw Error("walk file has no walk line");
  return walk;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text, const char* flag) {
  auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw Error(std::string(flag) + " expects <min>:<max>, got '" + text + "'");
  }
  auto number = [&](std::string_view part) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size()) {
      throw Error(std::string(flag) + " expects <min>:<max>, got '" + text + "'");
    }
    return value;
  };
  std::string_view view = text;
  return {number(view.substr(0, colon)), number(view.substr(colon + 1))};
}

void emit_report(const cli::RunReport& rep, bool want_json) {
  if (want_json) {
    std::cout << cli::to_json(rep).dump(2) << "\n";
  } else {
    cli::print_human(rep, std::cout);
  }
}

int run_solve(const std::string& path, const std::string& td_path, bool want_walk, bool want_json,
              std::uint32_t threads) {
  cli::RunReport rep;
  rep.threads = threads;

  auto t0 = Clock::now();
  Instance inst = load_instance(path);
  auto t1 = Clock::now();
  rep.parse_ms = ms_between(t0, t1);
  rep.n = inst.n;
  rep.m = inst.edges.size();
  rep.source = inst.source;
  rep.target = inst.target;
  rep.waypoint_count = inst.waypoints.size();

  auto unified = unify(inst);
  auto t2 = Clock::now();
  rep.unify_ms = ms_between(t1, t2);
  if (const auto* infeasible = std::get_if<Infeasible>(&unified)) {
    rep.infeasible_reason = infeasible->reason;
    emit_report(rep, want_json);
    return 2;
  }
  const UnifiedInstance u = std::get<UnifiedInstance>(std::move(unified));
  rep.reached_unified = true;
  rep.unified_n = u.n;
  rep.unified_edges = u.multi_edges.size();
  rep.unified_waypoints = u.waypoints.size();
  rep.gadget = u.gadget.has_value();

  TreeDecomposition td;
  if (!td_path.empty()) {
    std::ifstream td_in(td_path);
    if (!td_in) throw Error("cannot open tree decomposition file: " + td_path);
    td = transfer_td(parse_td(td_in), inst, u);
    auto problems = validate_td(td, u);
    if (!problems.empty()) {
      std::string msg = "invalid tree decomposition:";
      for (const auto& p : problems) msg += "\n  " + p;
      throw Error(msg);
    }
    rep.decomposition_source = "file";
  } else {
    td = heuristic_decompose(u);
    rep.decomposition_source = "heuristic";
  }
  NiceDecomposition nd = make_nice(td, u);
  auto t3 = Clock::now();
  rep.decompose_ms = ms_between(t2, t3);
  rep.reached_decomposition = true;
  rep.width = td.width();
  rep.nice_nodes = nd.nodes.size();
  for (const NiceNode& node : nd.nodes) rep.max_bag = std::max(rep.max_bag, node.bag.size());

  SolveOptions options;
  options.threads = threads;
  options.keep_tables = want_walk;
  SolveOutcome outcome = solve(u, nd, options);
  auto t4 = Clock::now();
  rep.solve_ms = ms_between(t3, t4);
  rep.stats = outcome.stats;

  if (!outcome.cost) {
    rep.infeasible_reason = "no feasible walk";
    emit_report(rep, want_json);
    return 2;
  }
  rep.cost = *outcome.cost - (u.gadget ? 2 : 0);

  if (want_walk) {
    UnifiedWalk unified_walk = reconstruct(u, nd, outcome);
    OriginalWalk walk = lift_walk(unified_walk, u, inst);
    auto violations = verify_walk(walk, inst);
    if (!violations.empty()) {
      throw InternalError("reconstructed walk failed verification: " + violations.front());
    }
    auto t5 = Clock::now();
    rep.reconstruct_ms = ms_between(t4, t5);
    rep.walk = std::move(walk);
  }
  emit_report(rep, want_json);
  return 0;
}

int run_oracle(const std::string& path) {
  Instance inst = load_instance(path);
  auto unified = unify(inst);
  if (const auto* infeasible = std::get_if<Infeasible>(&unified)) {
    std::cout << "infeasible: " << infeasible->reason << "\n";
    return 2;
  }
  const UnifiedInstance& u = std::get<UnifiedInstance>(unified);
  std::optional<std::uint64_t> cost = brute_force_min_cost(u);
  if (!cost) {
    std::cout << "infeasible: no feasible walk\n";
    return 2;
  }
  std::cout << "cost " << *cost - (u.gadget ? 2 : 0) << "\n";
  return 0;
}

int run_verify(const std::string& path, const std::string& walk_path) {
  Instance inst = load_instance(path);
  OriginalWalk walk = load_walk(walk_path);
  auto violations = verify_walk(walk, inst);
  if (violations.empty()) {
    std::cout << "ok\n";
    return 0;
  }
  for (const auto& v : violations) std::cout << "violation: " << v << "\n";
  return 2;
}

int run_gen(GenParams params, const std::string& caps, const std::string& weights) {
  auto [cap_min, cap_max] = parse_range(caps, "--caps");
  if (cap_max > UINT32_MAX) throw Error("--caps values must fit in 32 bits");
  params.cap_min = static_cast<std::uint32_t>(cap_min);
  params.cap_max = static_cast<std::uint32_t>(cap_max);
  std::tie(params.weight_min, params.weight_max) = parse_range(weights, "--weights");

  Instance inst = gen_random(params);
  std::cout << "# gen n=" << params.n << " p=" << params.edge_prob << " caps=" << caps
            << " weights=" << weights << " waypoints=" << params.waypoint_count
            << " seed=" << params.seed << "\n";
  write_instance(inst, std::cout);
  return 0;
}

// Trees with a leg at every spine vertex: width stays 2 after the closing
// gadget while n grows, which is the linear-scaling regime.
Instance caterpillar_instance(std::uint64_t n, std::uint64_t seed) {
  if (n < 2) throw Error("caterpillar sizes must be at least 2");
  if (n > 5'000'000) throw Error("caterpillar size " + std::to_string(n) + " is unreasonably large");
  Rng rng(seed);
  Instance inst;
  inst.n = static_cast<std::uint32_t>(n);
  const std::uint32_t spine = static_cast<std::uint32_t>((n + 1) / 2);
  for (std::uint32_t i = 0; i + 1 < spine; ++i) {
    inst.edges.push_back({i, i + 1, 2, 1 + rng.below(5)});
  }
  for (std::uint32_t leg = spine; leg < inst.n; ++leg) {
    inst.edges.push_back({leg - spine, leg, 2, 1 + rng.below(5)});
  }
  inst.source = 0;
  inst.target = spine - 1;
  for (std::uint32_t leg = spine; leg < inst.n; ++leg) inst.waypoints.push_back(leg);
  return inst;
}

// k-th power of a fixed-length path: treewidth k, so the table sizes grow
// with the exponent while n stays put.
Instance path_power_instance(std::uint64_t k, std::uint64_t seed) {
  if (k < 1 || k > 8) throw Error("pathpower sizes are path-power exponents between 1 and 8");
  constexpr std::uint32_t kVertices = 40;
  Rng rng(seed);
  Instance inst;
  inst.n = kVertices;
  for (std::uint32_t i = 0; i < kVertices; ++i) {
    for (std::uint32_t j = i + 1; j <= i + k && j < kVertices; ++j) {
      inst.edges.push_back({i, j, 2, 1 + rng.below(5)});
    }
  }
  inst.source = 0;
  inst.target = 0;
  for (std::uint32_t v = 0; v < kVertices; v += 3) inst.waypoints.push_back(v);
  return inst;
}

int run_bench(const std::string& family, const std::vector<std::uint64_t>& sizes,
              std::uint64_t seed) {
  if (sizes.empty()) throw Error("--sizes must list at least one size");
  std::cout << "n,width,runtime_ms,peak_entries\n";
  for (std::uint64_t size : sizes) {
    Instance inst = family == "caterpillar" ? caterpillar_instance(size, seed + size)
                                            : path_power_instance(size, seed + size);
    auto unified = unify(inst);
    const UnifiedInstance& u = std::get<UnifiedInstance>(unified);
    TreeDecomposition td = heuristic_decompose(u);
    NiceDecomposition nd = make_nice(td, u);
    SolveOptions options;
    options.keep_tables = false;
    auto t0 = Clock::now();
    SolveOutcome outcome = solve(u, nd, options);
    auto t1 = Clock::now();
    if (!outcome.cost) throw InternalError("bench instance is infeasible, the family is broken");
    std::cout << inst.n << "," << td.width() << "," << std::fixed << std::setprecision(3)
              << ms_between(t0, t1) << "," << outcome.stats.max_row_entries << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum-cost waypoint walks on sparse graphs"};
  app.require_subcommand(1);

  std::string instance_path, td_path, walk_path;
  bool want_walk = false, want_json = false;
  std::uint32_t threads = 1;

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve an instance end to end");
  solve_cmd->add_option("file", instance_path, "instance file, '-' for standard input")->required();
  solve_cmd->add_option("--td", td_path, "tree decomposition of the input graph (.td format)");
  solve_cmd->add_flag("--walk", want_walk, "reconstruct and print an optimal walk");
  solve_cmd->add_flag("--json", want_json, "emit the report as JSON");
  solve_cmd->add_option("--threads", threads, "worker threads for table rows")
      ->check(CLI::Range(1u, 1024u));

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exhaustive reference answer (small inputs)");
  oracle_cmd->add_option("file", instance_path, "instance file, '-' for standard input")->required();

  CLI::App* verify_cmd = app.add_subcommand("verify", "check a walk file against an instance");
  verify_cmd->add_option("file", instance_path, "instance file, '-' for standard input")->required();
  verify_cmd->add_option("--walk-file", walk_path, "walk to check")->required();

  GenParams params;
  std::string caps = "1:2", weights = "1:5";
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random connected instance");
  gen_cmd->add_option("--n", params.n, "vertex count")->required();
  gen_cmd->add_option("--p", params.edge_prob, "edge probability, default 0.5");
  gen_cmd->add_option("--caps", caps, "capacity range, default 1:2");
  gen_cmd->add_option("--weights", weights, "weight range, default 1:5");
  gen_cmd->add_option("--waypoints", params.waypoint_count, "waypoint count, default 1");
  gen_cmd->add_option("--seed", params.seed, "random seed, default 0");

  std::string family;
  std::vector<std::uint64_t> sizes;
  std::uint64_t bench_seed = 0;
  CLI::App* bench_cmd = app.add_subcommand("bench", "time the solver on a scaling family, CSV output");
  bench_cmd->add_option("--family", family, "caterpillar (sizes are n) or pathpower (sizes are k)")
      ->required()
      ->check(CLI::IsMember({"caterpillar", "pathpower"}));
  bench_cmd->add_option("--sizes", sizes, "comma-separated size list")->required()->delimiter(',');
  bench_cmd->add_option("--seed", bench_seed, "random seed for edge weights, default 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(solve_cmd)) {
      return run_solve(instance_path, td_path, want_walk, want_json, threads);
    }
    if (app.got_subcommand(oracle_cmd)) return run_oracle(instance_path);
    if (app.got_subcommand(verify_cmd)) return run_verify(instance_path, walk_path);
    if (app.got_subcommand(gen_cmd)) return run_gen(params, caps, weights);
    if (app.got_subcommand(bench_cmd)) return run_bench(family, sizes, bench_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
