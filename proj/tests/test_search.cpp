#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"
#include "slp/error.hpp"
#include "slp/numtheory.hpp"
#include "slp/search.hpp"
#include "slp/store.hpp"

using namespace slp;

namespace {

SearchOutcome scratch_search(const TargetSpec& target, int max_length, bool prune = true) {
  SearchConfig cfg;
  cfg.max_length = max_length;
  cfg.handoff = 0;
  cfg.value_bound_prune = prune;
  return search_target(target, cfg);
}

}  // namespace

TEST_CASE("value-bound pruning rule") {
  // 4 -> 16 -> 256 < 257: prune
  CHECK(prune_value_bound(4, 2, 4, 257));
  // boundary: 256 >= 256 keeps the node
  CHECK_FALSE(prune_value_bound(4, 2, 4, 256));
  // never applied below length 2
  CHECK_FALSE(prune_value_bound(1, 0, 6, Int("100000000")));
  CHECK_FALSE(prune_value_bound(2, 1, 6, Int("100000000")));
  // k == K: no squarings left
  CHECK(prune_value_bound(100, 5, 5, 101));
  CHECK_FALSE(prune_value_bound(101, 5, 5, 101));
}

TEST_CASE("dfs_extend finds 2 in one step") {
  const TargetSpec target = make_target(TargetKind::integer, 2, TargetMode::exact);
  const auto hits = dfs_extend(Program{}, target, 1);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].second == 1);
  CHECK(render_program(hits[0].first) == "{1,1,+}");
}

TEST_CASE("dfs_extend stops at a seed that already hits") {
  const Program seed = parse_program("{1,1,+},{1,2,+},{2,3,*}");
  const TargetSpec target = make_target(TargetKind::factorial, 3, TargetMode::exact);
  const auto hits = dfs_extend(seed, target, 3);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].first == seed);
  CHECK(hits[0].second == 3);
}

TEST_CASE("no multiple of 7! below length 6") {
  const TargetSpec target = make_target(TargetKind::factorial, 7, TargetMode::multiple);
  CHECK(dfs_extend(Program{}, target, 5).empty());
  const auto hits = dfs_extend(Program{}, target, 6);
  REQUIRE(!hits.empty());
  CHECK(hits[0].second == 6);
}

TEST_CASE("search_target certifies tau'(5!) = 5") {
  const SearchOutcome out =
      scratch_search(make_target(TargetKind::factorial, 5, TargetMode::multiple), 6);
  REQUIRE(out.best_length.has_value());
  CHECK(*out.best_length == 5);
  CHECK(out.optimal);
  CHECK(out.lower_bound == 5);
  CHECK(out.complete);
  for (const Program& p : out.found) {
    const Evaluation ev = evaluate(p);
    CHECK(is_normalized(ev));
    CHECK(computes_target(ev, out.target.n, out.target.mode));
    CHECK(p.length() == 5);
  }
}

TEST_CASE("search_target certifies tau(5!) = 6") {
  const SearchOutcome out =
      scratch_search(make_target(TargetKind::factorial, 5, TargetMode::exact), 6);
  REQUIRE(out.best_length.has_value());
  CHECK(*out.best_length == 6);
  CHECK(out.optimal);
}

TEST_CASE("exhausted search yields a lower bound") {
  const TargetSpec target = make_target(TargetKind::factorial, 7, TargetMode::multiple);
  const SearchOutcome out = scratch_search(target, 5);
  CHECK_FALSE(out.best_length.has_value());
  CHECK(out.lower_bound == 6);
  CHECK_FALSE(out.optimal);
  CHECK(out.complete);
}

TEST_CASE("trivial targets") {
  // tau(1) = 0 via the empty program
  const SearchOutcome one =
      scratch_search(make_target(TargetKind::integer, 1, TargetMode::exact), 2);
  REQUIRE(one.best_length.has_value());
  CHECK(*one.best_length == 0);
  CHECK(one.optimal);

  const SearchOutcome two =
      scratch_search(make_target(TargetKind::integer, 2, TargetMode::exact), 2);
  CHECK(*two.best_length == 1);
  CHECK(two.optimal);
}

TEST_CASE("pruned and unpruned searches agree on sampled targets") {
  for (unsigned n : {97u, 120u, 257u, 720u, 1009u}) {
    for (TargetMode mode : {TargetMode::exact, TargetMode::multiple}) {
      const TargetSpec t = make_target(TargetKind::integer, n, mode);
      const SearchOutcome with = scratch_search(t, 5, true);
      const SearchOutcome without = scratch_search(t, 5, false);
      CHECK(with.best_length == without.best_length);
      CHECK(with.lower_bound == without.lower_bound);
      // the pruned walk visits no more nodes than the unpruned one
      CHECK(with.nodes_explored <= without.nodes_explored);
    }
  }
}

TEST_CASE("search results match the no-dedup sweep oracle at small depth") {
  const auto oracle = testing::first_reached_levels(4);
  for (unsigned n = 2; n <= 40; ++n) {
    const auto it = oracle.find(n);
    const SearchOutcome out =
        scratch_search(make_target(TargetKind::integer, n, TargetMode::exact), 4);
    if (it != oracle.end()) {
      REQUIRE(out.best_length.has_value());
      CHECK(*out.best_length == it->second);
      CHECK(out.optimal);
    } else {
      CHECK_FALSE(out.best_length.has_value());
      CHECK(out.lower_bound == 5);
    }
  }
}

TEST_CASE("handoff search uses stored frontiers") {
  const auto dir = std::filesystem::temp_directory_path() / "slp_search_store";
  std::filesystem::remove_all(dir);
  RunLevelsConfig rl;
  rl.max_length = 5;
  rl.out_dir = dir;
  run_levels(rl);

  SearchConfig cfg;
  cfg.max_length = 6;
  cfg.handoff = 5;
  cfg.frontier_dir = dir;
  const SearchOutcome out =
      search_target(make_target(TargetKind::factorial, 5, TargetMode::multiple), cfg);
  REQUIRE(out.best_length.has_value());
  CHECK(*out.best_length == 5);
  CHECK(out.optimal);

  // the scan phase alone settles targets reached within the handoff
  SearchConfig shallow = cfg;
  shallow.max_length = 5;
  const SearchOutcome scan_only =
      search_target(make_target(TargetKind::integer, 40, TargetMode::exact), shallow);
  REQUIRE(scan_only.best_length.has_value());
  CHECK(*scan_only.best_length == 5);

  // identical outcome from a from-scratch search
  const SearchOutcome scratch =
      scratch_search(make_target(TargetKind::integer, 40, TargetMode::exact), 5);
  CHECK(scratch.best_length == scan_only.best_length);
}

TEST_CASE("search is deterministic across worker counts") {
  const auto dir = std::filesystem::temp_directory_path() / "slp_search_det";
  std::filesystem::remove_all(dir);
  RunLevelsConfig rl;
  rl.max_length = 4;
  rl.out_dir = dir;
  run_levels(rl);

  for (TargetMode mode : {TargetMode::exact, TargetMode::multiple}) {
    SearchConfig a;
    a.max_length = 6;
    a.handoff = 4;
    a.frontier_dir = dir;
    a.workers = 1;
    SearchConfig b = a;
    b.workers = 3;
    const TargetSpec t = make_target(TargetKind::integer, 719, mode);  // 719 is prime
    const SearchOutcome oa = search_target(t, a);
    const SearchOutcome ob = search_target(t, b);
    CHECK(oa.best_length == ob.best_length);
    CHECK(oa.lower_bound == ob.lower_bound);
    CHECK(oa.optimal == ob.optimal);
    REQUIRE(oa.found.size() == ob.found.size());
    for (std::size_t i = 0; i < oa.found.size(); ++i) CHECK(oa.found[i] == ob.found[i]);
  }
}

TEST_CASE("node budget reports an incomplete search honestly") {
  const TargetSpec target = make_target(TargetKind::integer, 4999, TargetMode::exact);
  SearchConfig cfg;
  cfg.max_length = 6;
  cfg.handoff = 0;
  cfg.max_nodes_per_seed = 50;
  const SearchOutcome out = search_target(target, cfg);
  CHECK_FALSE(out.complete);
  CHECK_FALSE(out.optimal);
  // no claim beyond the scanned depth
  CHECK(out.lower_bound == 1);
}

TEST_CASE("heuristic extension") {
  const TargetSpec t29 = make_target(TargetKind::factorial, 29, TargetMode::multiple);
  CHECK(heuristic_extend({}, t29, 16).empty());

  // an optimal program used as its own seed comes back unchanged
  const Program p5 = parse_program("{1,1,+},{2,2,+},{3,3,*},{4,1,-},{4,5,*}");
  const TargetSpec t5 = make_target(TargetKind::factorial, 5, TargetMode::multiple);
  const auto hits = heuristic_extend({p5}, t5, 5);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].first == p5);
  CHECK(hits[0].second == 5);

  CHECK_THROWS_AS(heuristic_extend({parse_program("{1,1,-}")}, t5, 3), NotNormalizedError);
}

TEST_CASE("batch searches over small ranges") {
  SearchConfig cfg;
  cfg.max_length = 6;
  cfg.handoff = 0;
  const auto outs = batch_targets(TargetKind::factorial, 2, 6, TargetMode::multiple, cfg);
  REQUIRE(outs.size() == 5);
  const int expected[] = {1, 3, 4, 5, 6};
  for (std::size_t i = 0; i < outs.size(); ++i) {
    REQUIRE(outs[i].best_length.has_value());
    CHECK(*outs[i].best_length == expected[i]);
    CHECK(outs[i].optimal);
  }

  const auto prim = batch_targets(TargetKind::primorial, 2, 7, TargetMode::multiple, cfg);
  REQUIRE(prim.size() == 4);  // p = 2, 3, 5, 7
  const int prim_expected[] = {1, 3, 5, 6};
  for (std::size_t i = 0; i < prim.size(); ++i) {
    CHECK(*prim[i].best_length == prim_expected[i]);
  }

  CHECK_THROWS_AS(batch_targets(TargetKind::factorial, 5, 2, TargetMode::exact, cfg),
                  InvalidInputError);
}

TEST_CASE("recorded hits never extend a hitting prefix") {
  // rule-1 stop: check over a target with many hits
  const TargetSpec t = make_target(TargetKind::integer, 6, TargetMode::multiple);
  const auto hits = dfs_extend(Program{}, t, 4);
  for (const auto& [program, length] : hits) {
    for (int prefix_len = 0; prefix_len < length; ++prefix_len) {
      Program prefix;
      prefix.steps.assign(program.steps.begin(), program.steps.begin() + prefix_len);
      CHECK_FALSE(computes_target(evaluate(prefix), t.n, t.mode));
    }
  }
}
