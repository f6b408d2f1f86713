#include <benchmark/benchmark.h>

#include "slp/frontier.hpp"
#include "slp/search.hpp"

namespace {

using namespace slp;

const Frontier& level(int k) {
  static std::vector<Frontier> levels = [] {
    std::vector<Frontier> out{initial_frontier()};
    for (int i = 1; i <= 6; ++i) out.push_back(expand(out.back()));
    return out;
  }();
  return levels[static_cast<std::size_t>(k)];
}

void BM_expand_level(benchmark::State& state) {
  const Frontier& parent = level(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(expand(parent));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(parent.count()));
}
BENCHMARK(BM_expand_level)->Arg(4)->Arg(5)->Arg(6);

void BM_prune_rule(benchmark::State& state) {
  const Int n = factorial(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(prune_value_bound(6318, 8, 9, n));
  }
}
BENCHMARK(BM_prune_rule);

void BM_search_small_target(benchmark::State& state) {
  SearchConfig cfg;
  cfg.max_length = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        search_target(make_target(TargetKind::integer, 719, TargetMode::exact), cfg));
  }
}
BENCHMARK(BM_search_small_target);

}  // namespace
