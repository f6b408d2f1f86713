#include <benchmark/benchmark.h>

#include "slp/canonical.hpp"
#include "slp/evaluation.hpp"
#include "slp/numtheory.hpp"
#include "slp/program.hpp"

namespace {

using namespace slp;

void BM_evaluate(benchmark::State& state) {
  const Program p = parse_program(
      "{1,1,+},{2,2,*},{3,3,*},{4,4,*},{5,5,*},{6,6,*},{5,7,*},{8,4,-},{8,9,*}");
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(p));
  }
}
BENCHMARK(BM_evaluate);

void BM_canonical_key(benchmark::State& state) {
  const Evaluation ev = evaluate(parse_program(
      "{1,1,+},{2,2,*},{3,3,*},{4,4,*},{5,5,*},{6,6,*},{5,7,*},{8,4,-},{8,9,*}"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical_key(ev));
  }
}
BENCHMARK(BM_canonical_key);

void BM_digest(benchmark::State& state) {
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(state.range(0)), 0x5a);
  for (auto _ : state) {
    benchmark::DoNotOptimize(digest_bytes(bytes));
  }
}
BENCHMARK(BM_digest)->Arg(64)->Arg(256);

void BM_factorize_smooth(benchmark::State& state) {
  const Int v = Int(65520) * 65521;  // small factors plus one 17-bit prime
  for (auto _ : state) {
    benchmark::DoNotOptimize(factorize(v));
  }
}
BENCHMARK(BM_factorize_smooth);

void BM_factorize_semiprime(benchmark::State& state) {
  const Int v = Int(1000003) * 1000033;
  for (auto _ : state) {
    benchmark::DoNotOptimize(factorize(v));
  }
}
BENCHMARK(BM_factorize_semiprime);

}  // namespace
