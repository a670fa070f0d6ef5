#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "amort/analysis.hpp"
#include "amort/corpus.hpp"
#include "amort/extract.hpp"
#include "amort/fuzz.hpp"
#include "amort/la_interp.hpp"
#include "amort/la_typecheck.hpp"
#include "amort/reclang.hpp"
#include "amort/splay.hpp"

using namespace amort;

namespace {

la::Term set_of(std::int64_t n) {
  return la::tm::app(corpus::definition("counter", "set"), la::tm::numeral(static_cast<std::uint64_t>(n)));
}

la::Term random_tree(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint64_t> keys(n);
  std::iota(keys.begin(), keys.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(keys.begin(), keys.end(), rng);
  return splay::build(keys);
}

void BM_Typecheck(benchmark::State& state) {
  la::Term m = set_of(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(la::synthesize({}, m));
}
BENCHMARK(BM_Typecheck)->Arg(8)->Arg(64);

void BM_TypecheckSplay(benchmark::State& state) {
  la::Term split = corpus::definition("splay", "split");
  for (auto _ : state) benchmark::DoNotOptimize(la::synthesize({}, split));
}
BENCHMARK(BM_TypecheckSplay);

void BM_EvalSet(benchmark::State& state) {
  la::Term m = set_of(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(la::eval(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvalSet)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_Extract(benchmark::State& state) {
  la::Term m = set_of(state.range(0));
  auto r = la::synthesize({}, m);
  for (auto _ : state) benchmark::DoNotOptimize(extract(r.derivation));
}
BENCHMARK(BM_Extract)->Arg(8)->Arg(64);

void BM_NormalizeCost(benchmark::State& state) {
  Complexity c = extract({}, set_of(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lc::normalize_cost(c.cost()));
}
BENCHMARK(BM_NormalizeCost)->Arg(8)->Arg(32);

void BM_SolveCounter(benchmark::State& state) {
  const auto& p = corpus::counter();
  for (auto _ : state) benchmark::DoNotOptimize(analysis::solve(p, "set", 0, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_SolveCounter)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SplaySplit(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  la::Term t = random_tree(n, 17);
  std::uint64_t pivot = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(splay::split(t, pivot));
    pivot = (pivot + 7) % (n + 1);
  }
}
BENCHMARK(BM_SplaySplit)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Fuzz(benchmark::State& state) {
  fuzz::FuzzConfig cfg;
  cfg.count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fuzz::run(cfg));
    ++cfg.seed;
  }
}
BENCHMARK(BM_Fuzz)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
