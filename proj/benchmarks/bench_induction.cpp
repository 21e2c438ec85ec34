#include <benchmark/benchmark.h>

#include <random>

#include "edurisk/metrics.hpp"
#include "edurisk/schema.hpp"
#include "edurisk/tree.hpp"

namespace {

// Synthetic cohort on the standard schema: the final outcome follows Quiz 2
// and Quiz 1 with 10% label noise.
edurisk::Dataset synthetic_cohort(std::size_t n) {
  using edurisk::Category;
  std::mt19937 rng(7);
  std::bernoulli_distribution fail(0.25), noise(0.1);
  edurisk::Dataset ds{edurisk::standard_schema(edurisk::CourseType::with_practical), {}};
  for (std::size_t i = 0; i < n; ++i) {
    edurisk::StudentRecord r;
    r.student_id = "S" + std::to_string(i);
    for (const auto& a : ds.schema.attributes) r.values[a.name] = fail(rng) ? Category::Fail : Category::Pass;
    bool pass = r.values["Quiz 2"] == Category::Pass && r.values["Quiz 1"] == Category::Pass;
    if (noise(rng)) pass = !pass;
    r.target = pass ? Category::Pass : Category::Fail;
    ds.records.push_back(std::move(r));
  }
  return ds;
}

void BM_ScoreAll(benchmark::State& state) {
  const auto ds = synthetic_cohort(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(edurisk::score_all(ds));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScoreAll)->Arg(20)->Arg(1000)->Arg(10000);

void BM_InduceTree(benchmark::State& state) {
  const auto ds = synthetic_cohort(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(edurisk::induce_tree(ds));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_InduceTree)->Arg(20)->Arg(1000)->Arg(10000);

void BM_Classify(benchmark::State& state) {
  const auto ds = synthetic_cohort(1000);
  const auto tree = edurisk::induce_tree(ds);
  for (auto _ : state) {
    for (const auto& r : ds.records) benchmark::DoNotOptimize(edurisk::classify(tree, r));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ds.size()));
}
BENCHMARK(BM_Classify);

}  // namespace

BENCHMARK_MAIN();
