// Serial reference vs OpenMP kernels. Run: ./gop_bench [--benchmark_filter=...]
#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "gop/kernels.hpp"
#include "gop/synthetic.hpp"

using namespace gop;

namespace {

const ScoreGrid& grid() {
  static const ScoreGrid g = [] {
    auto m = std::make_shared<const CollectionManifest>(synth::paper_manifest());
    const auto ms = MeasureRegistry::standard().measures();
    return synth::synthetic_grid(m, ms, 3);
  }();
  return g;
}

void BM_MeanScores(benchmark::State& state, bool parallel) {
  const auto& g = grid();
  std::vector<std::size_t> systems(g.system_count());
  std::iota(systems.begin(), systems.end(), 0);
  std::vector<double> out(systems.size());
  for (auto _ : state) {
    if (parallel) kernels::mean_scores_parallel(g, 0, std::nullopt, systems, out);
    else kernels::mean_scores_serial(g, 0, std::nullopt, systems, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_GroupSums(benchmark::State& state, bool parallel) {
  std::mt19937_64 rng(1);
  std::vector<double> values(612);
  std::vector<std::uint32_t> groups(612);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = static_cast<double>(rng() % 1000) / 1000.0;
    groups[i] = static_cast<std::uint32_t>(i % 102);
  }
  for (auto _ : state) {
    auto r = parallel ? kernels::group_sums_parallel(values, groups, 102)
                      : kernels::group_sums_serial(values, groups, 102);
    benchmark::DoNotOptimize(r.data());
  }
}

void BM_MaxAbsT(benchmark::State& state, bool parallel) {
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if (parallel) kernels::max_abs_t_parallel(101, 5100, 0.5, 7, out);
    else kernels::max_abs_t_serial(101, 5100, 0.5, 7, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Evaluate(benchmark::State& state, bool parallel) {
  static const auto dir = std::filesystem::temp_directory_path() / "gop-bench-runs";
  static const auto collection = [] {
    std::filesystem::remove_all(dir);
    const auto path = synth::write_run_collection(
        dir, synth::toy_manifest(4, 4, 6, 50), {});
    return load_collection(
        std::make_shared<const CollectionManifest>(load_manifest(path)));
  }();
  std::vector<kernels::SystemRuns> systems;
  for (const auto& [cfg, run] : collection.runs) {
    systems.push_back({collection.manifest->system_index(cfg), &run});
  }
  const auto measures = MeasureRegistry::standard().measures();
  kernels::EvalInput in{systems, &collection.qrels, collection.manifest->topic_ids,
                        measures};
  std::vector<double> out(collection.manifest->grid_size() * measures.size() *
                          collection.manifest->topic_ids.size());
  for (auto _ : state) {
    if (parallel) kernels::evaluate_grid_parallel(in, out);
    else kernels::evaluate_grid_serial(in, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_MeanScores, serial, false);
BENCHMARK_CAPTURE(BM_MeanScores, parallel, true);
BENCHMARK_CAPTURE(BM_GroupSums, serial, false);
BENCHMARK_CAPTURE(BM_GroupSums, parallel, true);
BENCHMARK_CAPTURE(BM_MaxAbsT, serial, false)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MaxAbsT, parallel, true)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Evaluate, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Evaluate, parallel, true)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
