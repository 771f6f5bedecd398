#include <gtest/gtest.h>

#include <random>

#include "gop/kernels.hpp"
#include "gop/synthetic.hpp"
#include "helpers.hpp"

using namespace gop;
using namespace gop::kernels;

TEST(Kernels, EvaluateSerialEqualsParallel) {
  const auto dir = testutil::temp_dir("kernels");
  synth::RunCollectionOptions opts;
  opts.max_grade = 2;
  const auto path = synth::write_run_collection(
      dir, synth::toy_manifest(2, 3, 3, 5), opts);
  auto m = std::make_shared<const CollectionManifest>(load_manifest(path));
  const auto c = load_collection(m);
  std::vector<SystemRuns> systems;
  for (const auto& [cfg, run] : c.runs) {
    systems.push_back({m->system_index(cfg), &run});
  }
  const auto measures = MeasureRegistry::standard(0.8, 2).measures();
  EvalInput in{systems, &c.qrels, m->topic_ids, measures};
  const std::size_t n = m->grid_size() * measures.size() * m->topic_ids.size();
  std::vector<double> a(n, -1), b(n, -1);
  evaluate_grid_serial(in, a);
  evaluate_grid_parallel(in, b);
  EXPECT_EQ(a, b);
  std::filesystem::remove_all(dir);
}

TEST(Kernels, MeanScoresSerialEqualsParallel) {
  const auto g = testutil::paper_grid(5);
  std::vector<std::size_t> systems(g->system_count());
  std::iota(systems.begin(), systems.end(), 0);
  std::vector<double> a(systems.size()), b(systems.size());
  for (std::optional<std::size_t> topic : {std::optional<std::size_t>{}, std::optional<std::size_t>{7}}) {
    mean_scores_serial(*g, 3, topic, systems, a);
    mean_scores_parallel(*g, 3, topic, systems, b);
    EXPECT_EQ(a, b);
  }
}

TEST(Kernels, GroupSumsSerialEqualsParallel) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u;
  std::vector<double> values(5000);
  std::vector<std::uint32_t> groups(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = u(rng);
    groups[i] = static_cast<std::uint32_t>(rng() % 37);
  }
  EXPECT_EQ(group_sums_serial(values, groups, 40),
            group_sums_parallel(values, groups, 40));
}

TEST(Kernels, MaxAbsTSerialEqualsParallel) {
  std::vector<double> a(3 * kReplicateBlock + 17), b(a.size());
  max_abs_t_serial(6, 40, 0.5, 99, a);
  max_abs_t_parallel(6, 40, 0.5, 99, b);
  EXPECT_EQ(a, b);
  for (double x : a) EXPECT_GE(x, 0.0);
}

TEST(Kernels, MaxAbsTPrefixStable) {
  // Replicates depend only on (seed, index), not on the total count.
  std::vector<double> a(kReplicateBlock + 5), b(2 * kReplicateBlock);
  max_abs_t_parallel(3, 20, 0.5, 1, a);
  max_abs_t_parallel(3, 20, 0.5, 1, b);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}
