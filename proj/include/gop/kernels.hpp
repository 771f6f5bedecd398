#pragma once
// Data-parallel inner loops. Each kernel has an OpenMP version and a serial
// reference; both produce bit-identical output (work is partitioned so that
// every output element is computed by exactly one thread, in a fixed order).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gop/ingest.hpp"
#include "gop/measures.hpp"

namespace gop {
class ScoreGrid;
}

namespace gop::kernels {

struct SystemRuns {
  std::size_t system = 0;
  const RunRankings* run = nullptr;
};

struct EvalInput {
  std::span<const SystemRuns> systems;
  const Qrels* qrels = nullptr;
  std::span<const std::string> topics;
  std::span<const MeasureId> measures;
};

// Writes scores[(system * measures + m) * topics + t] for every listed system.
void evaluate_grid_serial(const EvalInput& in, std::span<double> scores);
void evaluate_grid_parallel(const EvalInput& in, std::span<double> scores);

// out[i] = score of systems[i] (topic mean in topic order, or one topic).
void mean_scores_serial(const ScoreGrid& grid, std::size_t measure,
                        std::optional<std::size_t> topic,
                        std::span<const std::size_t> systems,
                        std::span<double> out);
void mean_scores_parallel(const ScoreGrid& grid, std::size_t measure,
                          std::optional<std::size_t> topic,
                          std::span<const std::size_t> systems,
                          std::span<double> out);

struct GroupSum {
  double sum = 0.0;
  std::size_t count = 0;
  bool operator==(const GroupSum&) const = default;
};

// Sums values per group, each group accumulated in input order.
std::vector<GroupSum> group_sums_serial(std::span<const double> values,
                                        std::span<const std::uint32_t> group,
                                        std::size_t group_count);
std::vector<GroupSum> group_sums_parallel(std::span<const double> values,
                                          std::span<const std::uint32_t> group,
                                          std::size_t group_count);

// Monte Carlo replicates of max_i |T_i| for `k` equicorrelated (rho)
// Student-t variates with `df` degrees of freedom. Replicates are generated
// in fixed-size blocks, each block seeded from (seed, block index).
inline constexpr std::size_t kReplicateBlock = 4096;

void max_abs_t_serial(std::size_t k, std::size_t df, double rho,
                      std::uint64_t seed, std::span<double> out);
void max_abs_t_parallel(std::size_t k, std::size_t df, double rho,
                        std::uint64_t seed, std::span<double> out);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace gop::kernels
