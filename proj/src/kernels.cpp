#include "gop/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <random>

#include "gop/error.hpp"
#include "gop/grid.hpp"

namespace gop::kernels {

namespace {

void evaluate_one(const EvalInput& in, const SystemRuns& sr,
                  std::span<double> scores) {
  static const std::vector<RunLine> kEmpty;
  const std::size_t nm = in.measures.size();
  const std::size_t nt = in.topics.size();
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& topic = in.topics[t];
    auto it = sr.run->find(topic);
    const auto& ranking = it == sr.run->end() ? kEmpty : it->second;
    const auto& judgments = in.qrels->topic(topic);
    const auto grades = judge(ranking, judgments);
    for (std::size_t m = 0; m < nm; ++m) {
      double v = 0.0;
      try {
        v = evaluate(in.measures[m], grades, judgments);
      } catch (const Error& e) {
        throw Error(e.kind(), in.measures[m].name + " on topic " + topic +
                                  " (system #" + std::to_string(sr.system) +
                                  "): " + e.what());
      }
      scores[(sr.system * nm + m) * nt + t] = v;
    }
  }
}

double mean_of(const ScoreGrid& grid, std::size_t system, std::size_t measure,
               std::optional<std::size_t> topic) {
  if (topic) return grid.score(system, measure, *topic);
  const auto row = grid.topic_scores(system, measure);
  double sum = 0.0;
  for (double v : row) sum += v;
  return row.empty() ? 0.0 : sum / static_cast<double>(row.size());
}

GroupSum sum_group(std::span<const double> values,
                   std::span<const std::uint32_t> group, std::uint32_t g) {
  GroupSum s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (group[i] == g) {
      s.sum += values[i];
      ++s.count;
    }
  }
  return s;
}

void fill_block(std::size_t block, std::size_t k, std::size_t df, double rho,
                std::uint64_t seed, std::span<double> out) {
  const std::size_t begin = block * kReplicateBlock;
  const std::size_t end = std::min(out.size(), begin + kReplicateBlock);
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(block + 1)));
  std::normal_distribution<double> normal;
  std::chi_squared_distribution<double> chi2(static_cast<double>(df));
  const double shared_w = std::sqrt(rho);
  const double own_w = std::sqrt(1.0 - rho);
  for (std::size_t r = begin; r < end; ++r) {
    const double common = shared_w * normal(rng);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double z = common + own_w * normal(rng);
      max_abs = std::max(max_abs, std::abs(z));
    }
    const double scale = std::sqrt(chi2(rng) / static_cast<double>(df));
    out[r] = max_abs / scale;
  }
}

std::size_t block_count(std::size_t n) {
  return (n + kReplicateBlock - 1) / kReplicateBlock;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void evaluate_grid_serial(const EvalInput& in, std::span<double> scores) {
  for (const auto& sr : in.systems) evaluate_one(in, sr, scores);
}

void evaluate_grid_parallel(const EvalInput& in, std::span<double> scores) {
  const auto n = static_cast<std::ptrdiff_t>(in.systems.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      evaluate_one(in, in.systems[i], scores);
    } catch (...) {
#pragma omp critical(gop_eval_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void mean_scores_serial(const ScoreGrid& grid, std::size_t measure,
                        std::optional<std::size_t> topic,
                        std::span<const std::size_t> systems,
                        std::span<double> out) {
  for (std::size_t i = 0; i < systems.size(); ++i) {
    out[i] = mean_of(grid, systems[i], measure, topic);
  }
}

void mean_scores_parallel(const ScoreGrid& grid, std::size_t measure,
                          std::optional<std::size_t> topic,
                          std::span<const std::size_t> systems,
                          std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(systems.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = mean_of(grid, systems[i], measure, topic);
  }
}

std::vector<GroupSum> group_sums_serial(std::span<const double> values,
                                        std::span<const std::uint32_t> group,
                                        std::size_t group_count) {
  std::vector<GroupSum> out(group_count);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[group[i]].sum += values[i];
    ++out[group[i]].count;
  }
  return out;
}

std::vector<GroupSum> group_sums_parallel(std::span<const double> values,
                                          std::span<const std::uint32_t> group,
                                          std::size_t group_count) {
  std::vector<GroupSum> out(group_count);
  const auto n = static_cast<std::ptrdiff_t>(group_count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t g = 0; g < n; ++g) {
    out[g] = sum_group(values, group, static_cast<std::uint32_t>(g));
  }
  return out;
}

void max_abs_t_serial(std::size_t k, std::size_t df, double rho,
                      std::uint64_t seed, std::span<double> out) {
  for (std::size_t b = 0; b < block_count(out.size()); ++b) {
    fill_block(b, k, df, rho, seed, out);
  }
}

void max_abs_t_parallel(std::size_t k, std::size_t df, double rho,
                        std::uint64_t seed, std::span<double> out) {
  const auto blocks = static_cast<std::ptrdiff_t>(block_count(out.size()));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    fill_block(static_cast<std::size_t>(b), k, df, rho, seed, out);
  }
}

}  // namespace gop::kernels
