#include "gop/dunnett.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gop/error.hpp"
#include "gop/kernels.hpp"

namespace gop {

double dunnett_critical_value(const CriticalValueQuery& q) {
  if (q.comparisons < 1 || q.df < 2 || !(q.alpha > 0.0 && q.alpha < 1.0) ||
      !(q.rho >= 0.0 && q.rho < 1.0) || q.replicates < 100) {
    throw Error(ErrorKind::kInvalidArgument,
                "critical value needs k >= 1, df >= 2, 0 < alpha < 1, "
                "0 <= rho < 1 and >= 100 replicates");
  }
  std::vector<double> stats(q.replicates);
  kernels::max_abs_t_parallel(q.comparisons, q.df, q.rho, q.seed, stats);
  // Smallest order statistic with empirical CDF >= 1 - alpha.
  const auto n = static_cast<double>(q.replicates);
  auto idx = static_cast<std::size_t>(std::ceil((1.0 - q.alpha) * n));
  idx = std::clamp<std::size_t>(idx, 1, q.replicates) - 1;
  std::nth_element(stats.begin(), stats.begin() + static_cast<std::ptrdiff_t>(idx),
                   stats.end());
  return stats[idx];
}

double CriticalValueCache::get(const CriticalValueQuery& query) {
  const auto key = query.key();
  {
    std::shared_lock lock(mutex_);
    if (auto it = values_.find(key); it != values_.end()) return it->second;
  }
  const double value = dunnett_critical_value(query);
  std::unique_lock lock(mutex_);
  return values_.emplace(key, value).first->second;
}

std::size_t CriticalValueCache::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

DunnettResult dunnett_top_group(std::span<const ScoreRow> input,
                                const DunnettOptions& options) {
  if (input.empty()) {
    throw Error(ErrorKind::kInsufficientData, "no systems to compare");
  }
  const std::size_t n = input.front().values.size();
  if (n < 2) {
    throw Error(ErrorKind::kInsufficientData,
                "insufficient topics: need >= 2 per system");
  }
  for (const auto& row : input) {
    if (row.values.size() != n) {
      throw Error(ErrorKind::kInvalidArgument,
                  "all systems need the same number of topics");
    }
  }

  // Canonical id order so that the pooled sum is independent of input order.
  std::vector<const ScoreRow*> rows;
  for (const auto& r : input) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(),
            [](const ScoreRow* a, const ScoreRow* b) { return a->id < b->id; });

  const std::size_t k_total = rows.size();
  std::vector<double> means(k_total);
  double ss = 0.0;
  for (std::size_t i = 0; i < k_total; ++i) {
    double sum = 0.0;
    for (double v : rows[i]->values) sum += v;
    means[i] = sum / static_cast<double>(n);
    for (double v : rows[i]->values) {
      const double d = v - means[i];
      ss += d * d;
    }
  }

  std::vector<std::size_t> order(k_total);
  for (std::size_t i = 0; i < k_total; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return means[a] > means[b];
                   });
  const std::size_t control = order.front();

  DunnettResult result;
  result.control = rows[control]->id;
  result.alpha = options.alpha;
  result.topics = n;
  result.df = k_total * (n - 1);
  result.pooled_sd = std::sqrt(ss / static_cast<double>(result.df));

  if (k_total == 1) {
    result.critical_value = std::numeric_limits<double>::infinity();
  } else {
    CriticalValueQuery q;
    q.comparisons = k_total - 1;
    q.df = result.df;
    q.alpha = options.alpha;
    q.seed = options.seed;
    q.replicates = options.replicates;
    result.critical_value =
        options.cache ? options.cache->get(q) : dunnett_critical_value(q);
  }

  const double se = result.pooled_sd * std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t i : order) {
    DunnettComparison c;
    c.id = rows[i]->id;
    c.mean = means[i];
    if (i != control) {
      const double diff = means[control] - means[i];
      if (se > 0.0) {
        c.t = std::abs(diff) / se;
      } else {
        c.t = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      }
      c.significant = c.t > result.critical_value;
    }
    if (!c.significant) result.top_group.push_back(c.id);
    result.systems.push_back(std::move(c));
  }
  return result;
}

}  // namespace gop
