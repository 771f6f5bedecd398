#pragma once
// Many-to-one comparisons against the empirically best system (Dunnett's
// procedure, two-sided, equal group sizes, pooled variance).
//
// Critical values are Monte Carlo quantiles of max_i |T_i| over k
// equicorrelated Student-t variates; with equal group sizes the correlation
// between comparisons sharing the control is 0.5.

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace gop {

inline constexpr std::size_t kDefaultReplicates = 200000;
inline constexpr std::uint64_t kDefaultSeed = 0x5A4E4B4559ULL;
inline constexpr double kEqualGroupCorrelation = 0.5;

struct CriticalValueQuery {
  std::size_t comparisons = 1;  // k >= 1
  std::size_t df = 2;           // >= 2
  double alpha = 0.05;          // (0, 1)
  double rho = kEqualGroupCorrelation;  // [0, 1)
  std::uint64_t seed = kDefaultSeed;
  std::size_t replicates = kDefaultReplicates;

  auto key() const {
    return std::tuple(comparisons, df, alpha, rho, seed, replicates);
  }
};

// (1 - alpha) empirical quantile of the simulated max |T_i|. Deterministic
// for a fixed query.
double dunnett_critical_value(const CriticalValueQuery& query);

// Concurrent-read, insert-only memo of critical values.
class CriticalValueCache {
 public:
  double get(const CriticalValueQuery& query);
  std::size_t size() const;

 private:
  using Key = decltype(std::declval<CriticalValueQuery>().key());
  mutable std::shared_mutex mutex_;
  std::map<Key, double> values_;
};

struct ScoreRow {
  std::string id;
  std::vector<double> values;  // one per topic
};

struct DunnettComparison {
  std::string id;
  double mean = 0.0;
  // |mean_control - mean| / (s * sqrt(2/n)); +inf when s = 0 and the means
  // differ. Zero for the control itself.
  double t = 0.0;
  bool significant = false;
};

struct DunnettResult {
  std::string control;
  double alpha = 0.05;
  std::size_t df = 0;
  std::size_t topics = 0;
  double pooled_sd = 0.0;
  // +inf when there is nothing to compare (single system).
  double critical_value = 0.0;
  // Every input system, by descending mean then ascending id.
  std::vector<DunnettComparison> systems;
  // Control plus every non-significant system, same order.
  std::vector<std::string> top_group;
};

struct DunnettOptions {
  double alpha = 0.05;
  std::uint64_t seed = kDefaultSeed;
  std::size_t replicates = kDefaultReplicates;
  CriticalValueCache* cache = nullptr;
};

// Throws kInsufficientData when there are no rows or fewer than 2 topics,
// kInvalidArgument when rows differ in length.
DunnettResult dunnett_top_group(std::span<const ScoreRow> rows,
                                const DunnettOptions& options);

}  // namespace gop
