#pragma once
// Per-topic effectiveness measures over a judged ranking.
//
// Every measure takes the grade sequence of a ranking (grade of the document
// at rank 1, 2, ...; unjudged = 0). Binary relevance means grade >= 1.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gop/ingest.hpp"

namespace gop {

double average_precision(std::span<const int> grades, int num_relevant);
double precision_at(int k, std::span<const int> grades);
double r_precision(std::span<const int> grades, int num_relevant);
double rank_biased_precision(double persistence, std::span<const int> grades);
// Gain = grade, discount = 1/log2(rank+1). `cutoff` empty = whole ranking.
// `ideal` holds all judged grades in descending order.
double ndcg_at(std::optional<int> cutoff, std::span<const int> grades,
               std::span<const int> ideal);
// Satisfaction probability (2^g - 1) / 2^max_grade at each rank.
double expected_reciprocal_rank(std::span<const int> grades, int max_grade);

enum class MeasureKind {
  kAveragePrecision,
  kPrecisionAt,
  kRPrecision,
  kRankBiasedPrecision,
  kNdcg,
  kExpectedReciprocalRank,
};

struct MeasureId {
  std::string name;
  MeasureKind kind = MeasureKind::kAveragePrecision;
  int cutoff = 0;  // 0 = no cutoff
  double persistence = 0.8;
  int max_grade = 1;

  bool operator==(const MeasureId&) const = default;
};

double evaluate(const MeasureId& measure, std::span<const int> grades,
                const TopicJudgments& judgments);

// Name -> parameterized measure. Lookup is case-insensitive.
class MeasureRegistry {
 public:
  // AP, P@10, Rprec, RBP, nDCG, nDCG@20, ERR.
  static MeasureRegistry standard(double rbp_persistence = 0.8,
                                  int max_grade = 1);

  void add(MeasureId measure);
  // Throws ErrorKind::kUnknownMeasure for unregistered or reserved names.
  const MeasureId& find(std::string_view name) const;
  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;
  const std::vector<MeasureId>& measures() const { return measures_; }

  // Named slots with no implementation (e.g. Twist).
  static bool is_reserved(std::string_view name);

 private:
  std::vector<MeasureId> measures_;
};

struct TopicScore {
  std::string topic_id;
  double value = 0.0;
};

// One score per topic in `topics`; topics without run output are evaluated
// on an empty ranking.
std::vector<TopicScore> evaluate_run(const RunRankings& run, const Qrels& qrels,
                                     std::span<const std::string> topics,
                                     const MeasureId& measure);

}  // namespace gop
