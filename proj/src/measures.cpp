#include "gop/measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "gop/error.hpp"

namespace gop {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

double dcg(std::span<const int> gains, std::size_t depth) {
  double sum = 0.0;
  const std::size_t n = std::min(depth, gains.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (gains[i] > 0) sum += gains[i] / std::log2(static_cast<double>(i + 2));
  }
  return sum;
}

}  // namespace

double average_precision(std::span<const int> grades, int num_relevant) {
  if (num_relevant <= 0) return 0.0;
  double sum = 0.0;
  int found = 0;
  for (std::size_t i = 0; i < grades.size(); ++i) {
    if (grades[i] >= 1) {
      ++found;
      sum += static_cast<double>(found) / static_cast<double>(i + 1);
    }
  }
  return sum / num_relevant;
}

double precision_at(int k, std::span<const int> grades) {
  if (k < 1) {
    throw Error(ErrorKind::kInvalidArgument, "precision cutoff must be >= 1");
  }
  const std::size_t n = std::min<std::size_t>(k, grades.size());
  int hits = 0;
  for (std::size_t i = 0; i < n; ++i) hits += grades[i] >= 1;
  return static_cast<double>(hits) / k;
}

double r_precision(std::span<const int> grades, int num_relevant) {
  if (num_relevant <= 0) return 0.0;
  return precision_at(num_relevant, grades);
}

double rank_biased_precision(double persistence, std::span<const int> grades) {
  if (!(persistence > 0.0 && persistence < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "RBP persistence must lie in (0, 1)");
  }
  double sum = 0.0;
  double weight = 1.0;
  for (int g : grades) {
    if (g >= 1) sum += weight;
    weight *= persistence;
  }
  return (1.0 - persistence) * sum;
}

double ndcg_at(std::optional<int> cutoff, std::span<const int> grades,
               std::span<const int> ideal) {
  if (cutoff && *cutoff < 1) {
    throw Error(ErrorKind::kInvalidArgument, "nDCG cutoff must be >= 1");
  }
  const std::size_t depth = cutoff ? static_cast<std::size_t>(*cutoff)
                                   : std::max(grades.size(), ideal.size());
  const double ideal_gain = dcg(ideal, depth);
  if (ideal_gain <= 0.0) return 0.0;
  return dcg(grades, depth) / ideal_gain;
}

double expected_reciprocal_rank(std::span<const int> grades, int max_grade) {
  if (max_grade <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "no graded scale (max grade 0)");
  }
  const double scale = std::ldexp(1.0, max_grade);
  double not_stopped = 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < grades.size(); ++i) {
    const int g = grades[i];
    if (g > max_grade) {
      throw Error(ErrorKind::kInvalidArgument,
                  "grade " + std::to_string(g) + " exceeds max grade " +
                      std::to_string(max_grade));
    }
    if (g <= 0) continue;
    const double satisfy = (std::ldexp(1.0, g) - 1.0) / scale;
    sum += not_stopped * satisfy / static_cast<double>(i + 1);
    not_stopped *= 1.0 - satisfy;
  }
  return sum;
}

double evaluate(const MeasureId& m, std::span<const int> grades,
                const TopicJudgments& judgments) {
  switch (m.kind) {
    case MeasureKind::kAveragePrecision: {
      auto g = m.cutoff > 0 ? grades.first(std::min<std::size_t>(
                                  m.cutoff, grades.size()))
                            : grades;
      return average_precision(g, judgments.relevant);
    }
    case MeasureKind::kPrecisionAt:
      return precision_at(m.cutoff, grades);
    case MeasureKind::kRPrecision:
      return r_precision(grades, judgments.relevant);
    case MeasureKind::kRankBiasedPrecision:
      return rank_biased_precision(m.persistence, grades);
    case MeasureKind::kNdcg:
      return ndcg_at(m.cutoff > 0 ? std::optional<int>(m.cutoff) : std::nullopt,
                     grades, judgments.ideal);
    case MeasureKind::kExpectedReciprocalRank:
      return expected_reciprocal_rank(grades, m.max_grade);
  }
  return 0.0;
}

MeasureRegistry MeasureRegistry::standard(double rbp_persistence,
                                          int max_grade) {
  MeasureRegistry r;
  r.add({"AP", MeasureKind::kAveragePrecision});
  r.add({"P@10", MeasureKind::kPrecisionAt, 10});
  r.add({"Rprec", MeasureKind::kRPrecision});
  r.add({"RBP", MeasureKind::kRankBiasedPrecision, 0, rbp_persistence});
  r.add({"nDCG", MeasureKind::kNdcg});
  r.add({"nDCG@20", MeasureKind::kNdcg, 20});
  r.add({"ERR", MeasureKind::kExpectedReciprocalRank, 0, 0.8, max_grade});
  return r;
}

void MeasureRegistry::add(MeasureId measure) {
  if (measure.kind == MeasureKind::kPrecisionAt && measure.cutoff < 1) {
    throw Error(ErrorKind::kInvalidArgument, "P@k needs k >= 1");
  }
  if (measure.kind == MeasureKind::kRankBiasedPrecision &&
      !(measure.persistence > 0.0 && measure.persistence < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "RBP needs 0 < p < 1");
  }
  for (auto& m : measures_) {
    if (iequals(m.name, measure.name)) {
      m = std::move(measure);
      return;
    }
  }
  measures_.push_back(std::move(measure));
}

bool MeasureRegistry::is_reserved(std::string_view name) {
  return iequals(name, "twist");
}

const MeasureId& MeasureRegistry::find(std::string_view name) const {
  for (const auto& m : measures_) {
    if (iequals(m.name, name)) return m;
  }
  std::string msg = "unknown measure '" + std::string(name) + "'";
  if (is_reserved(name)) msg += " (reserved slot, not implemented)";
  throw Error(ErrorKind::kUnknownMeasure, msg, "measure");
}

bool MeasureRegistry::contains(std::string_view name) const {
  return std::any_of(measures_.begin(), measures_.end(),
                     [&](const MeasureId& m) { return iequals(m.name, name); });
}

std::vector<std::string> MeasureRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& m : measures_) out.push_back(m.name);
  return out;
}

std::vector<TopicScore> evaluate_run(const RunRankings& run, const Qrels& qrels,
                                     std::span<const std::string> topics,
                                     const MeasureId& measure) {
  std::vector<TopicScore> out;
  out.reserve(topics.size());
  static const std::vector<RunLine> kEmpty;
  for (const auto& topic : topics) {
    auto it = run.find(topic);
    const auto& ranking = it == run.end() ? kEmpty : it->second;
    const auto& judgments = qrels.topic(topic);
    const auto grades = judge(ranking, judgments);
    out.push_back({topic, evaluate(measure, grades, judgments)});
  }
  return out;
}

}  // namespace gop
