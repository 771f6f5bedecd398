#pragma once
// TREC run / qrels parsing and collection loading.

#include <cstddef>
#include <istream>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gop/manifest.hpp"

namespace gop {

struct RunLine {
  std::string topic_id;
  std::string doc_id;
  int rank = 0;
  double score = 0.0;
  std::string tag;
};

// topic id -> lines in normalized rank order (rank field = 1..n).
using RunRankings = std::map<std::string, std::vector<RunLine>, std::less<>>;

inline constexpr std::size_t kDefaultDepth = 1000;

// Descending score, ties by descending doc id, then ranks renumbered 1..n.
void normalize_ranking(std::vector<RunLine>& lines);

// Six whitespace-separated columns per line; LF or CRLF. Rankings longer
// than `depth` are truncated after normalization.
RunRankings parse_run(std::istream& in, std::size_t depth = kDefaultDepth);
RunRankings parse_run(std::string_view text, std::size_t depth = kDefaultDepth);

struct TopicJudgments {
  std::unordered_map<std::string, int> grades;
  // Documents with grade >= 1.
  int relevant = 0;
  // All judged grades, descending. Basis for ideal-ranking measures.
  std::vector<int> ideal;

  int grade(const std::string& doc) const {
    auto it = grades.find(doc);
    return it == grades.end() ? 0 : it->second;
  }
};

class Qrels {
 public:
  // Inserts a judgment; throws on a negative grade or a conflicting repeat.
  void add(const std::string& topic, const std::string& doc, int grade,
           std::size_t line = 0);
  // Sorts ideal lists; call once after the last add().
  void finalize();

  const TopicJudgments& topic(std::string_view topic_id) const;
  bool has_topic(std::string_view topic_id) const;
  int grade(std::string_view topic_id, const std::string& doc) const;
  int max_grade() const { return max_grade_; }
  std::size_t judgment_count() const;
  const std::map<std::string, TopicJudgments, std::less<>>& topics() const {
    return topics_;
  }

 private:
  std::map<std::string, TopicJudgments, std::less<>> topics_;
  int max_grade_ = 0;
};

// Four whitespace-separated columns: topic, iteration, doc, grade.
Qrels parse_qrels(std::istream& in);
Qrels parse_qrels(std::string_view text);

// Relevance grade of each ranked document (unjudged = 0).
std::vector<int> judge(const std::vector<RunLine>& ranking,
                       const TopicJudgments& judgments);

struct CompletenessReport {
  std::size_t expected = 0;
  std::size_t loaded = 0;
  std::vector<SystemConfig> missing;
  // Run files matching the pattern whose names do not decode to a system.
  std::vector<std::string> unrecognized;

  double percent() const {
    return expected == 0 ? 0.0 : 100.0 * static_cast<double>(loaded) /
                                     static_cast<double>(expected);
  }
  bool complete() const { return loaded == expected; }
};

// Locates the run file for every grid point under manifest.runs_dir.
struct RunFileIndex {
  std::map<SystemConfig, std::string> files;  // config -> path
  CompletenessReport report;
};
RunFileIndex index_run_files(const CollectionManifest& manifest);

struct LoadedCollection {
  std::shared_ptr<const CollectionManifest> manifest;
  Qrels qrels;
  std::map<SystemConfig, RunRankings> runs;
  CompletenessReport report;
};

Qrels load_qrels(const CollectionManifest& manifest);
RunRankings load_run_file(const std::string& path, std::size_t depth);

// Parses qrels and every run file. Missing runs go into the completeness
// report; unreadable qrels or zero runs are fatal.
LoadedCollection load_collection(
    std::shared_ptr<const CollectionManifest> manifest);

}  // namespace gop
