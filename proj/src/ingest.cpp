#include "gop/ingest.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "gop/error.hpp"

namespace gop {

namespace {

// Splits on spaces/tabs; tolerates a trailing '\r'.
std::vector<std::string_view> split_fields(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& value) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

Error line_error(std::size_t line, const std::string& what) {
  return Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

bool match_pattern(std::string_view name, std::string_view pattern,
                   std::string_view& captured) {
  const auto star = pattern.find('*');
  const auto prefix = pattern.substr(0, star);
  const auto suffix = pattern.substr(star + 1);
  if (name.size() < prefix.size() + suffix.size() + 1) return false;
  if (name.substr(0, prefix.size()) != prefix) return false;
  if (name.substr(name.size() - suffix.size()) != suffix) return false;
  captured = name.substr(prefix.size(),
                         name.size() - prefix.size() - suffix.size());
  return true;
}

}  // namespace

void normalize_ranking(std::vector<RunLine>& lines) {
  std::sort(lines.begin(), lines.end(),
            [](const RunLine& a, const RunLine& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.doc_id > b.doc_id;
            });
  int rank = 1;
  for (auto& line : lines) line.rank = rank++;
}

RunRankings parse_run(std::istream& in, std::size_t depth) {
  RunRankings out;
  std::map<std::string, std::unordered_set<std::string>, std::less<>> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto fields = split_fields(raw);
    if (fields.empty()) continue;
    if (fields.size() != 6) {
      throw line_error(line_no, "expected 6 fields, got " +
                                    std::to_string(fields.size()));
    }
    RunLine line;
    line.topic_id = std::string(fields[0]);
    line.doc_id = std::string(fields[2]);
    if (!parse_number(fields[3], line.rank)) {
      throw line_error(line_no, "unparseable rank '" + std::string(fields[3]) + "'");
    }
    if (!parse_number(fields[4], line.score)) {
      throw line_error(line_no, "unparseable score '" + std::string(fields[4]) + "'");
    }
    line.tag = std::string(fields[5]);
    if (!seen[line.topic_id].insert(line.doc_id).second) {
      throw line_error(line_no, "duplicate document '" + line.doc_id +
                                    "' for topic " + line.topic_id);
    }
    out[line.topic_id].push_back(std::move(line));
  }
  for (auto& [topic, lines] : out) {
    normalize_ranking(lines);
    if (lines.size() > depth) lines.resize(depth);
  }
  return out;
}

RunRankings parse_run(std::string_view text, std::size_t depth) {
  std::istringstream in{std::string(text)};
  return parse_run(in, depth);
}

void Qrels::add(const std::string& topic, const std::string& doc, int grade,
                std::size_t line) {
  const std::string where = line ? "line " + std::to_string(line) + ": " : "";
  if (grade < 0) {
    throw Error(ErrorKind::kParse, where + "negative grade");
  }
  auto& tj = topics_[topic];
  auto [it, inserted] = tj.grades.emplace(doc, grade);
  if (!inserted) {
    if (it->second != grade) {
      throw Error(ErrorKind::kParse, where + "conflicting grades for topic " +
                                         topic + ", document " + doc);
    }
    return;
  }
  if (grade >= 1) ++tj.relevant;
  max_grade_ = std::max(max_grade_, grade);
}

void Qrels::finalize() {
  for (auto& [topic, tj] : topics_) {
    tj.ideal.clear();
    tj.ideal.reserve(tj.grades.size());
    for (const auto& [doc, g] : tj.grades) tj.ideal.push_back(g);
    std::sort(tj.ideal.begin(), tj.ideal.end(), std::greater<>());
  }
}

const TopicJudgments& Qrels::topic(std::string_view topic_id) const {
  static const TopicJudgments kEmpty;
  auto it = topics_.find(topic_id);
  return it == topics_.end() ? kEmpty : it->second;
}

bool Qrels::has_topic(std::string_view topic_id) const {
  return topics_.find(topic_id) != topics_.end();
}

int Qrels::grade(std::string_view topic_id, const std::string& doc) const {
  return topic(topic_id).grade(doc);
}

std::size_t Qrels::judgment_count() const {
  std::size_t n = 0;
  for (const auto& [t, tj] : topics_) n += tj.grades.size();
  return n;
}

Qrels parse_qrels(std::istream& in) {
  Qrels q;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto fields = split_fields(raw);
    if (fields.empty()) continue;
    if (fields.size() != 4) {
      throw line_error(line_no, "expected 4 fields, got " +
                                    std::to_string(fields.size()));
    }
    int grade = 0;
    if (!parse_number(fields[3], grade)) {
      throw line_error(line_no, "unparseable grade '" + std::string(fields[3]) + "'");
    }
    q.add(std::string(fields[0]), std::string(fields[2]), grade, line_no);
  }
  q.finalize();
  return q;
}

Qrels parse_qrels(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_qrels(in);
}

std::vector<int> judge(const std::vector<RunLine>& ranking,
                       const TopicJudgments& judgments) {
  std::vector<int> grades;
  grades.reserve(ranking.size());
  for (const auto& line : ranking) grades.push_back(judgments.grade(line.doc_id));
  return grades;
}

RunFileIndex index_run_files(const CollectionManifest& manifest) {
  namespace fs = std::filesystem;
  RunFileIndex index;
  index.report.expected = manifest.grid_size();

  std::error_code ec;
  if (!manifest.runs_dir.empty() && fs::is_directory(manifest.runs_dir, ec)) {
    std::vector<fs::path> entries;
    for (const auto& entry : fs::directory_iterator(manifest.runs_dir, ec)) {
      if (entry.is_regular_file()) entries.push_back(entry.path());
    }
    std::sort(entries.begin(), entries.end());
    for (const auto& path : entries) {
      const std::string name = path.filename().string();
      std::string_view id;
      if (!match_pattern(name, manifest.run_pattern, id)) continue;
      try {
        index.files.emplace(manifest.parse_system_id(id), path.string());
      } catch (const Error&) {
        index.report.unrecognized.push_back(name);
      }
    }
  }

  index.report.loaded = index.files.size();
  for (std::size_t s = 0; s < manifest.grid_size(); ++s) {
    const auto config = manifest.system_at(s);
    if (!index.files.count(config)) index.report.missing.push_back(config);
  }
  return index;
}

Qrels load_qrels(const CollectionManifest& manifest) {
  std::ifstream in(manifest.qrels_path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIo,
                "cannot read qrels " + manifest.qrels_path.string(), "qrels");
  }
  return parse_qrels(in);
}

RunRankings load_run_file(const std::string& path, std::size_t depth) {
  const std::string text = read_file(path);
  try {
    return parse_run(text, depth);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

LoadedCollection load_collection(
    std::shared_ptr<const CollectionManifest> manifest) {
  LoadedCollection out;
  out.manifest = manifest;
  out.qrels = load_qrels(*manifest);

  auto index = index_run_files(*manifest);
  if (index.files.empty()) {
    throw Error(ErrorKind::kIo, "no run files found for collection " +
                                    manifest->collection_id,
                "runs");
  }

  // Parse independently per file, then merge in system order.
  std::vector<std::pair<SystemConfig, std::string>> jobs(index.files.begin(),
                                                         index.files.end());
  std::vector<RunRankings> parsed(jobs.size());
  std::vector<std::string> failures(jobs.size());
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      parsed[i] = load_run_file(jobs[i].second, manifest->depth);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!failures[i].empty()) throw Error(ErrorKind::kParse, failures[i]);
    out.runs.emplace(jobs[i].first, std::move(parsed[i]));
  }
  out.report = std::move(index.report);
  return out;
}

}  // namespace gop
