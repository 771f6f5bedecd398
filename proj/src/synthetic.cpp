#include "gop/synthetic.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>

#include "gop/error.hpp"
#include "gop/kernels.hpp"

namespace gop::synth {

namespace {

const std::map<std::string, double>& planted(Axis axis) {
  static const std::map<std::string, double> kStop = {
      {"nostop", -0.03}, {"indri", 0.05},  {"lucene", -0.01},
      {"snowball", 0.02}, {"smart", 0.03}, {"terrier", 0.01}};
  static const std::map<std::string, double> kStem = {
      {"nolug", -0.04},         {"weakPorter", 0.0}, {"porter", 0.02},
      {"snowballPorter", 0.02}, {"krovetz", 0.05},   {"lovins", -0.03}};
  static const std::map<std::string, double> kModel = {
      {"bm25", 0.03},        {"tfidf", -0.03}, {"lemurtfidf", -0.04},
      {"dirichletlm", 0.02}, {"dph", 0.03},    {"dlh", 0.01},
      {"hiemstralm", -0.02}, {"pl2", 0.01},    {"inl2", 0.02}};
  switch (axis) {
    case Axis::kStoplist: return kStop;
    case Axis::kStemmer: return kStem;
    case Axis::kModel: return kModel;
  }
  return kStop;
}

double uniform_hash(std::uint64_t key) {
  return static_cast<double>(kernels::splitmix64(key) >> 11) * 0x1.0p-53;
}

double level_effect(const CollectionManifest& m, Axis axis, std::size_t level,
                    std::uint64_t seed) {
  const auto& table = planted(axis);
  if (auto it = table.find(m.level_name(axis, level)); it != table.end()) {
    return it->second;
  }
  const std::uint64_t key = seed ^ (0x1000ULL * (axis_slot(axis) + 1) + level);
  return (uniform_hash(key) - 0.5) * 0.08;
}

double measure_offset(const MeasureId& measure) {
  switch (measure.kind) {
    case MeasureKind::kAveragePrecision: return 0.0;
    case MeasureKind::kPrecisionAt: return 0.15;
    case MeasureKind::kRPrecision: return 0.03;
    case MeasureKind::kRankBiasedPrecision: return 0.1;
    case MeasureKind::kNdcg: return measure.cutoff > 0 ? 0.12 : 0.2;
    case MeasureKind::kExpectedReciprocalRank: return 0.05;
  }
  return 0.0;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
}

}  // namespace

CollectionManifest paper_manifest(const std::string& collection_id,
                                  std::size_t topics, int first_topic) {
  CollectionManifest m;
  m.collection_id = collection_id;
  for (std::size_t t = 0; t < topics; ++t) {
    m.topic_ids.push_back(std::to_string(first_topic + static_cast<int>(t)));
  }
  m.levels[axis_slot(Axis::kStoplist)] = {"nostop", "indri", "lucene",
                                          "snowball", "smart", "terrier"};
  m.levels[axis_slot(Axis::kStemmer)] = {"nolug",          "weakPorter",
                                         "porter",         "snowballPorter",
                                         "krovetz",        "lovins"};
  m.levels[axis_slot(Axis::kModel)] = {
      "bb2",  "bm25", "dfiz",  "dfree", "dirichletlm", "dlh",
      "dph",  "hiemstralm", "ifb2", "inb2", "inl2", "inexpb2",
      "jskls", "lemurtfidf", "lgd", "pl2", "tfidf"};
  for (const auto& model : m.levels[axis_slot(Axis::kModel)]) {
    if (model == "tfidf" || model == "lemurtfidf") {
      m.model_families.push_back(ModelFamily::kVectorSpace);
    } else if (model == "dirichletlm" || model == "hiemstralm" ||
               model == "lgd") {
      m.model_families.push_back(ModelFamily::kLanguageModel);
    } else {
      m.model_families.push_back(ModelFamily::kProbabilistic);
    }
  }
  m.declared_systems = 612;
  m.validate();
  return m;
}

CollectionManifest toy_manifest(std::size_t stoplists, std::size_t stemmers,
                                std::size_t models, std::size_t topics,
                                const std::string& collection_id) {
  CollectionManifest m;
  m.collection_id = collection_id;
  for (std::size_t t = 0; t < topics; ++t) {
    m.topic_ids.push_back(std::to_string(t + 1));
  }
  for (std::size_t i = 0; i < stoplists; ++i) {
    m.levels[axis_slot(Axis::kStoplist)].push_back("s" + std::to_string(i));
  }
  for (std::size_t i = 0; i < stemmers; ++i) {
    m.levels[axis_slot(Axis::kStemmer)].push_back("t" + std::to_string(i));
  }
  for (std::size_t i = 0; i < models; ++i) {
    m.levels[axis_slot(Axis::kModel)].push_back("m" + std::to_string(i));
    m.model_families.push_back(static_cast<ModelFamily>(i % 3));
  }
  m.validate();
  return m;
}

double system_quality(const CollectionManifest& m, const SystemConfig& c,
                      std::uint64_t seed) {
  double q = 0.25;
  for (Axis axis : kAllAxes) q += level_effect(m, axis, c.level(axis), seed);
  const auto& stop = m.level_name(Axis::kStoplist, c.level(Axis::kStoplist));
  const auto& stem = m.level_name(Axis::kStemmer, c.level(Axis::kStemmer));
  if (stem == "krovetz" && stop == "indri") q += 0.03;
  if (stem == "krovetz" && stop == "lucene") q -= 0.04;
  return q;
}

ScoreGrid synthetic_grid(std::shared_ptr<const CollectionManifest> manifest,
                         std::span<const MeasureId> measures,
                         std::uint64_t seed,
                         const std::vector<std::size_t>& missing) {
  const auto& m = *manifest;
  const std::size_t systems = m.grid_size();
  const std::size_t topics = m.topic_ids.size();
  const std::size_t nm = measures.size();

  std::vector<double> difficulty(topics);
  {
    std::mt19937_64 rng(kernels::splitmix64(seed));
    std::normal_distribution<double> normal(0.0, 0.08);
    for (auto& d : difficulty) d = normal(rng);
  }

  std::vector<std::uint8_t> loaded(systems, 1);
  for (auto s : missing) loaded.at(s) = 0;

  std::vector<double> scores(systems * nm * topics, 0.0);
  for (std::size_t s = 0; s < systems; ++s) {
    if (!loaded[s]) continue;
    const double q = system_quality(m, m.system_at(s), seed);
    std::mt19937_64 rng(kernels::splitmix64(seed ^ (s + 1) * 0x9E37ULL));
    std::normal_distribution<double> noise(0.0, 0.04);
    for (std::size_t mi = 0; mi < nm; ++mi) {
      const double offset = measure_offset(measures[mi]);
      for (std::size_t t = 0; t < topics; ++t) {
        const double v = q + offset + difficulty[t] + noise(rng);
        scores[(s * nm + mi) * topics + t] = std::clamp(v, 0.0, 1.0);
      }
    }
  }
  return ScoreGrid(std::move(manifest),
                   std::vector<MeasureId>(measures.begin(), measures.end()),
                   std::move(scores), std::move(loaded));
}

std::string manifest_yaml(const CollectionManifest& m, const std::string& qrels,
                          const std::string& runs, const std::string& scores) {
  YAML::Emitter out;
  out.SetDoublePrecision(15);
  out << YAML::BeginMap;
  out << YAML::Key << "collection" << YAML::Value << m.collection_id;
  out << YAML::Key << "topics" << YAML::Value << YAML::Flow << m.topic_ids;
  out << YAML::Key << "separator" << YAML::Value << YAML::DoubleQuoted
      << m.separator;
  out << YAML::Key << "axes" << YAML::Value << YAML::BeginMap;
  for (Axis axis : kAllAxes) {
    out << YAML::Key << std::string(axis_name(axis)) << YAML::Value
        << YAML::Flow << m.axis_levels(axis);
  }
  out << YAML::EndMap;
  out << YAML::Key << "model_families" << YAML::Value << YAML::BeginMap;
  for (auto family : {ModelFamily::kVectorSpace, ModelFamily::kProbabilistic,
                      ModelFamily::kLanguageModel}) {
    std::vector<std::string> members;
    for (std::size_t i = 0; i < m.level_count(Axis::kModel); ++i) {
      if (m.model_family(i) == family) {
        members.push_back(m.level_name(Axis::kModel, i));
      }
    }
    if (members.empty()) continue;
    out << YAML::Key << std::string(family_name(family)) << YAML::Value
        << YAML::Flow << members;
  }
  out << YAML::EndMap;
  if (!qrels.empty()) out << YAML::Key << "qrels" << YAML::Value << qrels;
  if (!runs.empty()) out << YAML::Key << "runs" << YAML::Value << runs;
  if (!scores.empty()) out << YAML::Key << "scores" << YAML::Value << scores;
  out << YAML::Key << "systems" << YAML::Value << m.grid_size();
  out << YAML::Key << "depth" << YAML::Value << m.depth;
  out << YAML::Key << "rbp_persistence" << YAML::Value << m.rbp_persistence;
  if (m.max_grade) out << YAML::Key << "max_grade" << YAML::Value << *m.max_grade;
  if (!m.measures.empty()) {
    out << YAML::Key << "measures" << YAML::Value << YAML::Flow << m.measures;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::filesystem::path write_run_collection(const std::filesystem::path& dir,
                                           const CollectionManifest& manifest,
                                           const RunCollectionOptions& opts) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "runs");
  const std::size_t docs = std::max<std::size_t>(opts.docs_per_topic, 4);

  // Judgments: the first `relevant[t]` documents of each topic are relevant.
  std::vector<std::vector<int>> grades(manifest.topic_ids.size());
  std::string qrels;
  {
    std::mt19937_64 rng(kernels::splitmix64(opts.seed));
    std::uniform_int_distribution<std::size_t> count(2, docs / 3);
    std::uniform_int_distribution<int> grade(1, std::max(1, opts.max_grade));
    for (std::size_t t = 0; t < manifest.topic_ids.size(); ++t) {
      grades[t].assign(docs, 0);
      const std::size_t r = count(rng);
      for (std::size_t d = 0; d < docs; ++d) {
        if (d < r) grades[t][d] = grade(rng);
        // Judge a few non-relevant documents too.
        if (d < r + 3) {
          qrels += manifest.topic_ids[t] + " 0 D" + manifest.topic_ids[t] +
                   "-" + std::to_string(d) + " " + std::to_string(grades[t][d]) +
                   "\n";
        }
      }
    }
  }
  write_text(dir / "qrels.txt", qrels);

  std::vector<std::uint8_t> skip(manifest.grid_size(), 0);
  for (auto s : opts.missing) skip.at(s) = 1;

  char buf[128];
  for (std::size_t s = 0; s < manifest.grid_size(); ++s) {
    if (skip[s]) continue;
    const std::string id = manifest.system_id(s);
    const double q = system_quality(manifest, manifest.system_at(s), opts.seed);
    std::mt19937_64 rng(kernels::splitmix64(opts.seed ^ (s + 1) * 0x51EDULL));
    std::normal_distribution<double> noise(0.0, 1.0);
    std::string text;
    for (std::size_t t = 0; t < manifest.topic_ids.size(); ++t) {
      const auto& topic = manifest.topic_ids[t];
      for (std::size_t d = 0; d < docs; ++d) {
        const double boost = grades[t][d] > 0 ? 4.0 * q : 0.0;
        const double score = 10.0 + boost + noise(rng);
        std::snprintf(buf, sizeof buf, "%s Q0 D%s-%zu %zu %.6f %s\n",
                      topic.c_str(), topic.c_str(), d, d + 1, score,
                      id.c_str());
        text += buf;
      }
    }
    write_text(dir / "runs" / (id + ".run"), text);
  }

  const fs::path path = dir / "manifest.yaml";
  write_text(path, manifest_yaml(manifest, "qrels.txt", "runs/*.run", ""));
  return path;
}

}  // namespace gop::synth
