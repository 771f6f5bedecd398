#include "gop/manifest.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "gop/error.hpp"

namespace gop {

namespace {

std::optional<long long> as_integer(std::string_view s) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::vector<std::string> string_list(const YAML::Node& node,
                                     const std::string& field) {
  if (!node || !node.IsSequence()) {
    throw Error(ErrorKind::kParse, "manifest: '" + field + "' must be a list",
                field);
  }
  std::vector<std::string> out;
  out.reserve(node.size());
  for (const auto& item : node) out.push_back(item.as<std::string>());
  return out;
}

}  // namespace

std::string_view axis_name(Axis axis) {
  switch (axis) {
    case Axis::kStoplist: return "stoplist";
    case Axis::kStemmer: return "stemmer";
    case Axis::kModel: return "model";
  }
  return "?";
}

Axis parse_axis(std::string_view name) {
  for (Axis axis : kAllAxes) {
    if (axis_name(axis) == name) return axis;
  }
  throw Error(ErrorKind::kUnknownAxis,
              "unknown axis '" + std::string(name) + "'", "axis");
}

std::string_view family_name(ModelFamily family) {
  switch (family) {
    case ModelFamily::kVectorSpace: return "vector_space";
    case ModelFamily::kProbabilistic: return "probabilistic";
    case ModelFamily::kLanguageModel: return "language_model";
  }
  return "?";
}

ModelFamily parse_family(std::string_view name) {
  for (auto f : {ModelFamily::kVectorSpace, ModelFamily::kProbabilistic,
                 ModelFamily::kLanguageModel}) {
    if (family_name(f) == name) return f;
  }
  throw Error(ErrorKind::kParse,
              "unknown model family '" + std::string(name) + "'",
              "model_families");
}

bool topic_less(std::string_view a, std::string_view b) {
  auto ia = as_integer(a);
  auto ib = as_integer(b);
  if (ia && ib) {
    if (*ia != *ib) return *ia < *ib;
  }
  return a < b;
}

std::vector<std::string> expand_topic_range(std::string_view spec) {
  auto dash = spec.find('-');
  if (dash == std::string_view::npos) {
    throw Error(ErrorKind::kParse,
                "topic range '" + std::string(spec) + "' is not FIRST-LAST",
                "topics");
  }
  auto first = as_integer(spec.substr(0, dash));
  auto last = as_integer(spec.substr(dash + 1));
  if (!first || !last || *last < *first) {
    throw Error(ErrorKind::kParse,
                "topic range '" + std::string(spec) + "' is not FIRST-LAST",
                "topics");
  }
  std::vector<std::string> out;
  for (long long t = *first; t <= *last; ++t) out.push_back(std::to_string(t));
  return out;
}

std::optional<std::size_t> CollectionManifest::find_level(
    Axis axis, std::string_view name) const {
  const auto& names = axis_levels(axis);
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

std::size_t CollectionManifest::level_index(Axis axis,
                                            std::string_view name) const {
  if (auto idx = find_level(axis, name)) return *idx;
  throw Error(ErrorKind::kUnknownLevel,
              "unknown " + std::string(axis_name(axis)) + " level '" +
                  std::string(name) + "'",
              std::string(axis_name(axis)));
}

ModelFamily CollectionManifest::model_family(std::size_t model_level) const {
  if (model_level < model_families.size()) return model_families[model_level];
  return ModelFamily::kProbabilistic;
}

std::size_t CollectionManifest::grid_size() const {
  return level_count(Axis::kStoplist) * level_count(Axis::kStemmer) *
         level_count(Axis::kModel);
}

std::size_t CollectionManifest::system_index(const SystemConfig& c) const {
  return (static_cast<std::size_t>(c.level(Axis::kStoplist)) *
              level_count(Axis::kStemmer) +
          c.level(Axis::kStemmer)) *
             level_count(Axis::kModel) +
         c.level(Axis::kModel);
}

SystemConfig CollectionManifest::system_at(std::size_t index) const {
  const std::size_t models = level_count(Axis::kModel);
  const std::size_t stemmers = level_count(Axis::kStemmer);
  SystemConfig c;
  c.levels[axis_slot(Axis::kModel)] = static_cast<std::uint16_t>(index % models);
  index /= models;
  c.levels[axis_slot(Axis::kStemmer)] =
      static_cast<std::uint16_t>(index % stemmers);
  c.levels[axis_slot(Axis::kStoplist)] =
      static_cast<std::uint16_t>(index / stemmers);
  return c;
}

SystemConfig CollectionManifest::parse_system_id(std::string_view name) const {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = name.find(separator, start);
    if (pos == std::string_view::npos || separator.empty()) {
      parts.push_back(name.substr(start));
      break;
    }
    parts.push_back(name.substr(start, pos - start));
    start = pos + separator.size();
  }
  if (parts.size() != kAxisCount) {
    throw Error(ErrorKind::kParse,
                "system id '" + std::string(name) + "': expected 3 parts, got " +
                    std::to_string(parts.size()),
                "system");
  }
  SystemConfig c;
  for (Axis axis : kAllAxes) {
    c.levels[axis_slot(axis)] = static_cast<std::uint16_t>(
        level_index(axis, parts[axis_slot(axis)]));
  }
  return c;
}

std::string CollectionManifest::format_system_id(const SystemConfig& c) const {
  std::string out = level_name(Axis::kStoplist, c.level(Axis::kStoplist));
  out += separator;
  out += level_name(Axis::kStemmer, c.level(Axis::kStemmer));
  out += separator;
  out += level_name(Axis::kModel, c.level(Axis::kModel));
  return out;
}

std::size_t CollectionManifest::topic_index(std::string_view topic) const {
  auto it = std::find(topic_ids.begin(), topic_ids.end(), topic);
  if (it == topic_ids.end()) {
    throw Error(ErrorKind::kUnknownTopic,
                "unknown topic '" + std::string(topic) + "'", "topic");
  }
  return static_cast<std::size_t>(it - topic_ids.begin());
}

void CollectionManifest::validate() const {
  if (collection_id.empty()) {
    throw Error(ErrorKind::kParse, "manifest: missing collection id",
                "collection");
  }
  if (topic_ids.empty()) {
    throw Error(ErrorKind::kParse, "manifest: no topics declared", "topics");
  }
  if (std::set<std::string>(topic_ids.begin(), topic_ids.end()).size() !=
      topic_ids.size()) {
    throw Error(ErrorKind::kParse, "manifest: duplicate topic ids", "topics");
  }
  for (Axis axis : kAllAxes) {
    const auto& names = axis_levels(axis);
    const std::string field = "axes." + std::string(axis_name(axis));
    if (names.empty()) {
      throw Error(ErrorKind::kParse, "manifest: axis has no levels", field);
    }
    if (names.size() > 0xFFFF) {
      throw Error(ErrorKind::kParse, "manifest: too many levels", field);
    }
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (n.empty() || !seen.insert(n).second) {
        throw Error(ErrorKind::kParse,
                    "manifest: empty or duplicate level '" + n + "'", field);
      }
      if (!separator.empty() && n.find(separator) != std::string::npos) {
        throw Error(ErrorKind::kParse,
                    "manifest: level '" + n + "' contains the separator",
                    field);
      }
    }
  }
  if (model_families.size() != level_count(Axis::kModel)) {
    throw Error(ErrorKind::kParse,
                "manifest: model sub-family map must cover every model level",
                "model_families");
  }
  if (declared_systems && *declared_systems != grid_size()) {
    throw Error(ErrorKind::kParse,
                "manifest: declared " + std::to_string(*declared_systems) +
                    " systems but axes define " + std::to_string(grid_size()),
                "systems");
  }
  if (!(rbp_persistence > 0.0 && rbp_persistence < 1.0)) {
    throw Error(ErrorKind::kParse, "manifest: rbp_persistence must be in (0,1)",
                "rbp_persistence");
  }
  if (depth == 0) {
    throw Error(ErrorKind::kParse, "manifest: depth must be >= 1", "depth");
  }
}

CollectionManifest parse_manifest(std::string_view yaml_text,
                                  const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorKind::kParse, std::string("manifest: ") + e.what());
  }
  if (!root.IsMap()) {
    throw Error(ErrorKind::kParse, "manifest: top level must be a mapping");
  }

  CollectionManifest m;
  try {
    if (root["collection"]) m.collection_id = root["collection"].as<std::string>();

    const auto topics = root["topics"];
    if (topics && topics.IsScalar()) {
      m.topic_ids = expand_topic_range(topics.as<std::string>());
    } else {
      m.topic_ids = string_list(topics, "topics");
    }
    std::sort(m.topic_ids.begin(), m.topic_ids.end(),
              [](const std::string& a, const std::string& b) {
                return topic_less(a, b);
              });

    if (root["separator"]) m.separator = root["separator"].as<std::string>();

    const auto axes = root["axes"];
    if (!axes || !axes.IsMap()) {
      throw Error(ErrorKind::kParse, "manifest: 'axes' mapping is required",
                  "axes");
    }
    for (Axis axis : kAllAxes) {
      const std::string key(axis_name(axis));
      m.levels[axis_slot(axis)] = string_list(axes[key], "axes." + key);
    }

    const auto& models = m.levels[axis_slot(Axis::kModel)];
    std::vector<std::optional<ModelFamily>> families(models.size());
    if (const auto fam = root["model_families"]) {
      if (!fam.IsMap()) {
        throw Error(ErrorKind::kParse,
                    "manifest: 'model_families' must be a mapping",
                    "model_families");
      }
      for (const auto& entry : fam) {
        const ModelFamily family = parse_family(entry.first.as<std::string>());
        for (const auto& name :
             string_list(entry.second, "model_families")) {
          auto it = std::find(models.begin(), models.end(), name);
          if (it == models.end()) {
            throw Error(ErrorKind::kUnknownLevel,
                        "manifest: model_families names unknown model '" +
                            name + "'",
                        "model_families");
          }
          families[static_cast<std::size_t>(it - models.begin())] = family;
        }
      }
    }
    for (std::size_t i = 0; i < families.size(); ++i) {
      if (!families[i]) {
        throw Error(ErrorKind::kParse,
                    "manifest: model '" + models[i] + "' has no sub-family",
                    "model_families");
      }
      m.model_families.push_back(*families[i]);
    }

    if (root["qrels"]) m.qrels_path = base_dir / root["qrels"].as<std::string>();
    if (root["runs"]) {
      std::filesystem::path runs = root["runs"].as<std::string>();
      m.runs_dir = base_dir / runs.parent_path();
      m.run_pattern = runs.filename().string();
      if (std::count(m.run_pattern.begin(), m.run_pattern.end(), '*') != 1) {
        throw Error(ErrorKind::kParse,
                    "manifest: 'runs' pattern must contain exactly one '*'",
                    "runs");
      }
    }
    if (root["scores"]) {
      m.scores_path = base_dir / root["scores"].as<std::string>();
    }
    if (root["systems"]) m.declared_systems = root["systems"].as<std::size_t>();
    if (root["depth"]) m.depth = root["depth"].as<std::size_t>();
    if (root["rbp_persistence"]) {
      m.rbp_persistence = root["rbp_persistence"].as<double>();
    }
    if (root["max_grade"]) m.max_grade = root["max_grade"].as<int>();
    if (root["measures"]) m.measures = string_list(root["measures"], "measures");
  } catch (const YAML::Exception& e) {
    throw Error(ErrorKind::kParse, std::string("manifest: ") + e.what());
  }

  m.validate();
  return m;
}

CollectionManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIo, "cannot read manifest " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_manifest(text.str(), path.parent_path());
}

}  // namespace gop
