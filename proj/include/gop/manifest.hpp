#pragma once
// Collection manifest: the declarative description of one grid of systems
// (component axes, their levels, model sub-families, topics, data paths).
//
// On-disk form is YAML:
//
//   collection: T07
//   topics: "351-400"          # or an explicit list
//   separator: "_"             # joins stoplist, stemmer, model in run names
//   axes:
//     stoplist: [nostop, indri, ...]
//     stemmer:  [nolug, porter, ...]
//     model:    [bm25, tfidf, ...]
//   model_families:
//     vector_space:   [tfidf, lemurtfidf]
//     probabilistic:  [bm25, ...]
//     language_model: [dirichletlm, ...]
//   qrels: qrels.txt            # relative to the manifest file
//   runs: runs/*.run            # one file per system, '*' = system id
//   scores: T07.csv             # optional precomputed score grid
//   systems: 612                # optional declared count, checked
//   depth: 1000
//   rbp_persistence: 0.8
//   max_grade: 1                # optional; defaults to the qrels maximum
//   measures: [AP, P@10, Rprec, RBP, nDCG, nDCG@20, ERR]
//
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gop {

enum class Axis : std::uint8_t { kStoplist = 0, kStemmer = 1, kModel = 2 };

inline constexpr std::size_t kAxisCount = 3;
inline constexpr std::array<Axis, kAxisCount> kAllAxes = {
    Axis::kStoplist, Axis::kStemmer, Axis::kModel};

std::string_view axis_name(Axis axis);
Axis parse_axis(std::string_view name);  // throws ErrorKind::kUnknownAxis

constexpr std::size_t axis_slot(Axis axis) {
  return static_cast<std::size_t>(axis);
}

enum class ModelFamily : std::uint8_t {
  kVectorSpace,
  kProbabilistic,
  kLanguageModel
};

std::string_view family_name(ModelFamily family);
ModelFamily parse_family(std::string_view name);

// One point of the grid, stored as level indices into the manifest axes.
struct SystemConfig {
  std::array<std::uint16_t, kAxisCount> levels{};

  std::uint16_t level(Axis axis) const { return levels[axis_slot(axis)]; }
  auto operator<=>(const SystemConfig&) const = default;
};

struct CollectionManifest {
  std::string collection_id;
  std::vector<std::string> topic_ids;
  std::array<std::vector<std::string>, kAxisCount> levels;
  // Aligned with levels[model].
  std::vector<ModelFamily> model_families;
  std::string separator = "_";

  std::filesystem::path qrels_path;
  // Directory plus filename pattern containing one '*' for the system id.
  std::filesystem::path runs_dir;
  std::string run_pattern = "*";
  std::filesystem::path scores_path;

  std::optional<std::size_t> declared_systems;
  std::size_t depth = 1000;
  double rbp_persistence = 0.8;
  std::optional<int> max_grade;
  std::vector<std::string> measures;

  const std::vector<std::string>& axis_levels(Axis axis) const {
    return levels[axis_slot(axis)];
  }
  std::size_t level_count(Axis axis) const { return axis_levels(axis).size(); }
  std::size_t level_index(Axis axis, std::string_view name) const;
  std::optional<std::size_t> find_level(Axis axis,
                                        std::string_view name) const;
  const std::string& level_name(Axis axis, std::size_t index) const {
    return axis_levels(axis)[index];
  }
  ModelFamily model_family(std::size_t model_level) const;

  // |stoplists| x |stemmers| x |models|
  std::size_t grid_size() const;
  std::size_t system_index(const SystemConfig& config) const;
  SystemConfig system_at(std::size_t index) const;

  SystemConfig parse_system_id(std::string_view name) const;
  std::string format_system_id(const SystemConfig& config) const;
  std::string system_id(std::size_t index) const {
    return format_system_id(system_at(index));
  }
  std::size_t topic_index(std::string_view topic) const;

  // Throws on structural problems (empty axes, duplicate levels, family map
  // not covering every model, declared count mismatch).
  void validate() const;
};

CollectionManifest parse_manifest(std::string_view yaml_text,
                                  const std::filesystem::path& base_dir = {});
CollectionManifest load_manifest(const std::filesystem::path& path);

// "301-350" -> {"301", ..., "350"}
std::vector<std::string> expand_topic_range(std::string_view spec);

// Ascending topic order: numeric when both ids are integers, else lexical.
bool topic_less(std::string_view a, std::string_view b);

}  // namespace gop
