#pragma once
// Dense system x measure x topic score tensor for one collection, and the
// filtered views that every statistic and diagram is computed from.

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gop/ingest.hpp"
#include "gop/manifest.hpp"
#include "gop/measures.hpp"

namespace gop {

// Immutable after construction. Systems cover the full manifest
// cross-product in manifest order; absent runs are zero-filled and flagged.
class ScoreGrid {
 public:
  // `scores` is laid out [system][measure][topic], topics in manifest order.
  ScoreGrid(std::shared_ptr<const CollectionManifest> manifest,
            std::vector<MeasureId> measures, std::vector<double> scores,
            std::vector<std::uint8_t> loaded);

  const CollectionManifest& manifest() const { return *manifest_; }
  std::shared_ptr<const CollectionManifest> manifest_ptr() const {
    return manifest_;
  }
  const std::string& collection_id() const { return manifest_->collection_id; }
  const std::vector<std::string>& topic_ids() const {
    return manifest_->topic_ids;
  }
  const std::vector<MeasureId>& measures() const { return measures_; }

  std::size_t system_count() const { return system_count_; }
  std::size_t measure_count() const { return measures_.size(); }
  std::size_t topic_count() const { return topic_count_; }
  std::size_t cell_count() const { return scores_.size(); }
  std::size_t loaded_count() const { return loaded_count_; }

  bool loaded(std::size_t system) const { return loaded_[system] != 0; }
  double score(std::size_t system, std::size_t measure,
               std::size_t topic) const {
    return scores_[(system * measure_count() + measure) * topic_count_ + topic];
  }
  // Per-topic scores of one system for one measure, in topic order.
  std::span<const double> topic_scores(std::size_t system,
                                       std::size_t measure) const {
    return {scores_.data() + (system * measure_count() + measure) * topic_count_,
            topic_count_};
  }
  std::span<const double> raw() const { return scores_; }

  std::size_t measure_index(std::string_view name) const;
  std::size_t topic_index(std::string_view topic) const {
    return manifest_->topic_index(topic);
  }
  std::string system_id(std::size_t system) const {
    return manifest_->system_id(system);
  }
  SystemConfig system(std::size_t index) const {
    return manifest_->system_at(index);
  }

  CompletenessReport completeness() const;

 private:
  std::shared_ptr<const CollectionManifest> manifest_;
  std::vector<MeasureId> measures_;
  std::vector<double> scores_;
  std::vector<std::uint8_t> loaded_;
  std::size_t system_count_ = 0;
  std::size_t topic_count_ = 0;
  std::size_t loaded_count_ = 0;
};

using AxisOrder = std::array<Axis, kAxisCount>;
inline constexpr AxisOrder kDefaultAxisOrder = kAllAxes;

// A grid plus filter, measure, topic mode and axis order. Cheap value type;
// every modifier returns a new view.
class GridView {
 public:
  GridView(std::shared_ptr<const ScoreGrid> grid, std::size_t measure);

  const ScoreGrid& grid() const { return *grid_; }
  std::shared_ptr<const ScoreGrid> grid_ptr() const { return grid_; }
  const CollectionManifest& manifest() const { return grid_->manifest(); }

  std::size_t measure() const { return measure_; }
  // Empty = average over all topics.
  std::optional<std::size_t> topic() const { return topic_; }
  const AxisOrder& axis_order() const { return order_; }

  bool visible(Axis axis, std::size_t level) const {
    return visible_[axis_slot(axis)][level] != 0;
  }
  std::size_t visible_level_count(Axis axis) const;
  std::vector<std::size_t> visible_levels(Axis axis) const;
  // Loaded systems whose levels are all visible, ascending index.
  std::vector<std::size_t> visible_systems() const;
  bool system_visible(std::size_t system) const;

  // Throws ErrorKind::kEmptyAxis when hiding the last visible level.
  GridView with_level(Axis axis, std::size_t level, bool on) const;
  GridView with_measure(std::size_t measure) const;
  GridView with_topic(std::optional<std::size_t> topic) const;
  GridView with_axis_order(const AxisOrder& order) const;

  // Position of `axis` in the current order.
  std::size_t axis_position(Axis axis) const;
  bool adjacent(Axis a, Axis b) const;

  bool operator==(const GridView& other) const;

 private:
  std::shared_ptr<const ScoreGrid> grid_;
  std::size_t measure_ = 0;
  std::optional<std::size_t> topic_;
  AxisOrder order_ = kDefaultAxisOrder;
  std::array<std::vector<std::uint8_t>, kAxisCount> visible_;
};

GridView apply_filter(const GridView& view, Axis axis, std::size_t level,
                      bool on);

struct SystemScore {
  std::size_t system = 0;
  double value = 0.0;
};

// Average mode: mean over topics summed in topic order. Single-topic mode:
// that topic's cell. Visible systems only, ascending index.
std::vector<SystemScore> score_vector(const GridView& view);

// Evaluates every loaded system on every topic for each measure.
ScoreGrid build_grid(const LoadedCollection& collection,
                     std::span<const MeasureId> measures);

// Parses and evaluates run files one system at a time so the rankings are
// never all resident; same result as load_collection + build_grid.
ScoreGrid ingest_grid(std::shared_ptr<const CollectionManifest> manifest,
                      std::span<const MeasureId> measures,
                      CompletenessReport* report = nullptr);

// Imports manifest.scores_path when it exists, otherwise ingests the runs.
ScoreGrid grid_from_manifest(std::shared_ptr<const CollectionManifest> manifest,
                             CompletenessReport* report = nullptr);

// Measures named by the manifest (all standard ones when it names none).
std::vector<MeasureId> manifest_measures(const CollectionManifest& manifest,
                                         int qrels_max_grade);

// CSV interchange. Header: system,stoplist,stemmer,model,measure,topic,score
// One row per cell of every loaded system; 17 significant digits.
void export_scores(const ScoreGrid& grid, std::ostream& out);
ScoreGrid import_scores(std::istream& in,
                        std::shared_ptr<const CollectionManifest> manifest);
// Derives the axes (first-appearance order) and topics from the CSV itself.
// Model sub-families are unknown and default to probabilistic.
ScoreGrid import_scores(std::istream& in, const std::string& collection_id);

}  // namespace gop
