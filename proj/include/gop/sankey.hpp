#pragma once
// Sankey diagram document: three component axes in view order, a measure
// axis of 25 equal-width score bins, level-pair links between adjacent axes
// and one final link per visible system.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gop/color.hpp"
#include "gop/grid.hpp"
#include "gop/stats.hpp"

namespace gop {

inline constexpr int kBinCount = 25;

enum class Scaling { kFullRange, kMinMax };
enum class ColorSchema { kByComponent, kByValue };

std::string_view scaling_name(Scaling s);
std::string_view color_schema_name(ColorSchema c);

struct DisplayOptions {
  Scaling scaling = Scaling::kFullRange;
  ColorSchema color_schema = ColorSchema::kByComponent;
  // Passed through to the client untouched.
  std::string curve = "cubic";
  // Disjunction within an axis, conjunction across axes.
  std::vector<LevelRef> selected;
};

struct ScoreRange {
  double lo = 0.0;
  double hi = 1.0;
};

// floor(25 (score - lo) / (hi - lo)), score clamped into [lo, hi]; hi maps
// to the last bin. Throws when lo >= hi.
int bin_index(double score, ScoreRange range);

// Full range: [0, 1]. Min-max: [min, max] of the visible scores, widened to
// min +/- 0.02 (clamped to [0, 1]) when all scores are equal.
ScoreRange scaling_range(const GridView& view, Scaling scaling);
ScoreRange scaling_range(std::span<const SystemScore> scores, Scaling scaling);

// Element colors.
Rgb bin_color(int index);
Rgb node_color(const CollectionManifest& manifest, const DisplayOptions& opts,
               Axis axis, std::size_t level, double mean, ScoreRange range);
Rgb value_position_color(double score, ScoreRange range);

struct SankeyNode {
  std::size_t level = 0;
  std::string name;
  double weight = 0.0;
  Rgb color;
  MarginalStat stat;
};

struct SankeyAxis {
  Axis axis = Axis::kStoplist;
  std::vector<SankeyNode> nodes;
};

struct MeasureBin {
  int index = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  Rgb color;
};

struct StageLink {
  std::size_t source = 0;  // level on Stage::from
  std::size_t target = 0;  // level on Stage::to
  double weight = 0.0;
  double mean = 0.0;
  std::size_t n_systems = 0;
  Rgb color;
};

struct Stage {
  Axis from = Axis::kStoplist;
  Axis to = Axis::kStemmer;
  std::vector<StageLink> links;
};

struct FinalLink {
  std::size_t system = 0;
  std::string id;
  std::size_t source = 0;  // level on the last component axis
  int bin = 0;
  double score = 0.0;
  Rgb color;
};

struct SankeyDoc {
  std::string collection;
  std::string measure;
  std::optional<std::string> topic;
  AxisOrder order = kDefaultAxisOrder;
  std::array<SankeyAxis, kAxisCount> axes;
  ScoreRange range;
  std::vector<MeasureBin> bins;
  std::array<Stage, kAxisCount - 1> stages;
  std::vector<FinalLink> final_links;
  std::vector<std::string> highlighted;
  DisplayOptions options;
};

SankeyDoc build_diagram(const GridView& view, const DisplayOptions& options);

// Canonical wire form: fixed key order, numbers rounded to 6 decimals.
nlohmann::ordered_json to_json(const SankeyDoc& doc,
                               const CollectionManifest& manifest);

// Rounds to 6 fractional digits for display; non-finite values pass through.
double display_round(double v);

}  // namespace gop
