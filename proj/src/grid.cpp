#include "gop/grid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "gop/error.hpp"
#include "gop/kernels.hpp"

namespace gop {

ScoreGrid::ScoreGrid(std::shared_ptr<const CollectionManifest> manifest,
                     std::vector<MeasureId> measures,
                     std::vector<double> scores,
                     std::vector<std::uint8_t> loaded)
    : manifest_(std::move(manifest)),
      measures_(std::move(measures)),
      scores_(std::move(scores)),
      loaded_(std::move(loaded)) {
  if (!manifest_) {
    throw Error(ErrorKind::kInvalidArgument, "score grid needs a manifest");
  }
  system_count_ = manifest_->grid_size();
  topic_count_ = manifest_->topic_ids.size();
  if (measures_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "score grid needs >= 1 measure");
  }
  if (loaded_.size() != system_count_ ||
      scores_.size() != system_count_ * measures_.size() * topic_count_) {
    throw Error(ErrorKind::kInvalidArgument,
                "score tensor dimensions do not match the manifest");
  }
  for (std::size_t i = 0; i < scores_.size(); ++i) {
    const double v = scores_[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "score out of [0,1] at cell " + std::to_string(i));
    }
  }
  loaded_count_ = static_cast<std::size_t>(
      std::count_if(loaded_.begin(), loaded_.end(),
                    [](std::uint8_t f) { return f != 0; }));
}

std::size_t ScoreGrid::measure_index(std::string_view name) const {
  for (std::size_t i = 0; i < measures_.size(); ++i) {
    if (measures_[i].name.size() == name.size() &&
        std::equal(name.begin(), name.end(), measures_[i].name.begin(),
                   [](char a, char b) {
                     return std::tolower(static_cast<unsigned char>(a)) ==
                            std::tolower(static_cast<unsigned char>(b));
                   })) {
      return i;
    }
  }
  std::string msg = "unknown measure '" + std::string(name) + "'";
  if (MeasureRegistry::is_reserved(name)) {
    msg += " (reserved slot, not implemented)";
  }
  throw Error(ErrorKind::kUnknownMeasure, msg, "measure");
}

CompletenessReport ScoreGrid::completeness() const {
  CompletenessReport r;
  r.expected = system_count_;
  r.loaded = loaded_count_;
  for (std::size_t s = 0; s < system_count_; ++s) {
    if (!loaded_[s]) r.missing.push_back(manifest_->system_at(s));
  }
  return r;
}

GridView::GridView(std::shared_ptr<const ScoreGrid> grid, std::size_t measure)
    : grid_(std::move(grid)), measure_(measure) {
  if (!grid_) throw Error(ErrorKind::kInvalidArgument, "view needs a grid");
  if (measure_ >= grid_->measure_count()) {
    throw Error(ErrorKind::kUnknownMeasure, "measure index out of range",
                "measure");
  }
  for (Axis axis : kAllAxes) {
    visible_[axis_slot(axis)].assign(grid_->manifest().level_count(axis), 1);
  }
}

std::size_t GridView::visible_level_count(Axis axis) const {
  const auto& v = visible_[axis_slot(axis)];
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1));
}

std::vector<std::size_t> GridView::visible_levels(Axis axis) const {
  std::vector<std::size_t> out;
  const auto& v = visible_[axis_slot(axis)];
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) out.push_back(i);
  }
  return out;
}

bool GridView::system_visible(std::size_t system) const {
  if (!grid_->loaded(system)) return false;
  const auto c = grid_->system(system);
  for (Axis axis : kAllAxes) {
    if (!visible(axis, c.level(axis))) return false;
  }
  return true;
}

std::vector<std::size_t> GridView::visible_systems() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < grid_->system_count(); ++s) {
    if (system_visible(s)) out.push_back(s);
  }
  return out;
}

GridView GridView::with_level(Axis axis, std::size_t level, bool on) const {
  const auto slot = axis_slot(axis);
  if (level >= visible_[slot].size()) {
    throw Error(ErrorKind::kUnknownLevel, "level index out of range",
                std::string(axis_name(axis)));
  }
  GridView next = *this;
  next.visible_[slot][level] = on ? 1 : 0;
  if (next.visible_level_count(axis) == 0) {
    throw Error(ErrorKind::kEmptyAxis,
                "axis cannot be emptied: " + std::string(axis_name(axis)),
                std::string(axis_name(axis)));
  }
  return next;
}

GridView GridView::with_measure(std::size_t measure) const {
  if (measure >= grid_->measure_count()) {
    throw Error(ErrorKind::kUnknownMeasure, "measure index out of range",
                "measure");
  }
  GridView next = *this;
  next.measure_ = measure;
  return next;
}

GridView GridView::with_topic(std::optional<std::size_t> topic) const {
  if (topic && *topic >= grid_->topic_count()) {
    throw Error(ErrorKind::kUnknownTopic, "topic index out of range", "topic");
  }
  GridView next = *this;
  next.topic_ = topic;
  return next;
}

GridView GridView::with_axis_order(const AxisOrder& order) const {
  std::array<int, kAxisCount> seen{};
  for (Axis a : order) ++seen[axis_slot(a)];
  for (int c : seen) {
    if (c != 1) {
      throw Error(ErrorKind::kInvalidArgument,
                  "axis order must be a permutation of the component axes",
                  "axis_order");
    }
  }
  GridView next = *this;
  next.order_ = order;
  return next;
}

std::size_t GridView::axis_position(Axis axis) const {
  for (std::size_t i = 0; i < kAxisCount; ++i) {
    if (order_[i] == axis) return i;
  }
  return kAxisCount;
}

bool GridView::adjacent(Axis a, Axis b) const {
  const auto pa = axis_position(a);
  const auto pb = axis_position(b);
  return pa + 1 == pb || pb + 1 == pa;
}

bool GridView::operator==(const GridView& other) const {
  return grid_ == other.grid_ && measure_ == other.measure_ &&
         topic_ == other.topic_ && order_ == other.order_ &&
         visible_ == other.visible_;
}

GridView apply_filter(const GridView& view, Axis axis, std::size_t level,
                      bool on) {
  return view.with_level(axis, level, on);
}

std::vector<SystemScore> score_vector(const GridView& view) {
  const auto systems = view.visible_systems();
  std::vector<double> values(systems.size());
  kernels::mean_scores_parallel(view.grid(), view.measure(), view.topic(),
                                systems, values);
  std::vector<SystemScore> out(systems.size());
  for (std::size_t i = 0; i < systems.size(); ++i) {
    out[i] = {systems[i], values[i]};
  }
  return out;
}

std::vector<MeasureId> manifest_measures(const CollectionManifest& manifest,
                                         int qrels_max_grade) {
  const int max_grade = manifest.max_grade.value_or(std::max(qrels_max_grade, 1));
  const auto registry =
      MeasureRegistry::standard(manifest.rbp_persistence, max_grade);
  if (manifest.measures.empty()) return registry.measures();
  std::vector<MeasureId> out;
  for (const auto& name : manifest.measures) out.push_back(registry.find(name));
  return out;
}

ScoreGrid build_grid(const LoadedCollection& collection,
                     std::span<const MeasureId> measures) {
  const auto& manifest = *collection.manifest;
  if (collection.runs.empty()) {
    throw Error(ErrorKind::kInsufficientData, "no systems loaded");
  }
  std::vector<kernels::SystemRuns> systems;
  std::vector<std::uint8_t> loaded(manifest.grid_size(), 0);
  for (const auto& [config, run] : collection.runs) {
    const auto idx = manifest.system_index(config);
    systems.push_back({idx, &run});
    loaded[idx] = 1;
  }
  std::vector<double> scores(
      manifest.grid_size() * measures.size() * manifest.topic_ids.size(), 0.0);
  kernels::EvalInput in{systems, &collection.qrels, manifest.topic_ids,
                        measures};
  kernels::evaluate_grid_parallel(in, scores);
  return ScoreGrid(collection.manifest,
                   std::vector<MeasureId>(measures.begin(), measures.end()),
                   std::move(scores), std::move(loaded));
}

ScoreGrid ingest_grid(std::shared_ptr<const CollectionManifest> manifest,
                      std::span<const MeasureId> measures,
                      CompletenessReport* report) {
  const Qrels qrels = load_qrels(*manifest);
  auto index = index_run_files(*manifest);
  if (index.files.empty()) {
    throw Error(ErrorKind::kIo,
                "no run files found for collection " + manifest->collection_id,
                "runs");
  }
  std::vector<std::pair<SystemConfig, std::string>> jobs(index.files.begin(),
                                                         index.files.end());
  std::vector<double> scores(
      manifest->grid_size() * measures.size() * manifest->topic_ids.size(),
      0.0);
  std::vector<std::uint8_t> loaded(manifest->grid_size(), 0);

  constexpr std::size_t kChunk = 64;
  for (std::size_t begin = 0; begin < jobs.size(); begin += kChunk) {
    const std::size_t end = std::min(jobs.size(), begin + kChunk);
    std::vector<RunRankings> runs(end - begin);
    std::vector<std::string> failures(end - begin);
    const auto n = static_cast<std::ptrdiff_t>(end - begin);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        runs[i] = load_run_file(jobs[begin + i].second, manifest->depth);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
    std::vector<kernels::SystemRuns> systems;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (!failures[i].empty()) throw Error(ErrorKind::kParse, failures[i]);
      const auto idx = manifest->system_index(jobs[begin + i].first);
      systems.push_back({idx, &runs[i]});
      loaded[idx] = 1;
    }
    kernels::EvalInput in{systems, &qrels, manifest->topic_ids, measures};
    kernels::evaluate_grid_parallel(in, scores);
  }
  if (report) *report = std::move(index.report);
  return ScoreGrid(manifest,
                   std::vector<MeasureId>(measures.begin(), measures.end()),
                   std::move(scores), std::move(loaded));
}

ScoreGrid grid_from_manifest(std::shared_ptr<const CollectionManifest> manifest,
                             CompletenessReport* report) {
  std::error_code ec;
  if (!manifest->scores_path.empty() &&
      std::filesystem::exists(manifest->scores_path, ec)) {
    std::ifstream in(manifest->scores_path, std::ios::binary);
    if (!in) {
      throw Error(ErrorKind::kIo,
                  "cannot read " + manifest->scores_path.string(), "scores");
    }
    auto grid = import_scores(in, manifest);
    if (report) *report = grid.completeness();
    return grid;
  }
  const auto qrels = load_qrels(*manifest);
  const auto measures = manifest_measures(*manifest, qrels.max_grade());
  return ingest_grid(std::move(manifest), measures, report);
}

}  // namespace gop
