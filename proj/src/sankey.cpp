#include "gop/sankey.hpp"

#include <algorithm>
#include <cmath>

#include "gop/error.hpp"

namespace gop {

namespace {

// Normalizes `values` to sum to one; uniform when they sum to zero.
std::vector<double> shares(const std::vector<double>& values) {
  double total = 0.0;
  for (double v : values) total += v;
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = total > 0.0 ? values[i] / total
                         : 1.0 / static_cast<double>(values.size());
  }
  return out;
}

}  // namespace

std::string_view scaling_name(Scaling s) {
  return s == Scaling::kFullRange ? "full" : "minmax";
}

std::string_view color_schema_name(ColorSchema c) {
  return c == ColorSchema::kByComponent ? "component" : "value";
}

double display_round(double v) {
  if (!std::isfinite(v)) return v;
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

int bin_index(double score, ScoreRange range) {
  if (!(range.lo < range.hi)) {
    throw Error(ErrorKind::kInvalidArgument, "bin range needs lo < hi");
  }
  const double s = std::clamp(score, range.lo, range.hi);
  const auto idx = static_cast<int>(
      std::floor(kBinCount * (s - range.lo) / (range.hi - range.lo)));
  return std::clamp(idx, 0, kBinCount - 1);
}

ScoreRange scaling_range(std::span<const SystemScore> scores, Scaling scaling) {
  if (scores.empty()) {
    throw Error(ErrorKind::kInsufficientData, "no visible systems");
  }
  if (scaling == Scaling::kFullRange) return {0.0, 1.0};
  double lo = scores.front().value;
  double hi = lo;
  for (const auto& s : scores) {
    lo = std::min(lo, s.value);
    hi = std::max(hi, s.value);
  }
  if (lo == hi) {
    return {std::max(0.0, lo - 0.02), std::min(1.0, lo + 0.02)};
  }
  return {lo, hi};
}

ScoreRange scaling_range(const GridView& view, Scaling scaling) {
  return scaling_range(score_vector(view), scaling);
}

Rgb bin_color(int index) {
  return value_color(static_cast<double>(index) / (kBinCount - 1));
}

Rgb value_position_color(double score, ScoreRange range) {
  return value_color((score - range.lo) / (range.hi - range.lo));
}

Rgb node_color(const CollectionManifest& manifest, const DisplayOptions& opts,
               Axis axis, std::size_t level, double mean, ScoreRange range) {
  if (opts.color_schema == ColorSchema::kByValue) {
    return value_position_color(mean, range);
  }
  return component_color(manifest, axis, level);
}

SankeyDoc build_diagram(const GridView& view, const DisplayOptions& options) {
  const auto& grid = view.grid();
  const auto& manifest = view.manifest();
  for (const auto& sel : options.selected) {
    if (sel.level >= manifest.level_count(sel.axis)) {
      throw Error(ErrorKind::kUnknownLevel, "selected level out of range",
                  "selected");
    }
    if (!view.visible(sel.axis, sel.level)) {
      throw Error(ErrorKind::kLevelHidden,
                  "selected " + std::string(axis_name(sel.axis)) + " level '" +
                      manifest.level_name(sel.axis, sel.level) + "' is hidden",
                  "selected");
    }
  }

  const auto scores = score_vector(view);
  const ScoreRange range = scaling_range(scores, options.scaling);

  SankeyDoc doc;
  doc.collection = grid.collection_id();
  doc.measure = grid.measures()[view.measure()].name;
  if (view.topic()) doc.topic = grid.topic_ids()[*view.topic()];
  doc.order = view.axis_order();
  doc.range = range;
  doc.options = options;

  for (std::size_t p = 0; p < kAxisCount; ++p) {
    const Axis axis = doc.order[p];
    const auto stats = axis_marginals(view, axis, scores);
    std::vector<double> means;
    for (const auto& s : stats) means.push_back(s.mean);
    const auto weights = shares(means);
    auto& out = doc.axes[p];
    out.axis = axis;
    for (std::size_t i = 0; i < stats.size(); ++i) {
      out.nodes.push_back({stats[i].level,
                           manifest.level_name(axis, stats[i].level), weights[i],
                           node_color(manifest, options, axis, stats[i].level,
                                      stats[i].mean, range),
                           stats[i]});
    }
  }

  for (std::size_t p = 0; p + 1 < kAxisCount; ++p) {
    auto& stage = doc.stages[p];
    stage.from = doc.order[p];
    stage.to = doc.order[p + 1];
    const auto pairs = stage_pairs(view, stage.from, stage.to, scores);
    std::vector<double> means;
    for (const auto& pr : pairs) means.push_back(pr.mean);
    const auto weights = shares(means);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const Rgb color =
          options.color_schema == ColorSchema::kByValue
              ? value_position_color(pairs[i].mean, range)
              : component_color(manifest, stage.from, pairs[i].level_a);
      stage.links.push_back({pairs[i].level_a, pairs[i].level_b, weights[i],
                             pairs[i].mean, pairs[i].n_systems, color});
    }
  }

  doc.bins.resize(kBinCount);
  const double width = (range.hi - range.lo) / kBinCount;
  for (int i = 0; i < kBinCount; ++i) {
    auto& bin = doc.bins[static_cast<std::size_t>(i)];
    bin.index = i;
    bin.lo = range.lo + width * i;
    bin.hi = i + 1 == kBinCount ? range.hi : range.lo + width * (i + 1);
    bin.color = bin_color(i);
  }

  const Axis last = doc.order[kAxisCount - 1];
  std::array<std::vector<std::uint8_t>, kAxisCount> selected;
  std::array<bool, kAxisCount> constrained{};
  for (Axis axis : kAllAxes) {
    selected[axis_slot(axis)].assign(manifest.level_count(axis), 0);
  }
  for (const auto& sel : options.selected) {
    selected[axis_slot(sel.axis)][sel.level] = 1;
    constrained[axis_slot(sel.axis)] = true;
  }

  doc.final_links.reserve(scores.size());
  for (const auto& s : scores) {
    const auto config = grid.system(s.system);
    FinalLink link;
    link.system = s.system;
    link.id = grid.system_id(s.system);
    link.source = config.level(last);
    link.bin = bin_index(s.value, range);
    link.score = s.value;
    link.color = options.color_schema == ColorSchema::kByValue
                     ? value_position_color(s.value, range)
                     : component_color(manifest, last, link.source);
    ++doc.bins[static_cast<std::size_t>(link.bin)].count;

    if (!options.selected.empty()) {
      bool match = true;
      for (Axis axis : kAllAxes) {
        if (constrained[axis_slot(axis)] &&
            !selected[axis_slot(axis)][config.level(axis)]) {
          match = false;
          break;
        }
      }
      if (match) doc.highlighted.push_back(link.id);
    }
    doc.final_links.push_back(std::move(link));
  }
  return doc;
}

nlohmann::ordered_json to_json(const SankeyDoc& doc,
                               const CollectionManifest& manifest) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["collection"] = doc.collection;
  j["measure"] = doc.measure;
  j["topic"] = doc.topic ? ordered_json(*doc.topic) : ordered_json(nullptr);

  ordered_json order = ordered_json::array();
  for (Axis a : doc.order) order.push_back(axis_name(a));
  j["axis_order"] = std::move(order);

  ordered_json axes = ordered_json::array();
  for (const auto& ax : doc.axes) {
    ordered_json nodes = ordered_json::array();
    for (const auto& n : ax.nodes) {
      ordered_json node;
      node["level"] = n.name;
      node["weight"] = display_round(n.weight);
      node["mean"] = display_round(n.stat.mean);
      node["n_systems"] = n.stat.n_systems;
      node["color"] = n.color.hex();
      nodes.push_back(std::move(node));
    }
    ordered_json a;
    a["axis"] = axis_name(ax.axis);
    a["nodes"] = std::move(nodes);
    axes.push_back(std::move(a));
  }
  j["axes"] = std::move(axes);

  ordered_json stages = ordered_json::array();
  for (const auto& st : doc.stages) {
    ordered_json links = ordered_json::array();
    for (const auto& l : st.links) {
      ordered_json link;
      link["source"] = manifest.level_name(st.from, l.source);
      link["target"] = manifest.level_name(st.to, l.target);
      link["weight"] = display_round(l.weight);
      link["mean"] = display_round(l.mean);
      link["n_systems"] = l.n_systems;
      link["color"] = l.color.hex();
      links.push_back(std::move(link));
    }
    ordered_json s;
    s["from"] = axis_name(st.from);
    s["to"] = axis_name(st.to);
    s["links"] = std::move(links);
    stages.push_back(std::move(s));
  }
  j["stages"] = std::move(stages);

  ordered_json bins = ordered_json::array();
  for (const auto& b : doc.bins) {
    ordered_json bin;
    bin["index"] = b.index;
    bin["lo"] = display_round(b.lo);
    bin["hi"] = display_round(b.hi);
    bin["count"] = b.count;
    bin["color"] = b.color.hex();
    bins.push_back(std::move(bin));
  }
  ordered_json measure_axis;
  measure_axis["range"] = {display_round(doc.range.lo),
                           display_round(doc.range.hi)};
  measure_axis["bins"] = std::move(bins);
  j["measure_axis"] = std::move(measure_axis);

  const Axis last = doc.order[kAxisCount - 1];
  ordered_json finals = ordered_json::array();
  for (const auto& f : doc.final_links) {
    ordered_json link;
    link["system"] = f.id;
    link["source"] = manifest.level_name(last, f.source);
    link["bin"] = f.bin;
    link["score"] = display_round(f.score);
    link["color"] = f.color.hex();
    finals.push_back(std::move(link));
  }
  j["final_links"] = std::move(finals);
  j["highlighted"] = doc.highlighted;

  ordered_json selection = ordered_json::array();
  for (const auto& sel : doc.options.selected) {
    ordered_json s;
    s["axis"] = axis_name(sel.axis);
    s["level"] = manifest.level_name(sel.axis, sel.level);
    selection.push_back(std::move(s));
  }
  j["selection"] = std::move(selection);

  ordered_json opts;
  opts["scaling"] = scaling_name(doc.options.scaling);
  opts["color_schema"] = color_schema_name(doc.options.color_schema);
  opts["curve"] = doc.options.curve;
  j["options"] = std::move(opts);
  return j;
}

}  // namespace gop
