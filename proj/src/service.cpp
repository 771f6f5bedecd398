#include "gop/service.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "gop/sankey.hpp"

namespace gop {

namespace {

using nlohmann::ordered_json;

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return display_round(v);
}

ApiResponse json_response(const ordered_json& body, int status = 200) {
  ApiResponse r;
  r.status = status;
  r.body = body.dump();
  return r;
}

const std::string& param(const QueryParams& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end() || it->second.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "missing query parameter '" + name + "'", name);
  }
  return it->second;
}

LevelRef level_param(const CollectionManifest& m, const QueryParams& params,
                     const std::string& axis_key, const std::string& level_key) {
  Axis axis;
  try {
    axis = parse_axis(param(params, axis_key));
  } catch (const Error& e) {
    throw Error(e.kind(), e.what(), axis_key);
  }
  const auto& name = param(params, level_key);
  const auto idx = m.find_level(axis, name);
  if (!idx) {
    throw Error(ErrorKind::kUnknownLevel,
                "unknown " + std::string(axis_name(axis)) + " level '" + name +
                    "'",
                level_key);
  }
  return {axis, *idx};
}

}  // namespace

int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyAxis:
    case ErrorKind::kInsufficientData:
      return 422;
    case ErrorKind::kIo:
      return 500;
    default:
      return 400;
  }
}

ApiResponse error_response(const Error& error) {
  ordered_json body;
  body["error"]["code"] = error_code(error.kind());
  body["error"]["field"] = error.field();
  body["error"]["message"] = error.what();
  return json_response(body, http_status(error.kind()));
}

Explorer::Explorer(ServiceConfig config) : config_(std::move(config)) {
  config_.validate();
}

void Explorer::add_grid(std::shared_ptr<const ScoreGrid> grid) {
  {
    std::unique_lock lock(grids_mutex_);
    grids_[grid->collection_id()] = std::move(grid);
  }
  std::unique_lock lock(diagram_mutex_);
  diagram_cache_.clear();
}

std::shared_ptr<const ScoreGrid> Explorer::grid(
    std::string_view collection) const {
  std::shared_lock lock(grids_mutex_);
  auto it = grids_.find(collection);
  if (it == grids_.end()) {
    throw Error(ErrorKind::kUnknownCollection,
                "unknown collection '" + std::string(collection) + "'",
                "collection");
  }
  return it->second;
}

ApiResponse Explorer::unavailable() const {
  ordered_json body;
  body["error"]["code"] = "loading";
  body["error"]["field"] = "";
  body["error"]["message"] = "grids are still loading; retry shortly";
  auto r = json_response(body, 503);
  r.headers["Retry-After"] = "1";
  return r;
}

ApiResponse Explorer::health() const {
  ordered_json body;
  body["status"] = ready() ? "ok" : "loading";
  std::shared_lock lock(grids_mutex_);
  body["collections"] = grids_.size();
  return json_response(body);
}

ApiResponse Explorer::catalog() const {
  if (!ready()) return unavailable();
  ordered_json collections = ordered_json::array();
  std::shared_lock lock(grids_mutex_);
  for (const auto& [id, grid] : grids_) {
    const auto& m = grid->manifest();
    ordered_json c;
    c["id"] = id;
    ordered_json axes = ordered_json::array();
    for (Axis axis : kAllAxes) {
      ordered_json levels = ordered_json::array();
      for (std::size_t l = 0; l < m.level_count(axis); ++l) {
        ordered_json level;
        level["name"] = m.level_name(axis, l);
        level["family"] = axis == Axis::kModel
                              ? ordered_json(family_name(m.model_family(l)))
                              : ordered_json(axis_name(axis));
        level["color"] = component_color(m, axis, l).hex();
        levels.push_back(std::move(level));
      }
      ordered_json a;
      a["axis"] = axis_name(axis);
      a["levels"] = std::move(levels);
      axes.push_back(std::move(a));
    }
    c["axes"] = std::move(axes);
    ordered_json measures = ordered_json::array();
    for (const auto& mid : grid->measures()) measures.push_back(mid.name);
    c["measures"] = std::move(measures);
    c["topics"] = grid->topic_ids();
    c["systems"] = grid->system_count();
    c["loaded_systems"] = grid->loaded_count();
    collections.push_back(std::move(c));
  }
  ordered_json body;
  body["collections"] = std::move(collections);
  return json_response(body);
}

ResolvedRequest Explorer::resolve_request(const ExplorationRequest& r) const {
  return resolve(r, grid(r.collection));
}

ApiResponse Explorer::diagram(std::string_view body) const {
  if (!ready()) return unavailable();
  try {
    const auto request = parse_request(body);
    const std::string key = canonical_json(request).dump();
    {
      std::shared_lock lock(diagram_mutex_);
      if (auto it = diagram_cache_.find(key); it != diagram_cache_.end()) {
        return ApiResponse{200, it->second, "application/json", {}};
      }
    }
    const auto resolved = resolve_request(request);
    const auto doc = build_diagram(resolved.view, resolved.options);
    std::string out = to_json(doc, resolved.view.manifest()).dump();
    std::unique_lock lock(diagram_mutex_);
    auto [it, inserted] = diagram_cache_.emplace(key, std::move(out));
    return ApiResponse{200, it->second, "application/json", {}};
  } catch (const Error& e) {
    return error_response(e);
  }
}

std::size_t Explorer::diagram_cache_size() const {
  std::shared_lock lock(diagram_mutex_);
  return diagram_cache_.size();
}

ResolvedRequest Explorer::resolve_state(const QueryParams& params) const {
  const auto& state = param(params, "state");
  ExplorationRequest request;
  try {
    request = parse_request(std::string_view(state));
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("state: ") + e.what(), "state");
  }
  return resolve_request(request);
}

ordered_json Explorer::tooltip_json(
    const ResolvedRequest& request,
    const std::vector<LevelRef>& constraint) const {
  const auto& view = request.view;
  const auto& grid = view.grid();
  const auto& m = view.manifest();

  const MarginalStat stat =
      constraint.size() == 1
          ? marginal_mean(view, constraint[0].axis, constraint[0].level)
          : pair_mean(view, constraint[0], constraint[1]);

  // Every matching system, best first; the first top_k are reported.
  const auto ranked = top_systems(view, constraint, grid.system_count());

  std::vector<ScoreRow> rows;
  rows.reserve(ranked.size());
  for (const auto& r : ranked) {
    const auto scores = grid.topic_scores(r.system, view.measure());
    rows.push_back({r.id, {scores.begin(), scores.end()}});
  }
  DunnettOptions opts;
  opts.alpha = config_.alpha;
  opts.seed = config_.seed;
  opts.replicates = config_.mc_replicates;
  opts.cache = &cv_cache_;
  const auto dunnett = dunnett_top_group(rows, opts);

  ordered_json body;
  body["collection"] = grid.collection_id();
  body["measure"] = grid.measures()[view.measure()].name;
  body["topic"] = view.topic() ? ordered_json(grid.topic_ids()[*view.topic()])
                               : ordered_json(nullptr);
  ordered_json cons = ordered_json::array();
  for (const auto& c : constraint) {
    cons.push_back({{"axis", axis_name(c.axis)},
                    {"level", m.level_name(c.axis, c.level)}});
  }
  body["constraint"] = std::move(cons);
  body["mean"] = number(stat.mean);
  body["n_systems"] = stat.n_systems;

  ordered_json top = ordered_json::array();
  for (std::size_t i = 0; i < std::min(config_.top_k, ranked.size()); ++i) {
    top.push_back({{"system", ranked[i].id}, {"score", number(ranked[i].score)}});
  }
  body["best"] = top.empty() ? ordered_json(nullptr) : top.front();
  body["top"] = std::move(top);

  ordered_json d;
  d["control"] = dunnett.control;
  d["alpha"] = dunnett.alpha;
  d["df"] = dunnett.df;
  d["topics"] = dunnett.topics;
  d["pooled_sd"] = number(dunnett.pooled_sd);
  d["critical_value"] = number(dunnett.critical_value);
  d["top_group"] = dunnett.top_group;
  ordered_json systems = ordered_json::array();
  for (const auto& c : dunnett.systems) {
    systems.push_back({{"system", c.id},
                       {"mean", number(c.mean)},
                       {"t", number(c.t)},
                       {"significant", c.significant}});
  }
  d["systems"] = std::move(systems);
  body["dunnett"] = std::move(d);
  return body;
}

ApiResponse Explorer::component_tooltip(const QueryParams& params) const {
  if (!ready()) return unavailable();
  try {
    const auto request = resolve_state(params);
    const auto ref = level_param(request.view.manifest(), params, "axis", "level");
    return json_response(tooltip_json(request, {ref}));
  } catch (const Error& e) {
    return error_response(e);
  }
}

ApiResponse Explorer::link_tooltip(const QueryParams& params) const {
  if (!ready()) return unavailable();
  try {
    const auto request = resolve_state(params);
    const auto& m = request.view.manifest();
    const auto a = level_param(m, params, "axisA", "levelA");
    const auto b = level_param(m, params, "axisB", "levelB");
    if (a.axis == b.axis) {
      throw Error(ErrorKind::kInvalidArgument, "link needs two distinct axes",
                  "axisB");
    }
    if (!request.view.adjacent(a.axis, b.axis)) {
      throw Error(ErrorKind::kNotAdjacent,
                  std::string(axis_name(a.axis)) + " and " +
                      std::string(axis_name(b.axis)) +
                      " are not adjacent in the axis order",
                  "axisB");
    }
    return json_response(tooltip_json(request, {a, b}));
  } catch (const Error& e) {
    return error_response(e);
  }
}

std::vector<std::shared_ptr<const ScoreGrid>> load_grids(
    const ServiceConfig& config) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (config.data_dir.empty() || !fs::is_directory(config.data_dir, ec)) {
    throw Error(ErrorKind::kIo,
                "data directory '" + config.data_dir.string() +
                    "' does not exist",
                "data_dir");
  }
  std::vector<fs::path> manifests;
  for (const auto& entry : fs::directory_iterator(config.data_dir, ec)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".yaml" || ext == ".yml")) {
      manifests.push_back(entry.path());
    }
  }
  std::sort(manifests.begin(), manifests.end());
  if (manifests.empty()) {
    throw Error(ErrorKind::kIo,
                "no collection manifests in " + config.data_dir.string(),
                "data_dir");
  }
  std::vector<std::shared_ptr<const ScoreGrid>> grids;
  for (const auto& path : manifests) {
    auto manifest = load_manifest(path);
    if (config.rbp_persistence) manifest.rbp_persistence = *config.rbp_persistence;
    grids.push_back(std::make_shared<const ScoreGrid>(grid_from_manifest(
        std::make_shared<const CollectionManifest>(std::move(manifest)))));
  }
  return grids;
}

}  // namespace gop
