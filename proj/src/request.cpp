#include "gop/request.hpp"

#include <set>

#include "gop/error.hpp"

namespace gop {

namespace {

using nlohmann::json;

std::string require_string(const json& body, const char* field) {
  if (!body.contains(field)) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string("missing field '") + field + "'", field);
  }
  const auto& v = body.at(field);
  if (!v.is_string()) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string("field '") + field + "' must be a string", field);
  }
  return v.get<std::string>();
}

Axis axis_field(const json& v, const std::string& field) {
  if (!v.is_string()) {
    throw Error(ErrorKind::kInvalidArgument, "axis names must be strings",
                field);
  }
  try {
    return parse_axis(v.get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorKind::kUnknownAxis, e.what(), field);
  }
}

}  // namespace

ExplorationRequest parse_request(const json& body) {
  if (!body.is_object()) {
    throw Error(ErrorKind::kInvalidArgument, "request must be a JSON object",
                "body");
  }
  static const std::set<std::string> kKnown = {
      "collection", "measure", "topic", "visible", "axis_order",
      "scaling", "color_schema", "curve", "selected"};
  for (const auto& [key, value] : body.items()) {
    if (!kKnown.count(key)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "unexpected field '" + key + "'", key);
    }
  }

  ExplorationRequest r;
  r.collection = require_string(body, "collection");
  r.measure = require_string(body, "measure");

  if (body.contains("topic") && !body["topic"].is_null()) {
    const auto& t = body["topic"];
    if (t.is_string()) {
      r.topic = t.get<std::string>();
    } else if (t.is_number_integer()) {
      r.topic = std::to_string(t.get<long long>());
    } else {
      throw Error(ErrorKind::kInvalidArgument,
                  "topic must be null, a string or an integer", "topic");
    }
  }

  if (body.contains("visible")) {
    const auto& vis = body["visible"];
    if (!vis.is_object()) {
      throw Error(ErrorKind::kInvalidArgument, "visible must be an object",
                  "visible");
    }
    for (const auto& [key, levels] : vis.items()) {
      const std::string field = "visible." + key;
      const Axis axis = axis_field(json(key), field);
      if (!levels.is_array()) {
        throw Error(ErrorKind::kInvalidArgument,
                    "visible levels must be a list", field);
      }
      auto& out = r.visible[axis];
      for (const auto& l : levels) {
        if (!l.is_string()) {
          throw Error(ErrorKind::kInvalidArgument,
                      "level names must be strings", field);
        }
        out.push_back(l.get<std::string>());
      }
    }
  }

  if (body.contains("axis_order")) {
    const auto& order = body["axis_order"];
    if (!order.is_array() || order.size() != kAxisCount) {
      throw Error(ErrorKind::kInvalidArgument,
                  "axis_order must list the three component axes",
                  "axis_order");
    }
    std::set<Axis> seen;
    for (std::size_t i = 0; i < kAxisCount; ++i) {
      r.axis_order[i] = axis_field(order[i], "axis_order");
      seen.insert(r.axis_order[i]);
    }
    if (seen.size() != kAxisCount) {
      throw Error(ErrorKind::kInvalidArgument,
                  "axis_order must be a permutation", "axis_order");
    }
  }

  if (body.contains("scaling")) {
    const auto s = require_string(body, "scaling");
    if (s == "full") r.scaling = Scaling::kFullRange;
    else if (s == "minmax") r.scaling = Scaling::kMinMax;
    else throw Error(ErrorKind::kInvalidArgument,
                     "scaling must be 'full' or 'minmax'", "scaling");
  }
  if (body.contains("color_schema")) {
    const auto s = require_string(body, "color_schema");
    if (s == "component") r.color_schema = ColorSchema::kByComponent;
    else if (s == "value") r.color_schema = ColorSchema::kByValue;
    else throw Error(ErrorKind::kInvalidArgument,
                     "color_schema must be 'component' or 'value'",
                     "color_schema");
  }
  if (body.contains("curve")) {
    r.curve = require_string(body, "curve");
    if (r.curve != "cubic" && r.curve != "linear") {
      throw Error(ErrorKind::kInvalidArgument,
                  "curve must be 'cubic' or 'linear'", "curve");
    }
  }

  if (body.contains("selected")) {
    const auto& sel = body["selected"];
    if (!sel.is_array()) {
      throw Error(ErrorKind::kInvalidArgument, "selected must be a list",
                  "selected");
    }
    for (const auto& item : sel) {
      if (!item.is_object() || !item.contains("axis") ||
          !item.contains("level") || !item["level"].is_string()) {
        throw Error(ErrorKind::kInvalidArgument,
                    "selected entries need 'axis' and 'level'", "selected");
      }
      r.selected.emplace_back(axis_field(item["axis"], "selected"),
                              item["level"].get<std::string>());
    }
  }
  return r;
}

ExplorationRequest parse_request(std::string_view body) {
  json parsed;
  try {
    parsed = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("malformed JSON: ") + e.what(),
                "body");
  }
  return parse_request(parsed);
}

nlohmann::ordered_json canonical_json(const ExplorationRequest& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["collection"] = r.collection;
  j["measure"] = r.measure;
  j["topic"] = r.topic ? ordered_json(*r.topic) : ordered_json(nullptr);
  ordered_json visible = ordered_json::object();
  for (const auto& [axis, levels] : r.visible) {
    visible[std::string(axis_name(axis))] = levels;
  }
  j["visible"] = std::move(visible);
  ordered_json order = ordered_json::array();
  for (Axis a : r.axis_order) order.push_back(axis_name(a));
  j["axis_order"] = std::move(order);
  j["scaling"] = scaling_name(r.scaling);
  j["color_schema"] = color_schema_name(r.color_schema);
  j["curve"] = r.curve;
  ordered_json selected = ordered_json::array();
  for (const auto& [axis, level] : r.selected) {
    selected.push_back({{"axis", axis_name(axis)}, {"level", level}});
  }
  j["selected"] = std::move(selected);
  return j;
}

ResolvedRequest resolve(const ExplorationRequest& r,
                        std::shared_ptr<const ScoreGrid> grid) {
  const auto& m = grid->manifest();
  GridView view(grid, grid->measure_index(r.measure));
  if (r.topic) view = view.with_topic(grid->topic_index(*r.topic));
  view = view.with_axis_order(r.axis_order);

  for (const auto& [axis, names] : r.visible) {
    const std::string field = "visible." + std::string(axis_name(axis));
    std::vector<std::uint8_t> keep(m.level_count(axis), 0);
    for (const auto& name : names) {
      const auto idx = m.find_level(axis, name);
      if (!idx) {
        throw Error(ErrorKind::kUnknownLevel,
                    "unknown " + std::string(axis_name(axis)) + " level '" +
                        name + "'",
                    field);
      }
      keep[*idx] = 1;
    }
    if (std::find(keep.begin(), keep.end(), 1) == keep.end()) {
      throw Error(ErrorKind::kEmptyAxis,
                  "axis cannot be emptied: " + std::string(axis_name(axis)),
                  field);
    }
    // Show the kept levels first so that no intermediate view is empty.
    for (std::size_t l = 0; l < keep.size(); ++l) {
      if (keep[l]) view = view.with_level(axis, l, true);
    }
    for (std::size_t l = 0; l < keep.size(); ++l) {
      if (!keep[l]) view = view.with_level(axis, l, false);
    }
  }

  DisplayOptions options;
  options.scaling = r.scaling;
  options.color_schema = r.color_schema;
  options.curve = r.curve;
  for (const auto& [axis, name] : r.selected) {
    const auto idx = m.find_level(axis, name);
    if (!idx) {
      throw Error(ErrorKind::kUnknownLevel,
                  "unknown " + std::string(axis_name(axis)) + " level '" +
                      name + "'",
                  "selected");
    }
    options.selected.push_back({axis, *idx});
  }
  return {std::move(view), std::move(options)};
}

}  // namespace gop
