#pragma once
// Exploration request: the full UI state, sent with every call.
//
// {
//   "collection": "T07",                 required
//   "measure": "AP",                     required
//   "topic": null | "351",               null = average over topics
//   "visible": {"stemmer": ["krovetz"]}, per-axis visible levels; an absent
//                                        axis means all levels visible
//   "axis_order": ["stoplist", "stemmer", "model"],
//   "scaling": "full" | "minmax",
//   "color_schema": "component" | "value",
//   "curve": "cubic" | "linear",
//   "selected": [{"axis": "stoplist", "level": "indri"}]
// }

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gop/grid.hpp"
#include "gop/sankey.hpp"

namespace gop {

struct ExplorationRequest {
  std::string collection;
  std::string measure;
  std::optional<std::string> topic;
  std::map<Axis, std::vector<std::string>> visible;
  AxisOrder axis_order = kDefaultAxisOrder;
  Scaling scaling = Scaling::kFullRange;
  ColorSchema color_schema = ColorSchema::kByComponent;
  std::string curve = "cubic";
  std::vector<std::pair<Axis, std::string>> selected;
};

// Structural parsing only; names are checked against a grid by resolve().
// Throws Error with the offending field name.
ExplorationRequest parse_request(const nlohmann::json& body);
ExplorationRequest parse_request(std::string_view body);

// Normalized JSON form (stable key order, explicit defaults).
nlohmann::ordered_json canonical_json(const ExplorationRequest& request);

struct ResolvedRequest {
  GridView view;
  DisplayOptions options;
};

// Validates every name against the grid's manifest. Unknown names raise
// kUnknownLevel / kUnknownMeasure / kUnknownTopic; an axis whose visible list
// is empty raises kEmptyAxis.
ResolvedRequest resolve(const ExplorationRequest& request,
                        std::shared_ptr<const ScoreGrid> grid);

}  // namespace gop
