#pragma once
// Transport-independent API core. Every endpoint is a pure function of its
// request and the loaded grids; the only mutable state is the insert-only
// diagram cache and the critical-value memo.
//
//   GET  /api/health
//   GET  /api/catalog
//   POST /api/diagram                 body: ExplorationRequest
//   GET  /api/tooltip/component       ?axis=&level=&state=<request JSON>
//   GET  /api/tooltip/link            ?axisA=&levelA=&axisB=&levelB=&state=
//
// Errors: {"error": {"code": ..., "field": ..., "message": ...}} with status
// 400 (bad or unknown input), 422 (emptied axis, not enough data), 503 (still
// loading).

#include <atomic>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "gop/config.hpp"
#include "gop/dunnett.hpp"
#include "gop/error.hpp"
#include "gop/grid.hpp"
#include "gop/request.hpp"
#include "gop/stats.hpp"

namespace gop {

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
  std::map<std::string, std::string> headers;
};

using QueryParams = std::map<std::string, std::string>;

int http_status(ErrorKind kind);
ApiResponse error_response(const Error& error);

class Explorer {
 public:
  explicit Explorer(ServiceConfig config);

  const ServiceConfig& config() const { return config_; }

  // Registering a grid clears the caches.
  void add_grid(std::shared_ptr<const ScoreGrid> grid);
  void set_ready(bool ready) { ready_.store(ready); }
  bool ready() const { return ready_.load(); }
  std::shared_ptr<const ScoreGrid> grid(std::string_view collection) const;

  ApiResponse health() const;
  ApiResponse catalog() const;
  ApiResponse diagram(std::string_view body) const;
  ApiResponse component_tooltip(const QueryParams& params) const;
  ApiResponse link_tooltip(const QueryParams& params) const;

  // Tooltip statistics for visible systems satisfying `constraint` (one level
  // or an adjacent level pair).
  nlohmann::ordered_json tooltip_json(const ResolvedRequest& request,
                                      const std::vector<LevelRef>& constraint) const;
  ResolvedRequest resolve_request(const ExplorationRequest& request) const;

  std::size_t diagram_cache_size() const;
  std::size_t critical_value_cache_size() const { return cv_cache_.size(); }

 private:
  ApiResponse unavailable() const;
  ResolvedRequest resolve_state(const QueryParams& params) const;

  ServiceConfig config_;
  std::atomic<bool> ready_{false};

  mutable std::shared_mutex grids_mutex_;
  std::map<std::string, std::shared_ptr<const ScoreGrid>, std::less<>> grids_;

  mutable CriticalValueCache cv_cache_;
  mutable std::shared_mutex diagram_mutex_;
  mutable std::unordered_map<std::string, std::string> diagram_cache_;
};

// Loads every manifest (*.yaml, *.yml) under config.data_dir, in name order.
// Throws kIo when the directory is missing or holds no manifests.
std::vector<std::shared_ptr<const ScoreGrid>> load_grids(
    const ServiceConfig& config);

}  // namespace gop
