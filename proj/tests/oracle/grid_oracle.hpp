#pragma once
// Exhaustive enumeration over every system of a grid view.

#include <optional>
#include <vector>

#include "gop/grid.hpp"
#include "gop/stats.hpp"

namespace oracle {

inline double system_score(const gop::GridView& v, std::size_t s) {
  const auto& g = v.grid();
  if (v.topic()) return g.score(s, v.measure(), *v.topic());
  double sum = 0.0;
  for (std::size_t t = 0; t < g.topic_count(); ++t) {
    sum += g.score(s, v.measure(), t);
  }
  return sum / static_cast<double>(g.topic_count());
}

struct Mean {
  double mean = 0.0;
  std::size_t n = 0;
};

// Mean over visible loaded systems matching every (axis, level) pair.
inline Mean constrained_mean(const gop::GridView& v,
                             const std::vector<gop::LevelRef>& refs) {
  const auto& g = v.grid();
  const auto& m = v.manifest();
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t s = 0; s < g.system_count(); ++s) {
    if (!g.loaded(s)) continue;
    const auto c = m.system_at(s);
    bool ok = true;
    for (gop::Axis a : gop::kAllAxes) ok = ok && v.visible(a, c.level(a));
    for (const auto& r : refs) ok = ok && c.level(r.axis) == r.level;
    if (!ok) continue;
    sum += system_score(v, s);
    ++n;
  }
  return {n ? sum / static_cast<double>(n) : 0.0, n};
}

}  // namespace oracle
