#pragma once
// Marginal / pairwise means and top-k lists over a filtered grid view.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gop/grid.hpp"

namespace gop {

struct LevelRef {
  Axis axis = Axis::kStoplist;
  std::size_t level = 0;
  bool operator==(const LevelRef&) const = default;
};

struct MarginalStat {
  Axis axis = Axis::kStoplist;
  std::size_t level = 0;
  double mean = 0.0;
  std::size_t n_systems = 0;
};

// Mean of score_vector(view) over visible systems using `level`.
// Throws kLevelHidden for a hidden level and kInsufficientData when no loaded
// system carries it.
MarginalStat marginal_mean(const GridView& view, Axis axis, std::size_t level);

// Same, restricted to systems having both levels. Axes must differ and be
// adjacent in the view's axis order. The result carries `a`'s axis/level.
MarginalStat pair_mean(const GridView& view, LevelRef a, LevelRef b);

struct RankedSystem {
  std::size_t system = 0;
  std::string id;
  double score = 0.0;
};

// Visible systems matching every constraint, by descending score then
// ascending system id; at most k entries.
std::vector<RankedSystem> top_systems(const GridView& view,
                                      std::span<const LevelRef> constraint,
                                      std::size_t k);

// Per-level marginal means of every visible level on `axis`, in level order.
// One pass over the visible systems; used by the diagram builder.
std::vector<MarginalStat> axis_marginals(const GridView& view, Axis axis,
                                         std::span<const SystemScore> scores);

struct PairStat {
  std::size_t level_a = 0;
  std::size_t level_b = 0;
  double mean = 0.0;
  std::size_t n_systems = 0;
};

// Pair means for every (a, b) level combination that has >= 1 visible
// system, ordered by (level_a, level_b).
std::vector<PairStat> stage_pairs(const GridView& view, Axis a, Axis b,
                                  std::span<const SystemScore> scores);

}  // namespace gop
