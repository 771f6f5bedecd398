#include "gop/stats.hpp"

#include <algorithm>

#include "gop/error.hpp"
#include "gop/kernels.hpp"

namespace gop {

namespace {

void require_visible(const GridView& view, LevelRef ref) {
  const auto& m = view.manifest();
  if (ref.level >= m.level_count(ref.axis)) {
    throw Error(ErrorKind::kUnknownLevel, "level index out of range",
                std::string(axis_name(ref.axis)));
  }
  if (!view.visible(ref.axis, ref.level)) {
    throw Error(ErrorKind::kLevelHidden,
                std::string(axis_name(ref.axis)) + " level '" +
                    m.level_name(ref.axis, ref.level) +
                    "' is hidden by the current filter",
                std::string(axis_name(ref.axis)));
  }
}

// Mean over the systems satisfying `match`, summed in ascending system order.
template <typename Match>
MarginalStat mean_where(const GridView& view, LevelRef ref, Match match) {
  const auto scores = score_vector(view);
  MarginalStat stat{ref.axis, ref.level, 0.0, 0};
  double sum = 0.0;
  for (const auto& s : scores) {
    if (match(view.grid().system(s.system))) {
      sum += s.value;
      ++stat.n_systems;
    }
  }
  if (stat.n_systems == 0) {
    throw Error(ErrorKind::kInsufficientData,
                "no loaded system uses " + std::string(axis_name(ref.axis)) +
                    " level '" + view.manifest().level_name(ref.axis, ref.level) +
                    "'",
                std::string(axis_name(ref.axis)));
  }
  stat.mean = sum / static_cast<double>(stat.n_systems);
  return stat;
}

}  // namespace

MarginalStat marginal_mean(const GridView& view, Axis axis, std::size_t level) {
  require_visible(view, {axis, level});
  return mean_where(view, {axis, level}, [&](const SystemConfig& c) {
    return c.level(axis) == level;
  });
}

MarginalStat pair_mean(const GridView& view, LevelRef a, LevelRef b) {
  if (a.axis == b.axis) {
    throw Error(ErrorKind::kInvalidArgument,
                "pair needs two distinct axes", std::string(axis_name(b.axis)));
  }
  if (!view.adjacent(a.axis, b.axis)) {
    throw Error(ErrorKind::kNotAdjacent,
                std::string(axis_name(a.axis)) + " and " +
                    std::string(axis_name(b.axis)) +
                    " are not adjacent in the axis order",
                std::string(axis_name(b.axis)));
  }
  require_visible(view, a);
  require_visible(view, b);
  return mean_where(view, a, [&](const SystemConfig& c) {
    return c.level(a.axis) == a.level && c.level(b.axis) == b.level;
  });
}

std::vector<RankedSystem> top_systems(const GridView& view,
                                      std::span<const LevelRef> constraint,
                                      std::size_t k) {
  if (k == 0) {
    throw Error(ErrorKind::kInvalidArgument, "k must be >= 1", "k");
  }
  std::vector<RankedSystem> matches;
  for (const auto& s : score_vector(view)) {
    const auto c = view.grid().system(s.system);
    const bool ok = std::all_of(constraint.begin(), constraint.end(),
                                [&](const LevelRef& r) {
                                  return c.level(r.axis) == r.level;
                                });
    if (ok) matches.push_back({s.system, view.grid().system_id(s.system), s.value});
  }
  const auto by_rank = [](const RankedSystem& x, const RankedSystem& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.id < y.id;
  };
  const std::size_t n = std::min(k, matches.size());
  std::partial_sort(matches.begin(), matches.begin() + n, matches.end(),
                    by_rank);
  matches.resize(n);
  return matches;
}

std::vector<MarginalStat> axis_marginals(const GridView& view, Axis axis,
                                         std::span<const SystemScore> scores) {
  const auto& grid = view.grid();
  const std::size_t levels = view.manifest().level_count(axis);
  std::vector<double> values(scores.size());
  std::vector<std::uint32_t> group(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    values[i] = scores[i].value;
    group[i] = grid.system(scores[i].system).level(axis);
  }
  const auto sums = kernels::group_sums_parallel(values, group, levels);
  std::vector<MarginalStat> out;
  for (std::size_t l = 0; l < levels; ++l) {
    if (!view.visible(axis, l) || sums[l].count == 0) continue;
    out.push_back({axis, l, sums[l].sum / static_cast<double>(sums[l].count),
                   sums[l].count});
  }
  return out;
}

std::vector<PairStat> stage_pairs(const GridView& view, Axis a, Axis b,
                                  std::span<const SystemScore> scores) {
  const auto& grid = view.grid();
  const std::size_t nb = view.manifest().level_count(b);
  const std::size_t groups = view.manifest().level_count(a) * nb;
  std::vector<double> values(scores.size());
  std::vector<std::uint32_t> group(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto c = grid.system(scores[i].system);
    values[i] = scores[i].value;
    group[i] = static_cast<std::uint32_t>(c.level(a) * nb + c.level(b));
  }
  const auto sums = kernels::group_sums_parallel(values, group, groups);
  std::vector<PairStat> out;
  for (std::size_t g = 0; g < groups; ++g) {
    if (sums[g].count == 0) continue;
    out.push_back({g / nb, g % nb,
                   sums[g].sum / static_cast<double>(sums[g].count),
                   sums[g].count});
  }
  return out;
}

}  // namespace gop
