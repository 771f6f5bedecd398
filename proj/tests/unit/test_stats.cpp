#include <gtest/gtest.h>

#include <random>

#include "gop/error.hpp"
#include "gop/stats.hpp"
#include "helpers.hpp"
#include "oracle/grid_oracle.hpp"

using namespace gop;

namespace {

GridView random_view(std::shared_ptr<const ScoreGrid> g, std::mt19937_64& rng) {
  GridView v(g, rng() % g->measure_count());
  if (rng() % 2) v = v.with_topic(rng() % g->topic_count());
  for (Axis a : kAllAxes) {
    for (std::size_t l = 0; l < g->manifest().level_count(a); ++l) {
      if (rng() % 3 == 0 && v.visible_level_count(a) > 1) {
        v = v.with_level(a, l, false);
      }
    }
  }
  return v;
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::kIo;
}

}  // namespace

TEST(Stats, MarginalAndPairMatchEnumeration) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::size_t> missing;
    if (trial % 4 == 0) missing = {rng() % 27};
    const auto g = testutil::toy_grid(3, 3, 3, 6, rng(), missing);
    const auto v = random_view(g, rng);
    for (Axis a : kAllAxes) {
      for (std::size_t l : v.visible_levels(a)) {
        const auto want = oracle::constrained_mean(v, {{a, l}});
        if (want.n == 0) {
          EXPECT_EQ(kind_of([&] { marginal_mean(v, a, l); }),
                    ErrorKind::kInsufficientData);
          continue;
        }
        const auto got = marginal_mean(v, a, l);
        EXPECT_EQ(got.mean, want.mean);
        EXPECT_EQ(got.n_systems, want.n);
      }
    }
    for (std::size_t i = 0; i + 1 < kAxisCount; ++i) {
      const Axis a = v.axis_order()[i], b = v.axis_order()[i + 1];
      for (std::size_t la : v.visible_levels(a)) {
        for (std::size_t lb : v.visible_levels(b)) {
          const auto want = oracle::constrained_mean(v, {{a, la}, {b, lb}});
          if (want.n == 0) continue;
          const auto got = pair_mean(v, {a, la}, {b, lb});
          EXPECT_EQ(got.mean, want.mean);
          EXPECT_EQ(got.n_systems, want.n);
        }
      }
    }
  }
}

TEST(Stats, AxisMarginalsAgreeWithMarginalMean) {
  const auto g = testutil::toy_grid(3, 4, 5, 4, 2);
  const auto v = GridView(g, 2).with_level(Axis::kModel, 1, false);
  const auto scores = score_vector(v);
  for (Axis a : kAllAxes) {
    const auto all = axis_marginals(v, a, scores);
    ASSERT_EQ(all.size(), v.visible_level_count(a));
    for (const auto& s : all) {
      const auto one = marginal_mean(v, a, s.level);
      EXPECT_EQ(s.mean, one.mean);
      EXPECT_EQ(s.n_systems, one.n_systems);
    }
  }
}

TEST(Stats, StagePairsAgreeWithPairMean) {
  const auto g = testutil::toy_grid(3, 4, 5, 4, 2);
  const auto v = GridView(g, 0).with_level(Axis::kStemmer, 0, false);
  const auto scores = score_vector(v);
  const auto pairs = stage_pairs(v, Axis::kStemmer, Axis::kModel, scores);
  EXPECT_EQ(pairs.size(), 3u * 5);
  for (const auto& p : pairs) {
    const auto one = pair_mean(v, {Axis::kStemmer, p.level_a},
                               {Axis::kModel, p.level_b});
    EXPECT_EQ(p.mean, one.mean);
    EXPECT_EQ(p.n_systems, one.n_systems);
  }
}

TEST(Stats, Errors) {
  const auto g = testutil::toy_grid(2, 2, 2, 3, 2);
  const auto v = GridView(g, 0).with_level(Axis::kStoplist, 1, false);
  EXPECT_EQ(kind_of([&] { marginal_mean(v, Axis::kStoplist, 1); }),
            ErrorKind::kLevelHidden);
  EXPECT_EQ(kind_of([&] {
              pair_mean(v, {Axis::kStoplist, 0}, {Axis::kModel, 0});
            }),
            ErrorKind::kNotAdjacent);
  EXPECT_EQ(kind_of([&] {
              pair_mean(v, {Axis::kModel, 0}, {Axis::kModel, 1});
            }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([&] {
              pair_mean(v, {Axis::kStoplist, 1}, {Axis::kStemmer, 0});
            }),
            ErrorKind::kLevelHidden);
}

TEST(Stats, MarginalOverMissingSystemsOnly) {
  // s1 only has systems 4..7; all missing.
  const auto g = testutil::toy_grid(2, 2, 2, 3, 2, {4, 5, 6, 7});
  GridView v(g, 0);
  EXPECT_EQ(kind_of([&] { marginal_mean(v, Axis::kStoplist, 1); }),
            ErrorKind::kInsufficientData);
}

TEST(Stats, TopSystemsOrder) {
  const auto g = testutil::toy_grid(3, 3, 3, 4, 6);
  GridView v(g, 0);
  const LevelRef c[] = {{Axis::kStemmer, 1}};
  const auto top = top_systems(v, c, 100);
  ASSERT_EQ(top.size(), 9u);
  for (std::size_t i = 1; i < top.size(); ++i) {
    EXPECT_TRUE(top[i - 1].score > top[i].score ||
                (top[i - 1].score == top[i].score && top[i - 1].id < top[i].id));
  }
  for (const auto& r : top) EXPECT_EQ(g->system(r.system).level(Axis::kStemmer), 1);
  EXPECT_EQ(top_systems(v, c, 5).size(), 5u);
}

TEST(Stats, TopSystemsTiesByAscendingId) {
  auto m = std::make_shared<const CollectionManifest>(synth::toy_manifest(1, 1, 3, 2));
  std::vector<MeasureId> ms = {MeasureRegistry::standard().find("AP")};
  auto g = std::make_shared<const ScoreGrid>(
      m, ms, std::vector<double>{0.5, 0.5, 0.5, 0.5, 0.5, 0.5},
      std::vector<std::uint8_t>{1, 1, 1});
  const auto top = top_systems(GridView(g, 0), {}, 3);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0].id, "s0_t0_m0");
  EXPECT_EQ(top[2].id, "s0_t0_m2");
}

TEST(Stats, IndriKrovetzLeadsSyntheticGrid) {
  const auto g = testutil::paper_grid();
  GridView v(g, 0);
  const auto& m = g->manifest();
  const auto best = [&](Axis a) {
    std::size_t arg = 0;
    double top = -1;
    for (std::size_t l = 0; l < m.level_count(a); ++l) {
      const double x = marginal_mean(v, a, l).mean;
      if (x > top) top = x, arg = l;
    }
    return m.level_name(a, arg);
  };
  EXPECT_EQ(best(Axis::kStoplist), "indri");
  EXPECT_EQ(best(Axis::kStemmer), "krovetz");
}
