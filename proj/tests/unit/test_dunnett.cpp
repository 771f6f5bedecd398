#include <gtest/gtest.h>

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <random>

#include "json.hpp"

#include "gop/dunnett.hpp"
#include "gop/error.hpp"
#include "helpers.hpp"
#include "oracle/mc_oracle.hpp"

using namespace gop;

namespace {

double student_t_two_sided(std::size_t df, double alpha) {
  boost::math::students_t dist(static_cast<double>(df));
  return boost::math::quantile(dist, 1.0 - alpha / 2.0);
}

std::vector<ScoreRow> random_rows(std::size_t k, std::size_t n,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.1);
  std::vector<ScoreRow> rows;
  for (std::size_t i = 0; i < k; ++i) {
    ScoreRow r{"sys" + std::to_string(100 + i), {}};
    const double shift = 0.02 * static_cast<double>(i % 7);
    for (std::size_t t = 0; t < n; ++t) r.values.push_back(0.4 + shift + noise(rng));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

TEST(CriticalValue, SingleComparisonIsStudentT) {
  for (std::size_t df : {10, 30, 98, 500}) {
    CriticalValueQuery q;
    q.comparisons = 1;
    q.df = df;
    EXPECT_NEAR(dunnett_critical_value(q), student_t_two_sided(df, 0.05), 0.02)
        << "df " << df;
  }
}

TEST(CriticalValue, PublishedTableValues) {
  // Two-sided Dunnett tables, alpha 0.05, df 30.
  CriticalValueQuery q;
  q.df = 30;
  q.comparisons = 2;
  EXPECT_NEAR(dunnett_critical_value(q), 2.32, 0.02);
  q.comparisons = 5;
  EXPECT_NEAR(dunnett_critical_value(q), 2.66, 0.02);
}

TEST(CriticalValue, FrozenOracleStillReproduces) {
  const auto frozen = nlohmann::json::parse(
      testutil::slurp(testutil::fixtures() / "dunnett_oracle.json"));
  const auto& first = frozen["values"][0];
  const double fresh = oracle::dunnett_quantile(
      first["k"], first["df"], 0.05, 0.5, 200000, 77);
  EXPECT_NEAR(fresh, first["critical_value"].get<double>(), 0.03);
}

TEST(CriticalValue, DeterministicAndMonotone) {
  CriticalValueQuery q;
  q.comparisons = 4;
  q.df = 60;
  q.replicates = 50000;
  const double a = dunnett_critical_value(q);
  EXPECT_EQ(a, dunnett_critical_value(q));
  q.comparisons = 8;
  EXPECT_GT(dunnett_critical_value(q), a);
  q.comparisons = 4;
  q.alpha = 0.01;
  EXPECT_GT(dunnett_critical_value(q), a);
}

TEST(CriticalValue, RejectsBadQueries) {
  CriticalValueQuery q;
  q.comparisons = 0;
  EXPECT_THROW(dunnett_critical_value(q), Error);
  q = {};
  q.alpha = 1.0;
  EXPECT_THROW(dunnett_critical_value(q), Error);
  q = {};
  q.df = 1;
  EXPECT_THROW(dunnett_critical_value(q), Error);
  q = {};
  q.replicates = 10;
  EXPECT_THROW(dunnett_critical_value(q), Error);
}

TEST(CriticalValue, CacheMemoizes) {
  CriticalValueCache cache;
  CriticalValueQuery q;
  q.comparisons = 3;
  q.df = 40;
  q.replicates = 20000;
  const double a = cache.get(q);
  EXPECT_EQ(cache.size(), 1u);
  EXPECT_EQ(cache.get(q), a);
  EXPECT_EQ(cache.size(), 1u);
  q.seed += 1;
  cache.get(q);
  EXPECT_EQ(cache.size(), 2u);
}

TEST(Dunnett, IdenticalRowsKeepEveryone) {
  std::vector<ScoreRow> rows;
  for (int i = 0; i < 6; ++i) {
    rows.push_back({"s" + std::to_string(i), {0.1, 0.4, 0.3, 0.2}});
  }
  DunnettOptions opts;
  opts.replicates = 20000;
  const auto r = dunnett_top_group(rows, opts);
  EXPECT_EQ(r.top_group.size(), 6u);
  EXPECT_EQ(r.control, "s0");
  for (const auto& c : r.systems) {
    EXPECT_EQ(c.t, 0.0);
    EXPECT_FALSE(c.significant);
  }
}

TEST(Dunnett, ZeroVarianceDistinctMeans) {
  std::vector<ScoreRow> rows = {{"a", {0.5, 0.5}}, {"b", {0.2, 0.2}},
                                {"c", {0.5, 0.5}}};
  DunnettOptions opts;
  opts.replicates = 20000;
  const auto r = dunnett_top_group(rows, opts);
  EXPECT_EQ(r.control, "a");
  EXPECT_EQ(r.top_group, (std::vector<std::string>{"a", "c"}));
  EXPECT_TRUE(std::isinf(r.systems.back().t));
  EXPECT_TRUE(r.systems.back().significant);
}

TEST(Dunnett, HandComputedStatistic) {
  // Means 0.6, 0.4, 0.5; pooled variance of deviations.
  std::vector<ScoreRow> rows = {{"x", {0.5, 0.7}}, {"y", {0.3, 0.5}},
                                {"z", {0.4, 0.6}}};
  DunnettOptions opts;
  opts.replicates = 20000;
  const auto r = dunnett_top_group(rows, opts);
  EXPECT_EQ(r.control, "x");
  EXPECT_EQ(r.df, 3u);
  EXPECT_EQ(r.topics, 2u);
  // each group: two deviations of 0.1 -> SS = 0.02; pooled = 0.06 / 3
  const double s = std::sqrt(0.06 / 3.0);
  EXPECT_NEAR(r.pooled_sd, s, 1e-12);
  const double se = s * std::sqrt(2.0 / 2.0);
  ASSERT_EQ(r.systems.size(), 3u);
  EXPECT_EQ(r.systems[1].id, "z");
  EXPECT_NEAR(r.systems[1].t, 0.1 / se, 1e-9);
  EXPECT_NEAR(r.systems[2].t, 0.2 / se, 1e-9);
}

TEST(Dunnett, PermutationInvariant) {
  auto rows = random_rows(12, 20, 3);
  DunnettOptions opts;
  opts.replicates = 20000;
  const auto a = dunnett_top_group(rows, opts);
  std::mt19937_64 rng(1);
  std::shuffle(rows.begin(), rows.end(), rng);
  const auto b = dunnett_top_group(rows, opts);
  EXPECT_EQ(a.top_group, b.top_group);
  EXPECT_EQ(a.critical_value, b.critical_value);
  EXPECT_EQ(a.pooled_sd, b.pooled_sd);
}

TEST(Dunnett, ControlTieBrokenById) {
  std::vector<ScoreRow> rows = {{"b", {0.5, 0.7}}, {"a", {0.7, 0.5}},
                                {"c", {0.1, 0.2}}};
  DunnettOptions opts;
  opts.replicates = 20000;
  EXPECT_EQ(dunnett_top_group(rows, opts).control, "a");
}

TEST(Dunnett, TopGroupConsistentWithCriticalValue) {
  const auto rows = random_rows(30, 50, 8);
  DunnettOptions opts;
  opts.replicates = 50000;
  const auto r = dunnett_top_group(rows, opts);
  EXPECT_EQ(r.df, 30u * 49);
  std::size_t kept = 0;
  for (const auto& c : r.systems) {
    EXPECT_EQ(c.significant, c.t > r.critical_value);
    kept += !c.significant;
  }
  EXPECT_EQ(kept, r.top_group.size());
  EXPECT_EQ(r.top_group.front(), r.control);
}

TEST(Dunnett, SingleSystem) {
  std::vector<ScoreRow> rows = {{"only", {0.1, 0.2, 0.3}}};
  const auto r = dunnett_top_group(rows, {});
  EXPECT_EQ(r.top_group, (std::vector<std::string>{"only"}));
  EXPECT_TRUE(std::isinf(r.critical_value));
}

TEST(Dunnett, InputErrors) {
  try {
    std::vector<ScoreRow> rows = {{"a", {0.1}}, {"b", {0.2}}};
    dunnett_top_group(rows, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientData);
  }
  EXPECT_THROW(dunnett_top_group(std::vector<ScoreRow>{}, {}), Error);
  std::vector<ScoreRow> ragged = {{"a", {0.1, 0.2}}, {"b", {0.2}}};
  EXPECT_THROW(dunnett_top_group(ragged, {}), Error);
}
