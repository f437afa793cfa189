#include <gtest/gtest.h>

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>

#include "eda/analytics.hpp"
#include "eda/insights.hpp"
#include "eda/special.hpp"
#include "eda/tasks.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace eda::insights {
namespace {

const ConfigTree& defaults() {
  static const auto cfg = build_config();
  return cfg;
}

bool has_kind(const std::vector<Insight>& v, InsightKind k) {
  return std::any_of(v.begin(), v.end(), [k](const Insight& i) { return i.kind == k; });
}

std::vector<Insight> panel_insights(const TaskResult& r, ChartKind kind) {
  for (const auto& p : r.panels)
    if (p.kind == kind) return p.insights;
  return {};
}

TEST(StatInsights, HighCardinalityIsAWarning) {
  ColumnStats s;
  s.column = "name";
  s.dtype = DType::Categorical;
  s.n = 500;
  s.n_distinct = 120;
  const auto out = detect_stat_insights(s, defaults());
  ASSERT_TRUE(has_kind(out, InsightKind::HighCardinality));
  const auto it = std::find_if(out.begin(), out.end(), [](const Insight& i) { return i.kind == InsightKind::HighCardinality; });
  EXPECT_EQ(it->observed, 120);
  EXPECT_EQ(it->threshold, 50);
  EXPECT_EQ(it->severity, Severity::Warning);
}

TEST(StatInsights, CleanColumnHasNoQualityInsights) {
  std::vector<double> v;
  for (int i = 1; i <= 200; ++i) v.push_back(i % 10 + 1);
  const auto df = testing::numeric_frame("clean", v);
  const auto out = detect_stat_insights(analytics::column_stats(df.column(0)), defaults());
  for (auto k : {InsightKind::Missing, InsightKind::Infinite, InsightKind::Zeros, InsightKind::Negatives,
                 InsightKind::Constant, InsightKind::HighCardinality})
    EXPECT_FALSE(has_kind(out, k)) << to_string(k);
}

TEST(StatInsights, LognormalIsSkewed) {
  const auto x = testing::lognormal_sample(10000, 42);
  ASSERT_GT(oracle::skewness(x), 1.0);
  const auto df = testing::numeric_frame("ln", x);
  EXPECT_TRUE(has_kind(detect_stat_insights(analytics::column_stats(df.column(0)), defaults()), InsightKind::Skewed));
}

TEST(StatInsights, QualityThresholds) {
  NumericCells cells;
  for (int i = 0; i < 100; ++i) cells.push_back(i < 10 ? 0.0 : i - 50.0);
  cells.push_back(std::nullopt);
  cells.push_back(std::nullopt);
  cells.push_back(std::numeric_limits<double>::infinity());
  const auto df = make_frame({{"q", cells}});
  auto out = detect_stat_insights(analytics::column_stats(df.column(0)), defaults());
  EXPECT_TRUE(has_kind(out, InsightKind::Missing));
  EXPECT_TRUE(has_kind(out, InsightKind::Infinite));
  EXPECT_TRUE(has_kind(out, InsightKind::Zeros));
  EXPECT_FALSE(has_kind(out, InsightKind::Negatives));
  out = detect_stat_insights(analytics::column_stats(df.column(0)), build_config({{"insight.flag_negatives", true}}));
  EXPECT_TRUE(has_kind(out, InsightKind::Negatives));
}

TEST(UniformTest, HandCases) {
  const std::vector<std::int64_t> flat{10, 10, 10}, spike{100, 0, 0};
  const auto u = test_uniform(flat, "c", defaults());
  ASSERT_TRUE(u);
  EXPECT_EQ(u->observed, 1.0);
  EXPECT_FALSE(test_uniform(spike, "c", defaults()));
}

TEST(UniformTest, TwoDegreesOfFreedomClosedForm) {
  EXPECT_NEAR(special::chi2_sf(4.605, 2), std::exp(-4.605 / 2), 1e-14);
  EXPECT_NEAR(special::chi2_sf(4.605, 2), 0.1000, 1e-4);
  EXPECT_NEAR(special::chi2_sf(4.605, 1), boost::math::gamma_q(0.5, 4.605 / 2), 1e-12);
}

TEST(NormalTest, FiresOnNormalNotOnExponential) {
  const auto normal = testing::stratified_normal(5000, 7);
  const auto n = test_normal(normal, "z", defaults());
  ASSERT_TRUE(n);
  EXPECT_GE(n->observed, 0.99);
  EXPECT_EQ(n->message, "z is normally distributed");

  std::mt19937_64 rng(7);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> expo(5000);
  for (auto& v : expo) v = e(rng);
  EXPECT_FALSE(test_normal(expo, "e", defaults()));
  EXPECT_FALSE(test_normal(std::vector<double>(100, 3.0), "k", defaults()));
}

double ecdf_gap(std::vector<double> a, std::vector<double> b) {
  std::vector<double> all = a;
  all.insert(all.end(), b.begin(), b.end());
  double d = 0;
  for (double t : all) {
    const double fa = static_cast<double>(std::count_if(a.begin(), a.end(), [t](double v) { return v <= t; })) / a.size();
    const double fb = static_cast<double>(std::count_if(b.begin(), b.end(), [t](double v) { return v <= t; })) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

TEST(SimilarTest, HandCasesAndOracle) {
  std::vector<double> a(50), b(50);
  for (int i = 0; i < 50; ++i) a[i] = i, b[i] = 100 + i;
  const auto same = test_similar(a, a, "a", "a2", defaults());
  ASSERT_TRUE(same);
  EXPECT_EQ(same->observed, 0.0);
  EXPECT_FALSE(test_similar(a, b, "a", "b", defaults()));
  EXPECT_EQ(special::ks_statistic(a, b), 1.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> x(1000), y(1000);
  for (auto& v : x) v = u(rng);
  for (auto& v : y) v = u(rng) + 0.5;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double d = special::ks_statistic(x, y);
  EXPECT_NEAR(d, ecdf_gap(x, y), 1e-15);
  EXPECT_NEAR(d, 0.5, 0.06);
  EXPECT_FALSE(test_similar(x, y, "x", "y", defaults()));
}

CorrMatrix pair_matrix(double r) {
  CorrMatrix m;
  m.method = "pearson";
  m.columns = {"size", "price"};
  m.values = {1, r, r, 1};
  return m;
}

TEST(CorrInsights, Thresholds) {
  const auto hi = pair_matrix(0.95);
  const auto out = detect_corr_insights(std::span(&hi, 1), defaults());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].columns, (std::vector<std::string>{"size", "price"}));
  const auto none = pair_matrix(0.0);
  EXPECT_TRUE(detect_corr_insights(std::span(&none, 1), defaults()).empty());
  const auto edge = pair_matrix(0.9);
  EXPECT_EQ(detect_corr_insights(std::span(&edge, 1), defaults()).size(), 1u);
  const auto neg = pair_matrix(-0.93);
  EXPECT_EQ(detect_corr_insights(std::span(&neg, 1), defaults()).size(), 1u);
}

TEST(ImpactInsight, IdenticalPairIsNoImpact) {
  const auto df = testing::house_frame(1, 400);
  const auto pairs = analytics::missing_impact(df, "size");  // size has no missing cells
  ASSERT_FALSE(pairs.empty());
  for (const auto& p : pairs) {
    const auto i = detect_impact(p, defaults());
    ASSERT_TRUE(i) << p.column;
    EXPECT_EQ(i->kind, InsightKind::NoImpact);
    EXPECT_EQ(i->observed, 0.0);
  }
}

// End to end through run_task.
TEST(TaskInsights, AcceptanceFixtures) {
  const auto& cfg = defaults();
  const auto constant = testing::numeric_frame("k", std::vector<double>(500, 4.2));
  EXPECT_TRUE(has_kind(panel_insights(run_task(constant, TaskFamily::Plot, {"k"}, cfg), ChartKind::Stats),
                       InsightKind::Constant));

  const auto die = testing::numeric_frame("die", testing::fair_die(10000));
  const auto u = panel_insights(run_task(die, TaskFamily::Plot, {"die"}, cfg), ChartKind::Histogram);
  ASSERT_TRUE(has_kind(u, InsightKind::Uniform));
  for (const auto& i : u)
    if (i.kind == InsightKind::Uniform) {
      EXPECT_GE(i.observed, 0.999);
    }

  const auto normal = testing::numeric_frame("price", testing::stratified_normal(5000, 11));
  const auto n = panel_insights(run_task(normal, TaskFamily::Plot, {"price"}, cfg), ChartKind::QQNormal);
  ASSERT_TRUE(has_kind(n, InsightKind::Normal));
  EXPECT_EQ(n[0].message, "price is normally distributed");

  const auto ln = testing::numeric_frame("ln", testing::lognormal_sample(10000, 5));
  EXPECT_TRUE(has_kind(panel_insights(run_task(ln, TaskFamily::Plot, {"ln"}, cfg), ChartKind::Histogram), InsightKind::Skewed));

  const auto house = testing::house_frame(2, 500);
  const auto impact = run_task(house, TaskFamily::PlotMissing, {"size"}, cfg);
  ASSERT_FALSE(impact.panels.empty());
  for (const auto& p : impact.panels) EXPECT_TRUE(has_kind(p.insights, InsightKind::NoImpact)) << p.title;
}

TEST(TaskInsights, EveryEmittedInsightSatisfiesItsPredicate) {
  const auto df = testing::random_frame(77, 800, 6, 3, 0.1, 100);
  const auto cfg = build_config({{"insight.flag_negatives", true}});
  const auto report = create_report(df, cfg);
  std::size_t seen = 0;
  for (const auto& s : report.sections)
    for (const auto& g : s.groups)
      for (const auto& p : g.panels)
        for (const auto& i : p.insights) {
          ++seen;
          EXPECT_TRUE(satisfied(i)) << i.message;
          EXPECT_EQ(i.anchor, to_string(p.kind));
          EXPECT_FALSE(i.message.empty());
        }
  EXPECT_GT(seen, 0u);
}

}  // namespace
}  // namespace eda::insights
