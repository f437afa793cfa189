#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "eda/analytics.hpp"
#include "eda/error.hpp"
#include "eda/special.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace eda::analytics {
namespace {

constexpr double kTol = 1e-9;

::testing::AssertionResult close(double got, double want, double tol = kTol) {
  if (std::isnan(got) && std::isnan(want)) return ::testing::AssertionSuccess();
  const double scale = std::max({1.0, std::abs(got), std::abs(want)});
  if (std::abs(got - want) <= tol * scale) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << got << " vs " << want << " (diff " << std::abs(got - want) << ")";
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

class Oracle : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(Oracle, ColumnStats) {
  const auto df = testing::random_frame(GetParam(), 777, 6, 2, 0.05, 100);
  for (std::size_t j = 0; j < 6; ++j) {
    const auto& col = df.column(j);
    const auto s = column_stats(col);
    const auto x = testing::finite_values(col);
    const auto cells = numeric_cells(col);
    std::size_t missing = 0, inf = 0, zero = 0, neg = 0;
    std::set<double> distinct;
    for (const auto& c : cells) {
      if (!c) {
        ++missing;
        continue;
      }
      distinct.insert(*c);
      inf += std::isinf(*c);
      zero += *c == 0;
      neg += *c < 0;
    }
    SCOPED_TRACE(col.name);
    EXPECT_EQ(s.n, cells.size());
    EXPECT_EQ(s.n_missing, missing);
    EXPECT_EQ(s.n_infinite, inf);
    EXPECT_EQ(s.n_zero, zero);
    EXPECT_EQ(s.n_negative, neg);
    EXPECT_EQ(s.n_distinct, distinct.size());
    EXPECT_EQ(s.min, *std::min_element(x.begin(), x.end()));
    EXPECT_EQ(s.max, *std::max_element(x.begin(), x.end()));
    EXPECT_TRUE(close(s.mean, oracle::mean(x)));
    EXPECT_TRUE(close(s.variance, oracle::variance(x)));
    EXPECT_TRUE(close(s.std, std::sqrt(oracle::variance(x))));
    EXPECT_TRUE(close(s.skewness, oracle::skewness(x)));
    EXPECT_TRUE(close(s.kurtosis, oracle::kurtosis(x)));
    for (std::size_t q = 0; q < kStatsProbs.size(); ++q) EXPECT_TRUE(close(s.quantiles[q], oracle::quantile(x, kStatsProbs[q])));
  }
}

TEST_P(Oracle, CategoricalStatsAndBars) {
  const auto df = testing::random_frame(GetParam(), 500, 0, 3, 0.1, 64);
  for (std::size_t j = 0; j < df.width(); ++j) {
    const auto& col = df.column(j);
    std::map<std::string, std::int64_t> counts;
    std::size_t missing = 0;
    for (const auto& c : categorical_cells(col)) c ? ++counts[*c] : ++missing;
    const auto s = column_stats(col);
    EXPECT_EQ(s.n_missing, missing);
    EXPECT_EQ(s.n_distinct, counts.size());
    std::int64_t best = 0;
    std::string top;
    for (const auto& [k, v] : counts)
      if (v > best) best = v, top = k;
    EXPECT_EQ(s.top, top);
    EXPECT_EQ(s.top_count, best);

    const auto bars = bar_counts(col, 3);
    std::int64_t shown = 0;
    for (std::size_t i = 0; i < bars.labels.size(); ++i) {
      EXPECT_EQ(bars.counts[i], counts.at(bars.labels[i]));
      shown += bars.counts[i];
      if (i) {
        EXPECT_GE(bars.counts[i - 1], bars.counts[i]);
      }
    }
    EXPECT_EQ(bars.total, static_cast<std::int64_t>(col.size() - missing));
    EXPECT_EQ(shown + bars.other, bars.total);
    EXPECT_EQ(bars.distinct, counts.size());
  }
}

TEST_P(Oracle, Histogram) {
  const auto df = testing::random_frame(GetParam(), 900, 6, 0, 0.05, 128);
  for (std::size_t j = 0; j < 6; ++j) {
    const auto x = testing::finite_values(df.column(j));
    const auto h = histogram(df.column(j), 17);
    ASSERT_EQ(h.edges.size(), 18u);
    EXPECT_EQ(h.edges.front(), *std::min_element(x.begin(), x.end()));
    EXPECT_EQ(h.edges.back(), *std::max_element(x.begin(), x.end()));
    std::vector<std::int64_t> want(17, 0);
    for (double v : x)
      for (std::size_t b = 0; b < 17; ++b)
        if (h.edges[b] <= v && (v < h.edges[b + 1] || (b == 16 && v <= h.edges[b + 1]))) {
          ++want[b];
          break;
        }
    EXPECT_EQ(h.counts, want) << df.column(j).name;
    EXPECT_EQ(h.total(), static_cast<std::int64_t>(x.size()));
  }
}

TEST_P(Oracle, Correlations) {
  const auto df = testing::random_frame(GetParam(), 400, 6, 0, 0.05, 50);
  const auto p = corr_matrix(df, "pearson");
  const auto s = corr_matrix(df, "spearman");
  const auto k = corr_matrix(df, "kendall");
  ASSERT_EQ(p.size(), 6u);
  std::vector<double> x, y;
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      if (a == b) {
        EXPECT_EQ(p.at(a, b), 1.0);
        continue;
      }
      oracle::complete_pairs(numeric_cells(df.column(a)), numeric_cells(df.column(b)), x, y);
      SCOPED_TRACE(p.columns[a] + "," + p.columns[b]);
      EXPECT_TRUE(close(p.at(a, b), oracle::pearson(x, y)));
      EXPECT_TRUE(close(s.at(a, b), oracle::spearman(x, y)));
      EXPECT_TRUE(close(k.at(a, b), oracle::kendall(x, y)));
      EXPECT_EQ(p.at(a, b), p.at(b, a));
    }
}

TEST_P(Oracle, KdeMatchesDirectSum) {
  const auto x = testing::lognormal_sample(300 + GetParam() % 50, GetParam());
  const auto curve = kde(x, 64);
  const double sd = std::sqrt(oracle::variance(x));
  const double iqr = oracle::quantile(x, 0.75) - oracle::quantile(x, 0.25);
  const double h = 0.9 * std::min(sd, iqr / 1.34) * std::pow(static_cast<double>(x.size()), -0.2);
  EXPECT_TRUE(close(curve.bandwidth, h));
  ASSERT_EQ(curve.x.size(), 64u);
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  EXPECT_TRUE(close(curve.x.front(), *lo - 3 * h));
  EXPECT_TRUE(close(curve.x.back(), *hi + 3 * h));
  for (std::size_t g = 0; g < curve.x.size(); ++g)
    EXPECT_TRUE(close(curve.density[g], oracle::kde_at(x, curve.bandwidth, curve.x[g])));
}

TEST_P(Oracle, BoxStats) {
  const auto x = testing::lognormal_sample(500, GetParam());
  const auto b = box_stats(x, 1000);
  const double q1 = oracle::quantile(x, 0.25), q3 = oracle::quantile(x, 0.75);
  EXPECT_TRUE(close(b.q1, q1));
  EXPECT_TRUE(close(b.median, oracle::quantile(x, 0.5)));
  EXPECT_TRUE(close(b.q3, q3));
  const double lower = q1 - 1.5 * (q3 - q1), upper = q3 + 1.5 * (q3 - q1);
  std::vector<double> inside, out;
  for (double v : x) (v < b.lower_fence || v > b.upper_fence ? out : inside).push_back(v);
  EXPECT_TRUE(close(b.lower_fence, lower));
  EXPECT_TRUE(close(b.upper_fence, upper));
  EXPECT_EQ(b.lower_whisker, *std::min_element(inside.begin(), inside.end()));
  EXPECT_EQ(b.upper_whisker, *std::max_element(inside.begin(), inside.end()));
  EXPECT_EQ(b.n_outliers, out.size());
  EXPECT_EQ(b.outliers, sorted(out));
  EXPECT_EQ(b.n, x.size());
  const auto capped = box_stats(x, 3);
  EXPECT_LE(capped.outliers.size(), 3u);
  EXPECT_EQ(capped.n_outliers, out.size());
}

TEST_P(Oracle, MissingKernels) {
  const auto df = testing::random_frame(GetParam(), 300, 3, 2, 0.2, 40);
  const std::size_t m = df.width();
  std::vector<std::vector<int>> miss(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& col = df.column(j);
    if (col.dtype == DType::Numerical)
      for (const auto& c : numeric_cells(col)) miss[j].push_back(!c);
    else
      for (const auto& c : categorical_cells(col)) miss[j].push_back(!c);
  }
  const auto bar = missing_bar(df);
  for (std::size_t j = 0; j < m; ++j) {
    const auto count = std::count(miss[j].begin(), miss[j].end(), 1);
    EXPECT_EQ(bar.missing[j], count);
    EXPECT_TRUE(close(bar.pct[j], 100.0 * static_cast<double>(count) / 300.0));
  }
  const auto nc = nullity_corr(df);
  ASSERT_EQ(nc.columns.size(), m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      std::vector<double> xa(miss[a].begin(), miss[a].end()), xb(miss[b].begin(), miss[b].end());
      EXPECT_TRUE(close(nc.at(a, b), a == b ? 1.0 : oracle::pearson(xa, xb)));
    }
}

TEST_P(Oracle, QQSelfConsistency) {
  const auto x = testing::lognormal_sample(257, GetParam());
  const auto q = qq_normal(sorted(x), 40);
  const double mean = oracle::mean(x), sd = std::sqrt(oracle::variance(x));
  EXPECT_TRUE(close(q.mean, mean));
  EXPECT_TRUE(close(q.std, sd));
  for (std::size_t i = 0; i < 40; ++i) {
    const double p = (static_cast<double>(i) + 0.5) / 40;
    EXPECT_TRUE(close(q.sample[i], oracle::quantile(x, p)));
    // Mapping the theoretical value back through the fitted normal gives p.
    EXPECT_NEAR(special::normal_cdf((q.theoretical[i] - mean) / sd), p, 1e-12);
  }
  EXPECT_TRUE(std::is_sorted(q.theoretical.begin(), q.theoretical.end()));
  EXPECT_TRUE(std::is_sorted(q.sample.begin(), q.sample.end()));
}

INSTANTIATE_TEST_SUITE_P(Seeds, Oracle, ::testing::Values(1u, 2u, 3u, 17u, 99u));

TEST(Analytics, DuplicateRows) {
  const auto df = make_frame({{"a", NumericCells{1.0, 2.0, 1.0, std::nullopt, std::nullopt, 1.0}},
                              {"b", CategoricalCells{"x", "y", "x", "z", "z", "w"}}});
  EXPECT_EQ(dataset_stats(df).duplicate_rows, 2u);
}

TEST(Analytics, MidranksAverageTies) {
  const std::vector<double> v{3, 1, 3, 2, 3};
  EXPECT_EQ(midranks(v), oracle::ranks(v));
  EXPECT_EQ(midranks(v), (std::vector<double>{4, 1, 4, 2, 4}));
}

TEST(Analytics, ConstantColumnCorrelationIsNaN) {
  const auto df = make_frame({{"a", NumericCells{1.0, 2.0, 3.0, 4.0}}, {"b", NumericCells{5.0, 5.0, 5.0, 5.0}}});
  const auto m = corr_matrix(df, "pearson");
  EXPECT_TRUE(std::isnan(m.at(0, 1)));
  EXPECT_TRUE(std::isnan(m.at(1, 1)));
  EXPECT_EQ(m.constant_columns, std::vector<std::string>{"b"});
}

TEST(Analytics, HexbinConservesPairs) {
  const auto df = testing::random_frame(4, 2000, 2, 0, 0.05, 256);
  const auto h = hexbin(df.column(0), df.column(1), 20);
  std::vector<double> x, y;
  oracle::complete_pairs(numeric_cells(df.column(0)), numeric_cells(df.column(1)), x, y);
  std::int64_t sum = 0;
  for (const auto& c : h.cells) {
    EXPECT_GT(c.count, 0);
    sum += c.count;
  }
  EXPECT_EQ(sum, static_cast<std::int64_t>(x.size()));
  EXPECT_EQ(h.total, sum);
}

TEST(Analytics, CrossCountsMatchNaiveCounts) {
  const auto df = testing::random_frame(8, 600, 0, 2, 0.05, 77);
  const auto c = cross_counts(df.column(0), df.column(1), 100);
  std::map<std::pair<std::string, std::string>, std::int64_t> want;
  const auto a = categorical_cells(df.column(0)), b = categorical_cells(df.column(1));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) ++want[{*a[i], *b[i]}];
  for (std::size_t i = 0; i < c.x_labels.size(); ++i)
    for (std::size_t j = 0; j < c.y_labels.size(); ++j) {
      const auto it = want.find({c.x_labels[i], c.y_labels[j]});
      EXPECT_EQ(c.at(i, j), it == want.end() ? 0 : it->second);
    }
}

TEST(Analytics, DegenerateInputsSkip) {
  const auto df = testing::numeric_frame("flat", std::vector<double>(50, 2.0));
  EXPECT_THROW(kde(df.column(0), 10), DegenerateSpread);
  EXPECT_THROW(qq_normal(df.column(0), 10), DegenerateSpread);
  const auto empty = make_frame({{"e", NumericCells(10)}});
  EXPECT_THROW(quantiles(empty.column(0), kStatsProbs), NoData);
  const auto h = histogram(df.column(0), 5);
  EXPECT_EQ(h.total(), 50);
}

DataFrame col_of(NumericCells cells, std::size_t chunk = 65536) { return make_frame({{"v", std::move(cells)}}, chunk); }

TEST(Stats, HandComputedPartial) {
  const auto p = column_partial(col_of({1.0, 2.0, 3.0}).column(0));
  EXPECT_EQ(p.n, 3u);
  EXPECT_EQ(p.count, 3u);
  EXPECT_DOUBLE_EQ(p.mean * p.count, 6.0);
  EXPECT_EQ(p.min, 1.0);
  EXPECT_EQ(p.max, 3.0);
  EXPECT_DOUBLE_EQ(p.m2, 2.0);

  const auto m = column_partial(col_of({std::nullopt, std::nullopt}).column(0));
  EXPECT_EQ(m.n, 2u);
  EXPECT_EQ(m.n_missing, 2u);
  EXPECT_EQ(m.count, 0u);

  const auto i = column_partial(col_of({1.0, std::numeric_limits<double>::infinity()}).column(0));
  EXPECT_EQ(i.n_infinite, 1u);
  EXPECT_EQ(i.count, 1u);
  EXPECT_EQ(i.mean, 1.0);
}

void expect_partials_close(const StatsPartial& a, const StatsPartial& b) {
  EXPECT_EQ(a.n, b.n);
  EXPECT_EQ(a.count, b.count);
  EXPECT_EQ(a.min, b.min);
  EXPECT_EQ(a.max, b.max);
  EXPECT_TRUE(close(a.mean, b.mean, 1e-12));
  EXPECT_TRUE(close(a.m2, b.m2, 1e-12));
  EXPECT_TRUE(close(a.m3, b.m3, 1e-12));
  EXPECT_TRUE(close(a.m4, b.m4, 1e-12));
  EXPECT_EQ(a.value_counts, b.value_counts);
}

TEST(Stats, MergeMatchesSinglePass) {
  const auto a = column_partial(col_of({1.0, 2.0}).column(0));
  const auto b = column_partial(col_of({3.0}).column(0));
  expect_partials_close(merge_stats(a, b), column_partial(col_of({1.0, 2.0, 3.0}).column(0)));
  expect_partials_close(merge_stats(a, StatsPartial{}), a);
}

TEST(Stats, MergeIsAssociative) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> d(5, 3);
  for (int t = 0; t < 20; ++t) {
    std::vector<StatsPartial> parts;
    for (int k = 0; k < 3; ++k) {
      NumericCells cells(1 + rng() % 40);
      for (auto& c : cells) c = d(rng);
      parts.push_back(column_partial(col_of(cells).column(0)));
    }
    const auto& q = parts;
    expect_partials_close(merge_stats(merge_stats(q[0], q[1]), q[2]), merge_stats(q[0], merge_stats(q[1], q[2])));
  }
}

TEST(Quantiles, SmallCases) {
  const std::vector<double> four{1, 2, 3, 4};
  EXPECT_EQ(quantile_sorted(four, 0.5), 2.5);
  const std::vector<double> one{5};
  for (double p : {0.0, 0.3, 1.0}) EXPECT_EQ(quantile_sorted(one, p), 5.0);
}

TEST(Quantiles, ExactOnRandomValues) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-100, 100);
  NumericCells cells(1000);
  for (auto& c : cells) c = u(rng);
  const auto df = col_of(cells, 77);
  const auto got = quantiles(df.column(0), kStatsProbs);
  const auto x = testing::finite_values(df.column(0));
  for (std::size_t i = 0; i < kStatsProbs.size(); ++i) EXPECT_EQ(got[i], oracle::quantile(x, kStatsProbs[i]));
}

TEST(HistogramKernel, EdgeRules) {
  const auto h = histogram(col_of({0.0, 1.0, 2.0, 3.0}).column(0), 2, std::pair{0.0, 3.0});
  EXPECT_EQ(h.counts, (std::vector<std::int64_t>{2, 2}));
  const auto c = histogram(col_of({7.0, 7.0, 7.0}).column(0), 50);
  EXPECT_EQ(c.counts, std::vector<std::int64_t>{3});
}

TEST(HistogramKernel, UniformWithinBinomialBound) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  NumericCells cells(10000);
  for (auto& c : cells) c = u(rng);
  const auto h = histogram(col_of(cells).column(0), 50, std::pair{0.0, 1.0});
  const double sigma = std::sqrt(10000 * 0.02 * 0.98);
  for (auto c : h.counts) EXPECT_LE(std::abs(static_cast<double>(c) - 200), 5 * sigma);
}

TEST(KdeKernel, Bandwidth) {
  EXPECT_NEAR(silverman_bandwidth(1.0, 2.0, 100), 0.9 * std::pow(100.0, -0.2), 1e-15);
  EXPECT_NEAR(silverman_bandwidth(1.0, 2.0, 100), 0.358296453, 1e-9);
}

TEST(KdeKernel, SymmetryAndMass) {
  std::vector<double> x;
  for (int i = -20; i <= 20; ++i) x.push_back(i * 0.37);
  const auto k = kde(x, 201);
  for (std::size_t g = 0; g < k.x.size(); ++g) {
    EXPECT_NEAR(k.x[g], -k.x[k.x.size() - 1 - g], 1e-9);
    EXPECT_NEAR(k.density[g], k.density[k.x.size() - 1 - g], 1e-9);
  }
  double area = 0;
  for (std::size_t g = 1; g < k.x.size(); ++g) area += (k.x[g] - k.x[g - 1]) * (k.density[g] + k.density[g - 1]) / 2;
  EXPECT_GE(area, 0.99);
  EXPECT_LE(area, 1.01);
}

TEST(QQKernel, ExactNormalQuantilesLieOnTheLine) {
  // Type-7 quantiles at (i - 0.5) / 100 land exactly on the odd indices of a
  // 201-point sample, so those points are set to the normal quantiles.
  std::vector<double> z(100), x(201);
  for (std::size_t i = 0; i < 100; ++i) z[i] = special::normal_quantile((static_cast<double>(i) + 0.5) / 100);
  for (std::size_t i = 0; i < 100; ++i) x[2 * i + 1] = z[i];
  for (std::size_t i = 1; i < 100; ++i) x[2 * i] = (z[i - 1] + z[i]) / 2;
  x.front() = z.front() - 0.1;
  x.back() = z.back() + 0.1;
  const auto q = qq_normal(x, 100);
  ASSERT_EQ(q.sample.size(), 100u);
  for (std::size_t i = 0; i < 100; ++i) {
    EXPECT_NEAR(q.sample[i], z[i], 1e-12);
    EXPECT_NEAR((q.theoretical[i] - q.mean) / q.std, q.sample[i], 1e-6);
  }
  EXPECT_EQ(qq_probs(100).size(), 100u);
}

TEST(BoxKernel, HandCases) {
  const auto b = box_stats(std::vector<double>{1, 2, 3, 4, 100});
  EXPECT_EQ(b.q1, 2.0);
  EXPECT_EQ(b.q3, 4.0);
  EXPECT_EQ(b.upper_fence, 7.0);
  EXPECT_EQ(b.outliers, std::vector<double>{100});
  const auto flat = box_stats(std::vector<double>(10, 3.0));
  EXPECT_EQ(flat.q1, flat.q3);
  EXPECT_TRUE(flat.outliers.empty());
  const auto df = make_frame({{"v", NumericCells{1.0, 2.0, 3.0, 4.0, 5.0, 6.0}},
                              {"g", CategoricalCells{"b", "a", "c", "a", "b", "c"}}});
  const auto g = box_stats_grouped(df.column(0), df.column(1));
  ASSERT_EQ(g.boxes.size(), 3u);
  EXPECT_EQ(g.boxes[0].label, "a");
  EXPECT_EQ(g.boxes[1].label, "b");
  EXPECT_EQ(g.boxes[2].label, "c");
}

TEST(BarKernel, HandCases) {
  const auto df = make_frame({{"c", CategoricalCells{"a", "b", "a"}}});
  const auto b = bar_counts(df.column(0), 10);
  EXPECT_EQ(b.labels, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(b.counts, (std::vector<std::int64_t>{2, 1}));
  EXPECT_EQ(b.distinct, 2u);

  CategoricalCells many;
  for (int i = 0; i < 100; ++i)
    for (int r = 0; r <= i % 7; ++r) many.push_back("k" + std::to_string(i));
  const auto wide = make_frame({{"c", many}});
  const auto w = bar_counts(wide.column(0), 10);
  EXPECT_EQ(w.labels.size(), 10u);
  std::int64_t shown = 0;
  for (auto c : w.counts) shown += c;
  EXPECT_EQ(shown + w.other, static_cast<std::int64_t>(many.size()));

  CategoricalCells tie(5, "b");
  tie.insert(tie.end(), 5, "a");
  EXPECT_EQ(bar_counts(make_frame({{"c", tie}}).column(0), 1).labels, std::vector<std::string>{"a"});
}

TEST(CorrKernel, PerfectMonotone) {
  const std::vector<double> x{1, 2, 3}, up{2, 4, 6}, down{3, 2, 1};
  for (auto f : {pearson, spearman, kendall_tau_b}) {
    EXPECT_NEAR(f(x, up), 1.0, 1e-15);
    EXPECT_NEAR(f(x, down), -1.0, 1e-15);
  }
}

TEST(CorrKernel, Ranking) {
  CorrMatrix m;
  m.method = "pearson";
  m.columns = {"a", "b", "c"};
  m.values = {1, 0.9, -0.95, 0.9, 1, 0.1, -0.95, 0.1, 1};
  const auto r = corr_rank(m, "a");
  EXPECT_EQ(r.columns, (std::vector<std::string>{"c", "b"}));
  EXPECT_EQ(r.values, (std::vector<double>{-0.95, 0.9}));

  CorrMatrix p;  // same matrix, columns permuted
  p.method = "pearson";
  p.columns = {"c", "a", "b"};
  p.values = {1, -0.95, 0.1, -0.95, 1, 0.9, 0.1, 0.9, 1};
  const auto rp = corr_rank(p, "a");
  EXPECT_EQ(rp.columns, r.columns);
  EXPECT_EQ(rp.values, r.values);

  CorrMatrix single;
  single.columns = {"a"};
  single.values = {1};
  EXPECT_TRUE(corr_rank(single, "a").columns.empty());
  EXPECT_THROW(corr_rank(m, "zz"), UnknownColumn);
}

TEST(ScatterKernel, SamplingAndFit) {
  NumericCells x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(i);
    y.push_back(2.0 * i + 1);
  }
  const auto df = make_frame({{"x", x}, {"y", y}});
  const auto s = scatter_sample(df.column(0), df.column(1), 1000);
  EXPECT_EQ(s.x.size(), 10u);
  EXPECT_FALSE(s.sampled);
  EXPECT_NEAR(s.slope, 2.0, 1e-12);
  EXPECT_NEAR(s.intercept, 1.0, 1e-12);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> d;
  NumericCells bx(1000000), by(1000000);
  for (std::size_t i = 0; i < bx.size(); ++i) {
    bx[i] = d(rng);
    by[i] = d(rng);
  }
  const auto big = make_frame({{"x", bx}, {"y", by}}, 65536);
  const auto a = scatter_sample(big.column(0), big.column(1), 1000, 7);
  const auto b = scatter_sample(rechunk(big, 9999).column(0), rechunk(big, 9999).column(1), 1000, 7);
  EXPECT_EQ(a.x.size(), 1000u);
  EXPECT_TRUE(a.sampled);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
}

TEST(HexbinKernel, IdenticalPointsAndCorners) {
  const auto same = make_frame({{"x", NumericCells(25, 3.0)}, {"y", NumericCells(25, -1.0)}});
  const auto h = hexbin(same.column(0), same.column(1), 20);
  ASSERT_EQ(h.cells.size(), 1u);
  EXPECT_EQ(h.cells[0].count, 25);

  const auto corners = make_frame({{"x", NumericCells{0.0, 1.0, 0.0, 1.0, 0.5}}, {"y", NumericCells{0.0, 0.0, 1.0, 1.0, 0.5}}});
  const auto c = hexbin(corners.column(0), corners.column(1), 3);
  std::int64_t total = 0;
  for (const auto& cell : c.cells) total += cell.count;
  EXPECT_EQ(total, 5);
  const auto layout = hex_layout(0, 1, 0, 1, 3);
  EXPECT_EQ(hex_of(layout, 1.0, 1.0), hex_of(layout, 1.0, 1.0));
}

TEST(MissingKernel, HandCases) {
  const auto full = make_frame({{"a", NumericCells{1.0, 2.0}}, {"b", CategoricalCells{"x", "y"}}});
  const auto bar = missing_bar(full);
  EXPECT_EQ(bar.missing, (std::vector<std::int64_t>{0, 0}));
  const auto spec = missing_spectrum(full, 50);
  for (double f : spec.fractions) EXPECT_EQ(f, 0.0);

  const auto one = make_frame({{"a", NumericCells{1.0, std::nullopt, std::nullopt}}});
  EXPECT_EQ(missing_bar(one).missing[0], 2);
  EXPECT_NEAR(missing_bar(one).pct[0], 66.67, 0.01);

  const auto half = make_frame({{"a", NumericCells{std::nullopt, std::nullopt, 1.0, 2.0}}});
  EXPECT_EQ(missing_spectrum(half, 2).fractions, (std::vector<double>{1.0, 0.0}));
}

TEST(MissingKernel, NullityCorrelationHandCases) {
  const auto df = make_frame({{"a", NumericCells{1.0, std::nullopt, 3.0, std::nullopt}},
                              {"b", NumericCells{1.0, std::nullopt, 3.0, std::nullopt}},
                              {"c", NumericCells{std::nullopt, 2.0, std::nullopt, 4.0}}});
  const auto nc = nullity_corr(df);
  EXPECT_NEAR(nc.at(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(nc.at(0, 2), -1.0, 1e-15);
}

TEST(MissingKernel, DendrogramStructure) {
  const auto two = make_frame({{"a", NumericCells{1.0, std::nullopt, 3.0}}, {"b", NumericCells{1.0, std::nullopt, 3.0}}});
  const auto t2 = nullity_dendrogram(two);
  ASSERT_EQ(t2.merges.size(), 1u);
  EXPECT_EQ(t2.merges[0].height, 0.0);

  const std::optional<double> o = 1.0, m = std::nullopt;
  const auto four = make_frame({{"a", NumericCells{o, m, o, m, o, o}},
                                {"c", NumericCells{m, m, o, o, o, m}},
                                {"b", NumericCells{o, m, o, m, o, o}},
                                {"d", NumericCells{m, m, o, o, o, m}}});
  const auto t = nullity_dendrogram(four);
  ASSERT_EQ(t.merges.size(), 3u);
  EXPECT_EQ(t.merges[0].height, 0.0);
  EXPECT_EQ(t.merges[1].height, 0.0);
  EXPECT_GT(t.merges[2].height, 0.0);
  EXPECT_EQ(t.merges[2].size, 4u);
}

TEST(ImpactKernel, HandCases) {
  const auto df = make_frame({{"anchor", NumericCells{1.0, 2.0, std::nullopt, 4.0, std::nullopt}},
                              {"full", NumericCells{1.0, 2.0, 3.0, 4.0, 5.0}},
                              {"target", CategoricalCells{"y", "y", "x", "y", "x"}}});
  const auto nothing_missing = missing_impact(df, "full");
  for (const auto& p : nothing_missing) {
    EXPECT_TRUE(p.anchor_fully_observed);
    if (p.before_hist) {
      EXPECT_EQ(p.before_hist->counts, p.after_hist->counts);
    }
    if (p.before_bars) {
      EXPECT_EQ(p.before_bars->counts, p.after_bars->counts);
    }
  }
  const auto pairs = missing_impact(df, "anchor", "target");
  ASSERT_EQ(pairs.size(), 1u);
  const auto& after = *pairs[0].after_bars;
  for (std::size_t i = 0; i < after.labels.size(); ++i)
    if (after.labels[i] == "x") {
      EXPECT_EQ(after.counts[i], 0);
    }
  EXPECT_THROW(missing_impact(df, "nope"), UnknownColumn);
}

TEST(DatasetKernel, Shapes) {
  const auto heart = testing::random_frame(303, 303, 14, 0, 0.0, 65536);
  const auto s = dataset_stats(heart);
  EXPECT_EQ(s.rows, 303u);
  EXPECT_EQ(s.columns, 14u);
  EXPECT_EQ(s.numerical, 14u);
  EXPECT_EQ(s.categorical, 0u);

  const auto dup = make_frame({{"a", NumericCells{1.0, 1.0, 2.0}}, {"b", CategoricalCells{"x", "x", "y"}}});
  EXPECT_EQ(dataset_stats(dup).duplicate_rows, 1u);

  const auto mixed = testing::random_frame(9, 250, 3, 2, 0.1, 30);
  std::size_t missing = 0;
  for (const auto& c : mixed.columns()) missing += c.missing_count();
  const auto ms = dataset_stats(mixed);
  EXPECT_EQ(ms.missing_cells, missing);
  EXPECT_TRUE(close(ms.missing_pct, 100.0 * static_cast<double>(missing) / (250.0 * 5)));
}

}  // namespace
}  // namespace eda::analytics
