#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "eda/frame.hpp"

namespace eda {

inline constexpr std::array<double, 5> kStatsProbs{0.05, 0.25, 0.5, 0.75, 0.95};

struct ColumnStats {
  std::string column;
  DType dtype = DType::Numerical;
  std::size_t n = 0;  // rows, missing included
  std::size_t n_missing = 0;
  std::size_t n_distinct = 0;
  std::size_t n_infinite = 0;
  std::size_t n_zero = 0;
  std::size_t n_negative = 0;
  // Numerical only (NaN otherwise). Moments use finite values.
  double min = 0, max = 0, mean = 0, std = 0, variance = 0, skewness = 0, kurtosis = 0;
  std::array<double, 5> quantiles{};  // at kStatsProbs
  // Categorical only.
  std::string top;
  std::int64_t top_count = 0;
};

/// Uniform bins, left-closed, the last one closed on both ends.
struct Histogram {
  std::string column;
  std::vector<double> edges;
  std::vector<std::int64_t> counts;

  std::int64_t total() const noexcept;
};

struct KdeCurve {
  std::string column;
  std::vector<double> x;
  std::vector<double> density;
  double bandwidth = 0;
  std::size_t n_used = 0;
  std::size_t n_total = 0;
  bool sampled = false;
  std::optional<Histogram> histogram;
};

struct QQPoints {
  std::string column;
  std::vector<double> theoretical;
  std::vector<double> sample;
  double mean = 0, std = 0;
};

struct BoxStats {
  std::string label;
  std::size_t n = 0;
  double q1 = 0, median = 0, q3 = 0;
  double lower_fence = 0, upper_fence = 0;
  double lower_whisker = 0, upper_whisker = 0;
  std::vector<double> outliers;  // ascending, capped
  std::size_t n_outliers = 0;
};

/// Box plots of one column split by a grouping (categories or x bins).
struct BoxGroup {
  std::string column;
  std::string group_column;
  std::vector<BoxStats> boxes;
  std::vector<std::string> omitted;  // groups without data
};

struct BarCounts {
  std::string column;
  std::vector<std::string> labels;
  std::vector<std::int64_t> counts;
  std::int64_t other = 0;  // mass outside the top-k
  std::size_t distinct = 0;
  std::int64_t total = 0;
};

struct CorrMatrix {
  std::string method;
  std::vector<std::string> columns;
  std::vector<double> values;  // row-major m x m
  std::size_t max_rows_used = 0;
  bool sampled = false;
  std::vector<std::string> constant_columns;

  std::size_t size() const noexcept { return columns.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * columns.size() + j]; }
};

struct CorrRanking {
  std::string method;
  std::string anchor;
  std::vector<std::string> columns;
  std::vector<double> values;
};

struct ScatterPoints {
  std::string x_column, y_column;
  std::vector<double> x, y;
  std::size_t n_pairs = 0;
  bool sampled = false;
  double slope = 0, intercept = 0, r = 0;
};

struct HexCell {
  int q = 0, r = 0;
  double cx = 0, cy = 0;  // data coordinates of the centre
  std::int64_t count = 0;
};

struct HexbinGrid {
  std::string x_column, y_column;
  int gridsize = 0;
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
  double hex_size = 0;  // centre-to-corner, normalised units
  bool degenerate = false;
  std::vector<HexCell> cells;  // nonzero cells sorted by (q, r)
  std::int64_t total = 0;
};

struct MissingBar {
  std::vector<std::string> columns;
  std::vector<std::int64_t> missing;
  std::vector<double> pct;
  std::size_t rows = 0;
};

struct MissingSpectrum {
  std::vector<std::string> columns;
  std::vector<std::size_t> segment_start;
  std::vector<std::size_t> segment_rows;
  std::vector<double> fractions;  // segments x columns, row-major

  std::size_t segments() const noexcept { return segment_start.size(); }
  double at(std::size_t seg, std::size_t col) const { return fractions[seg * columns.size() + col]; }
};

struct NullityCorr {
  std::vector<std::string> columns;
  std::vector<double> values;  // row-major
  std::vector<std::string> excluded;  // fully observed or fully missing

  double at(std::size_t i, std::size_t j) const { return values[i * columns.size() + j]; }
};

struct DendrogramTree {
  struct Merge {
    std::size_t left = 0, right = 0;  // < leaves: leaf index; else leaves + merge index
    double height = 0;
    std::size_t size = 0;
  };
  std::vector<std::string> leaves;
  std::vector<Merge> merges;
  std::vector<std::size_t> leaf_order;
};

struct Ecdf {
  std::vector<double> x;
  std::vector<double> p;
};

/// Distribution of one column before and after dropping the rows in which the
/// anchor column is missing, on a shared support.
struct ImpactPair {
  std::string anchor;
  std::string column;
  DType dtype = DType::Numerical;
  bool anchor_fully_observed = false;
  std::size_t before_n = 0, after_n = 0;
  std::optional<Histogram> before_hist, after_hist;
  std::optional<BarCounts> before_bars, after_bars;
  std::optional<Ecdf> before_cdf, after_cdf;
  std::optional<double> ks_distance;
};

struct DatasetStats {
  std::size_t rows = 0;
  std::size_t columns = 0;
  std::size_t numerical = 0;
  std::size_t categorical = 0;
  std::size_t missing_cells = 0;
  double missing_pct = 0;
  std::size_t duplicate_rows = 0;
  std::vector<std::pair<std::string, DType>> dtypes;
};

/// Co-occurrence counts of the top categories of two columns.
struct CrossCounts {
  std::string x_column, y_column;
  std::vector<std::string> x_labels, y_labels;
  std::vector<std::int64_t> counts;  // x-major

  std::int64_t at(std::size_t i, std::size_t j) const { return counts[i * y_labels.size() + j]; }
};

struct HistogramGroup {
  std::string column;
  std::string group_column;
  std::vector<std::string> labels;
  std::vector<Histogram> histograms;  // shared edges
};

using Intermediate =
    std::variant<ColumnStats, Histogram, KdeCurve, QQPoints, BoxStats, BoxGroup, BarCounts, CorrMatrix, CorrRanking,
                 ScatterPoints, HexbinGrid, MissingBar, MissingSpectrum, NullityCorr, DendrogramTree, ImpactPair,
                 DatasetStats, CrossCounts, HistogramGroup>;

/// Stable tag used in JSON output, e.g. "histogram", "corr_matrix".
std::string_view intermediate_kind(const Intermediate& i) noexcept;

}  // namespace eda
