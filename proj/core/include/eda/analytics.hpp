#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eda/frame.hpp"
#include "eda/intermediate.hpp"

// Statistical kernels. Chunk-level pieces (`*_partial`, `merge_*`) are what
// the compute graph runs in its reduce stage; the Column/DataFrame overloads
// run the same pieces sequentially for direct use.
namespace eda::analytics {

// --- univariate statistics --------------------------------------------------

struct StatsPartial {
  std::size_t n = 0;  // rows seen
  std::size_t n_missing = 0;
  std::size_t n_infinite = 0;
  std::size_t n_zero = 0;
  std::size_t n_negative = 0;
  std::size_t count = 0;  // finite values in the moments below
  double mean = 0, m2 = 0, m3 = 0, m4 = 0;
  double min = 0, max = 0;
  /// Numerical: (value, count) per distinct non-missing value, ascending,
  /// -0 folded into 0.
  std::vector<std::pair<double, std::int64_t>> value_counts;
  std::vector<std::int64_t> code_counts;                  // categorical, by code
};

StatsPartial partial_stats(const Chunk& chunk, DType dtype, std::size_t categories = 0);
void merge_stats(StatsPartial& into, StatsPartial&& other);
StatsPartial merge_stats(StatsPartial a, const StatsPartial& b);
StatsPartial column_partial(const Column& col);

/// Combines merged counts/moments with the shared quantile output
/// (values at kStatsProbs; ignored for categorical columns).
ColumnStats finish_stats(const StatsPartial& p, const Column& col, std::span<const double> quantiles);
ColumnStats column_stats(const Column& col);

double sample_variance(const StatsPartial& p) noexcept;
/// Bias-adjusted Fisher-Pearson skewness G1 (NaN when n < 3 or no spread).
double skewness(const StatsPartial& p) noexcept;
/// Bias-adjusted excess kurtosis G2 (NaN when n < 4 or no spread).
double excess_kurtosis(const StatsPartial& p) noexcept;

// --- order statistics -------------------------------------------------------

/// Ascending finite, non-missing values of one chunk.
std::vector<double> sorted_finite(const Chunk& chunk);
void merge_sorted(std::vector<double>& into, std::vector<double>&& other);
std::vector<double> sorted_finite(const Column& col);

/// Type-7 quantile: h = (n - 1) p, linear interpolation.
double quantile_sorted(std::span<const double> sorted, double p);
/// Throws NoData when the column has no finite value.
std::vector<double> quantiles(const Column& col, std::span<const double> probs);

// --- histogram --------------------------------------------------------------

/// `bins + 1` strictly increasing edges over [lo, hi]; lo == hi yields the
/// single bin [lo - 0.5, lo + 0.5].
std::vector<double> uniform_edges(double lo, double hi, std::size_t bins);
/// Bin of x, or nullopt outside [edges.front(), edges.back()].
std::optional<std::size_t> bin_index(double x, std::span<const double> edges) noexcept;
std::vector<std::int64_t> histogram_partial(const Chunk& chunk, std::span<const double> edges);
Histogram histogram(const Column& col, std::size_t bins, std::optional<std::pair<double, double>> range = {});

// --- density / normal plots -------------------------------------------------

/// Silverman's rule 0.9 * min(sd, IQR / 1.34) * n^(-1/5); falls back to the
/// other spread measure when one of them is zero.
double silverman_bandwidth(double sd, double iqr, std::size_t n) noexcept;
/// Gaussian KDE on a uniform grid over [min - 3h, max + 3h]. Throws
/// DegenerateSpread when the values have no spread.
KdeCurve kde(std::span<const double> values, std::size_t grid_points);
KdeCurve kde(const Column& col, std::size_t grid_points, std::size_t sample_cap = 10000, std::uint64_t seed = 0);

/// Probabilities (i - 0.5) / n_points, i = 1..n_points.
std::vector<double> qq_probs(std::size_t n_points);
QQPoints qq_normal(std::span<const double> sorted, std::size_t n_points);
QQPoints qq_normal(const Column& col, std::size_t n_points);

// --- box plot ---------------------------------------------------------------

struct BoxPartial {
  std::size_t n = 0;
  double lo = 0, hi = 0;  // extreme values inside the fences
  bool any_inside = false;
  std::vector<double> outliers;
};

struct Fences {
  double q1, median, q3, lower, upper;
};
Fences tukey_fences(double q1, double median, double q3) noexcept;
BoxPartial box_partial(std::span<const double> values, const Fences& f);
void merge_box(BoxPartial& into, BoxPartial&& other);
BoxStats finish_box(BoxPartial&& p, const Fences& f, std::size_t max_outliers, std::string label);
BoxStats box_stats(std::span<const double> values, std::size_t max_outliers = 100, std::string label = {});
BoxStats box_stats(const Column& col, std::size_t max_outliers = 100);
/// Finite values of a numerical column split by the category code of a
/// second column, in row order.
struct GroupedValues {
  std::vector<std::vector<double>> values;  // by code
  std::vector<std::int64_t> present;        // rows with the category, finite or not
};
GroupedValues grouped_values(const Chunk& num, const Chunk& cat, std::size_t categories);
void merge_grouped(GroupedValues& into, GroupedValues&& other);
GroupedValues grouped_values(const Column& num, const Column& cat);

/// One box per category of `group`: the top_k with the most finite values,
/// in label order.
BoxGroup finish_grouped_box(const GroupedValues& g, const Column& col, const Column& group, std::size_t max_outliers,
                            std::size_t top_k);
BoxGroup box_stats_grouped(const Column& col, const Column& group, std::size_t max_outliers = 100,
                           std::size_t top_k = 10);

// --- categorical counts -----------------------------------------------------

std::vector<std::int64_t> code_counts(const Chunk& chunk, std::size_t categories);
void merge_counts(std::vector<std::int64_t>& into, std::vector<std::int64_t>&& other);
/// Indices of the top_k largest counts; ties by label ascending.
std::vector<std::size_t> top_k_indices(std::span<const std::int64_t> counts, const std::vector<std::string>& labels,
                                       std::size_t top_k);
BarCounts bar_from_counts(std::string column, const std::vector<std::string>& labels,
                          std::span<const std::int64_t> counts, std::size_t top_k);
BarCounts bar_counts(const Column& col, std::size_t top_k);

// --- sampling ---------------------------------------------------------------

/// Deterministic per-row sampling key; the rows with the smallest keys form
/// the sample, so the sample does not depend on chunking.
std::uint64_t sample_key(std::uint64_t seed, std::uint64_t row) noexcept;

struct SampleEntry {
  std::uint64_t key;
  std::uint64_t row;
  double x, y;
};
/// Keeps the `cap` entries with the smallest (key, row).
void truncate_sample(std::vector<SampleEntry>& entries, std::size_t cap);
/// Finite values of a numerical column, at most `cap` of them, in row order.
std::vector<double> sample_values(const Column& col, std::size_t cap, std::uint64_t seed, bool* sampled = nullptr);

// --- correlation ------------------------------------------------------------

struct CoMoments {
  std::size_t n = 0;
  double mean_x = 0, mean_y = 0, m2x = 0, m2y = 0, cxy = 0;

  void add(double x, double y) noexcept;
  void merge(const CoMoments& other) noexcept;
  double pearson() const noexcept;
  double slope() const noexcept;
  double intercept() const noexcept;
};

/// Average ranks, 1-based, ties share the mean of their positions.
std::vector<double> midranks(std::span<const double> values);
double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);
/// Kendall tau-b in O(n log n) (Knight's algorithm).
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

/// Co-moments of every column pair (i < j, row-major upper triangle) over the
/// rows of one chunk where both values are finite.
std::vector<CoMoments> comoment_partial(const DataFrame& df, std::size_t chunk, std::span<const std::size_t> cols);
void merge_comoments(std::vector<CoMoments>& into, std::vector<CoMoments>&& other);
/// Columns among `cols` with fewer than two distinct finite values.
std::vector<std::size_t> constant_columns(const DataFrame& df, std::span<const std::size_t> cols);
CorrMatrix finish_pearson(const DataFrame& df, std::span<const std::size_t> cols, const std::vector<CoMoments>& pairs);
std::vector<std::size_t> numerical_columns(const DataFrame& df);

/// Numerical columns only; pairwise-complete finite rows per pair.
CorrMatrix corr_matrix(const DataFrame& df, std::string_view method, std::size_t kendall_cap = 10000,
                       std::uint64_t seed = 0);
/// Other columns ordered by |r| descending, ties by name. Throws UnknownColumn.
CorrRanking corr_rank(const CorrMatrix& m, std::string_view anchor);

// --- bivariate plots --------------------------------------------------------

/// Rows where both columns hold finite values, in row order.
struct PairSample {
  std::vector<double> x, y;
  std::vector<std::uint64_t> rows;
};
PairSample complete_pairs(const Chunk& x, const Chunk& y, std::uint64_t first_row);
void merge_pairs(PairSample& into, PairSample&& other);
PairSample complete_pairs(const Column& x, const Column& y);

/// Throws NoData on an empty sample.
ScatterPoints finish_scatter(const PairSample& p, std::string x_column, std::string y_column, std::size_t max_points,
                             std::uint64_t seed);
ScatterPoints scatter_sample(const Column& x, const Column& y, std::size_t max_points, std::uint64_t seed = 0);

struct HexLayout {
  double x_min, x_max, y_min, y_max;
  int gridsize;
  bool degenerate;
};
HexLayout hex_layout(double x_min, double x_max, double y_min, double y_max, int gridsize) noexcept;
/// Axial (q, r) of the pointy-top hexagon containing (x, y). Points on a
/// shared edge go to the lexicographically smaller (q, r).
std::pair<int, int> hex_of(const HexLayout& layout, double x, double y) noexcept;
HexbinGrid finish_hexbin(const HexLayout& layout, const std::map<std::pair<int, int>, std::int64_t>& counts,
                         std::string x_column, std::string y_column);
HexbinGrid finish_hexbin(const PairSample& p, std::string x_column, std::string y_column, int gridsize);
HexbinGrid hexbin(const Column& x, const Column& y, int gridsize);

/// Joint category counts, x-code major.
std::vector<std::int64_t> joint_counts(const Chunk& x, const Chunk& y, std::size_t nx, std::size_t ny);
CrossCounts finish_cross(const std::vector<std::int64_t>& joint, const Column& x, const Column& y, std::size_t top_k);
CrossCounts cross_counts(const Column& x, const Column& y, std::size_t top_k);

HistogramGroup finish_category_histograms(const GroupedValues& g, const Column& num, const Column& cat,
                                          std::size_t bins, std::size_t top_k);
HistogramGroup category_histograms(const Column& num, const Column& cat, std::size_t bins, std::size_t top_k);

/// Box plots of y within equal-width bins of x.
BoxGroup finish_binned_box(const PairSample& p, std::string x_column, std::string y_column, std::size_t bins,
                           std::size_t max_outliers);
BoxGroup binned_box(const Column& x, const Column& y, std::size_t bins, std::size_t max_outliers = 100);

// --- missing values ---------------------------------------------------------

/// Per-column missing counts plus pairwise co-missing counts (upper triangle).
struct MissingPartial {
  std::size_t rows = 0;
  std::vector<std::int64_t> missing;
  std::vector<std::int64_t> co_missing;  // m x m, row-major
};
MissingPartial missing_partial(const DataFrame& df, std::size_t chunk);
void merge_missing(MissingPartial& into, MissingPartial&& other);
MissingPartial missing_partial(const DataFrame& df);

MissingBar missing_bar(const DataFrame& df);
MissingBar finish_missing_bar(const MissingPartial& p, const DataFrame& df);

/// Effective segment count and the segment of a row.
std::size_t spectrum_segments(std::size_t rows, std::size_t segments) noexcept;
std::size_t spectrum_segment_of(std::size_t row, std::size_t rows, std::size_t segments) noexcept;
struct SpectrumPartial {
  std::vector<std::int64_t> counts;  // segments x columns
  std::vector<std::size_t> rows;
  std::vector<std::size_t> start;
};
SpectrumPartial spectrum_partial(const DataFrame& df, std::size_t chunk, std::size_t segments);
void merge_spectrum(SpectrumPartial& into, SpectrumPartial&& other);
MissingSpectrum finish_spectrum(const SpectrumPartial& p, const DataFrame& df);
MissingSpectrum missing_spectrum(const DataFrame& df, std::size_t segments);

NullityCorr finish_nullity_corr(const MissingPartial& p, const DataFrame& df);
NullityCorr nullity_corr(const DataFrame& df);

DendrogramTree finish_dendrogram(const MissingPartial& p, const DataFrame& df);
DendrogramTree nullity_dendrogram(const DataFrame& df);

/// Builds the before/after pair for `column` relative to `anchor`.
ImpactPair missing_impact_pair(const DataFrame& df, std::size_t anchor, std::size_t column, std::size_t bins,
                               std::size_t top_k, bool with_cdf);
/// One pair per non-anchor column, or only `target` when given.
std::vector<ImpactPair> missing_impact(const DataFrame& df, std::string_view anchor,
                                       std::optional<std::string_view> target = {}, std::size_t bins = 50,
                                       std::size_t top_k = 10);
Ecdf ecdf_on(std::span<const double> sorted, std::span<const double> grid);

// --- dataset ----------------------------------------------------------------

/// Hash of one row across all columns (missing-aware).
std::uint64_t row_hash(const DataFrame& df, std::size_t chunk, std::size_t row_in_chunk) noexcept;
bool rows_equal(const DataFrame& df, std::size_t row_a, std::size_t row_b);
std::size_t count_duplicates(const DataFrame& df, std::vector<std::pair<std::uint64_t, std::uint64_t>> hashed_rows);
/// Row hashes of one chunk paired with their global row indices.
std::vector<std::pair<std::uint64_t, std::uint64_t>> row_hashes(const DataFrame& df, std::size_t chunk);
DatasetStats finish_dataset_stats(const DataFrame& df, std::vector<std::pair<std::uint64_t, std::uint64_t>> hashed_rows);
DatasetStats dataset_stats(const DataFrame& df);

}  // namespace eda::analytics
