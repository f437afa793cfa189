#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>

#include "eda/analytics.hpp"
#include "eda/error.hpp"
#include "eda/graph.hpp"

namespace eda {

std::int64_t Histogram::total() const noexcept { return std::accumulate(counts.begin(), counts.end(), std::int64_t{0}); }

std::string_view intermediate_kind(const Intermediate& i) noexcept {
  static constexpr std::string_view names[] = {
      "column_stats", "histogram",  "kde_curve",       "qq_points",    "box_stats",     "box_group",   "bar_counts",
      "corr_matrix",  "corr_ranking", "scatter_points", "hexbin_grid", "missing_bar",   "missing_spectrum",
      "nullity_corr", "dendrogram", "impact_pair",     "dataset_stats", "cross_counts", "histogram_group"};
  static_assert(std::size(names) == std::variant_size_v<Intermediate>);
  return names[i.index()];
}

}  // namespace eda

namespace eda::analytics {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Moments of a run of finite values, computed two-pass for accuracy.
void fill_moments(StatsPartial& p, const std::vector<double>& finite) {
  p.count = finite.size();
  if (finite.empty()) return;
  double sum = 0;
  p.min = finite.front();
  p.max = finite.front();
  for (double v : finite) {
    sum += v;
    p.min = std::min(p.min, v);
    p.max = std::max(p.max, v);
  }
  p.mean = sum / static_cast<double>(finite.size());
  for (double v : finite) {
    const double d = v - p.mean, d2 = d * d;
    p.m2 += d2;
    p.m3 += d2 * d;
    p.m4 += d2 * d2;
  }
}

}  // namespace

// --- univariate statistics --------------------------------------------------

StatsPartial partial_stats(const Chunk& chunk, DType dtype, std::size_t categories) {
  StatsPartial p;
  p.n = chunk.row_count();
  if (dtype == DType::Categorical) {
    p.code_counts.assign(categories, 0);
    for (std::size_t i = 0; i < p.n; ++i) {
      if (!chunk.valid(i)) {
        ++p.n_missing;
        continue;
      }
      ++p.code_counts[static_cast<std::size_t>(chunk.codes[i])];
    }
    return p;
  }
  std::vector<double> finite, present;
  finite.reserve(p.n);
  present.reserve(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    if (!chunk.valid(i)) {
      ++p.n_missing;
      continue;
    }
    const double v = chunk.values[i];
    if (v == 0) ++p.n_zero;
    if (v < 0) ++p.n_negative;
    present.push_back(v + 0.0);
    if (std::isinf(v))
      ++p.n_infinite;
    else
      finite.push_back(v);
  }
  fill_moments(p, finite);
  std::sort(present.begin(), present.end());
  for (double v : present) {
    if (p.value_counts.empty() || p.value_counts.back().first != v)
      p.value_counts.emplace_back(v, 1);
    else
      ++p.value_counts.back().second;
  }
  return p;
}

void merge_stats(StatsPartial& a, StatsPartial&& b) {
  a.n += b.n;
  a.n_missing += b.n_missing;
  a.n_infinite += b.n_infinite;
  a.n_zero += b.n_zero;
  a.n_negative += b.n_negative;
  if (b.count > 0) {
    if (a.count == 0) {
      a.count = b.count;
      a.mean = b.mean;
      a.m2 = b.m2;
      a.m3 = b.m3;
      a.m4 = b.m4;
      a.min = b.min;
      a.max = b.max;
    } else {
      const double na = static_cast<double>(a.count), nb = static_cast<double>(b.count), n = na + nb;
      const double delta = b.mean - a.mean, d2 = delta * delta;
      const double m2 = a.m2 + b.m2 + d2 * na * nb / n;
      const double m3 = a.m3 + b.m3 + d2 * delta * na * nb * (na - nb) / (n * n) +
                        3.0 * delta * (na * b.m2 - nb * a.m2) / n;
      const double m4 = a.m4 + b.m4 + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                        6.0 * d2 * (na * na * b.m2 + nb * nb * a.m2) / (n * n) +
                        4.0 * delta * (na * b.m3 - nb * a.m3) / n;
      a.mean += delta * nb / n;
      a.m2 = m2;
      a.m3 = m3;
      a.m4 = m4;
      a.count += b.count;
      a.min = std::min(a.min, b.min);
      a.max = std::max(a.max, b.max);
    }
  }
  if (a.value_counts.empty()) {
    a.value_counts = std::move(b.value_counts);
  } else if (!b.value_counts.empty()) {
    std::vector<std::pair<double, std::int64_t>> merged;
    merged.reserve(a.value_counts.size() + b.value_counts.size());
    auto i = a.value_counts.begin(), j = b.value_counts.begin();
    while (i != a.value_counts.end() || j != b.value_counts.end()) {
      if (j == b.value_counts.end() || (i != a.value_counts.end() && i->first < j->first)) {
        merged.push_back(*i++);
      } else if (i == a.value_counts.end() || j->first < i->first) {
        merged.push_back(*j++);
      } else {
        merged.emplace_back(i->first, i->second + j->second);
        ++i, ++j;
      }
    }
    a.value_counts = std::move(merged);
  }
  if (a.code_counts.size() < b.code_counts.size()) a.code_counts.resize(b.code_counts.size(), 0);
  for (std::size_t i = 0; i < b.code_counts.size(); ++i) a.code_counts[i] += b.code_counts[i];
}

StatsPartial merge_stats(StatsPartial a, const StatsPartial& b) {
  StatsPartial copy = b;
  merge_stats(a, std::move(copy));
  return a;
}

StatsPartial column_partial(const Column& col) {
  std::vector<StatsPartial> parts;
  parts.reserve(col.chunks.size());
  for (const auto& c : col.chunks) parts.push_back(partial_stats(c, col.dtype, col.category_count()));
  return graph::tree_reduce(std::move(parts), [](StatsPartial& a, StatsPartial&& b) { merge_stats(a, std::move(b)); });
}

double sample_variance(const StatsPartial& p) noexcept {
  return p.count < 2 ? kNaN : std::max(0.0, p.m2 / static_cast<double>(p.count - 1));
}

double skewness(const StatsPartial& p) noexcept {
  const double n = static_cast<double>(p.count);
  if (p.count < 3 || p.m2 <= 0) return kNaN;
  const double g1 = (p.m3 / n) / std::pow(p.m2 / n, 1.5);
  return g1 * std::sqrt(n * (n - 1)) / (n - 2);
}

double excess_kurtosis(const StatsPartial& p) noexcept {
  const double n = static_cast<double>(p.count);
  if (p.count < 4 || p.m2 <= 0) return kNaN;
  const double g2 = (p.m4 / n) / ((p.m2 / n) * (p.m2 / n)) - 3.0;
  return ((n + 1) * g2 + 6) * (n - 1) / ((n - 2) * (n - 3));
}

ColumnStats finish_stats(const StatsPartial& p, const Column& col, std::span<const double> quantiles) {
  ColumnStats s;
  s.column = col.name;
  s.dtype = col.dtype;
  s.n = p.n;
  s.n_missing = p.n_missing;
  s.n_infinite = p.n_infinite;
  s.n_zero = p.n_zero;
  s.n_negative = p.n_negative;
  if (col.dtype == DType::Categorical) {
    s.n_distinct = static_cast<std::size_t>(
        std::count_if(p.code_counts.begin(), p.code_counts.end(), [](auto c) { return c > 0; }));
    s.min = s.max = s.mean = s.std = s.variance = s.skewness = s.kurtosis = kNaN;
    s.quantiles.fill(kNaN);
    const auto top = top_k_indices(p.code_counts, *col.dictionary, 1);
    if (!top.empty()) {
      s.top = col.label(static_cast<std::int32_t>(top.front()));
      s.top_count = p.code_counts[top.front()];
    }
    return s;
  }
  s.n_distinct = p.value_counts.size();
  if (p.count == 0) {
    s.min = s.max = s.mean = kNaN;
  } else {
    s.min = p.min;
    s.max = p.max;
    s.mean = p.mean;
  }
  s.variance = sample_variance(p);
  s.std = std::sqrt(s.variance);
  s.skewness = skewness(p);
  s.kurtosis = excess_kurtosis(p);
  s.quantiles.fill(kNaN);
  for (std::size_t i = 0; i < s.quantiles.size() && i < quantiles.size(); ++i) s.quantiles[i] = quantiles[i];
  return s;
}

ColumnStats column_stats(const Column& col) {
  const auto p = column_partial(col);
  std::vector<double> q;
  if (col.dtype == DType::Numerical && p.count > 0) q = quantiles(col, kStatsProbs);
  return finish_stats(p, col, q);
}

// --- order statistics -------------------------------------------------------

std::vector<double> sorted_finite(const Chunk& chunk) {
  std::vector<double> out;
  out.reserve(chunk.values.size());
  for (std::size_t i = 0; i < chunk.row_count(); ++i)
    if (chunk.valid(i) && std::isfinite(chunk.values[i])) out.push_back(chunk.values[i]);
  std::sort(out.begin(), out.end());
  return out;
}

void merge_sorted(std::vector<double>& into, std::vector<double>&& other) {
  if (other.empty()) return;
  if (into.empty()) {
    into = std::move(other);
    return;
  }
  const auto mid = static_cast<std::ptrdiff_t>(into.size());
  into.insert(into.end(), other.begin(), other.end());
  std::inplace_merge(into.begin(), into.begin() + mid, into.end());
}

std::vector<double> sorted_finite(const Column& col) {
  std::vector<std::vector<double>> parts;
  for (const auto& c : col.chunks) parts.push_back(sorted_finite(c));
  return graph::tree_reduce(std::move(parts), [](auto& a, auto&& b) { merge_sorted(a, std::move(b)); });
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw NoData("quantile of an empty sample");
  if (p < 0 || p > 1) throw std::invalid_argument("quantile probability outside [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

std::vector<double> quantiles(const Column& col, std::span<const double> probs) {
  if (col.dtype != DType::Numerical) throw UnsupportedCombination("quantiles need a numerical column");
  const auto sorted = sorted_finite(col);
  if (sorted.empty()) throw NoData("column '" + col.name + "' has no finite values");
  std::vector<double> out;
  out.reserve(probs.size());
  for (double p : probs) out.push_back(quantile_sorted(sorted, p));
  return out;
}

// --- categorical counts -----------------------------------------------------

std::vector<std::int64_t> code_counts(const Chunk& chunk, std::size_t categories) {
  std::vector<std::int64_t> out(categories, 0);
  for (std::size_t i = 0; i < chunk.row_count(); ++i)
    if (chunk.valid(i)) ++out[static_cast<std::size_t>(chunk.codes[i])];
  return out;
}

void merge_counts(std::vector<std::int64_t>& into, std::vector<std::int64_t>&& other) {
  if (into.size() < other.size()) into.resize(other.size(), 0);
  for (std::size_t i = 0; i < other.size(); ++i) into[i] += other[i];
}

std::vector<std::size_t> top_k_indices(std::span<const std::int64_t> counts, const std::vector<std::string>& labels,
                                       std::size_t top_k) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] > 0) idx.push_back(i);
  const auto better = [&](std::size_t a, std::size_t b) {
    if (counts[a] != counts[b]) return counts[a] > counts[b];
    return labels[a] < labels[b];
  };
  if (idx.size() > top_k) {
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(top_k), idx.end(), better);
    idx.resize(top_k);
  } else {
    std::sort(idx.begin(), idx.end(), better);
  }
  return idx;
}

BarCounts bar_from_counts(std::string column, const std::vector<std::string>& labels,
                          std::span<const std::int64_t> counts, std::size_t top_k) {
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
  BarCounts out;
  out.column = std::move(column);
  for (auto c : counts) {
    out.total += c;
    if (c > 0) ++out.distinct;
  }
  std::int64_t shown = 0;
  for (auto i : top_k_indices(counts, labels, top_k)) {
    out.labels.push_back(labels[i]);
    out.counts.push_back(counts[i]);
    shown += counts[i];
  }
  out.other = out.total - shown;
  return out;
}

BarCounts bar_counts(const Column& col, std::size_t top_k) {
  if (col.dtype != DType::Categorical) throw UnsupportedCombination("bar counts need a categorical column");
  std::vector<std::int64_t> counts(col.category_count(), 0);
  for (const auto& c : col.chunks) merge_counts(counts, code_counts(c, col.category_count()));
  return bar_from_counts(col.name, *col.dictionary, counts, top_k);
}

// --- sampling ---------------------------------------------------------------

std::uint64_t sample_key(std::uint64_t seed, std::uint64_t row) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(row + 0x632be59bd9b4e019ULL));
}

void truncate_sample(std::vector<SampleEntry>& entries, std::size_t cap) {
  if (entries.size() <= cap) return;
  const auto less = [](const SampleEntry& a, const SampleEntry& b) {
    return a.key != b.key ? a.key < b.key : a.row < b.row;
  };
  std::nth_element(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(cap), entries.end(), less);
  entries.resize(cap);
}

std::vector<double> sample_values(const Column& col, std::size_t cap, std::uint64_t seed, bool* sampled) {
  std::vector<SampleEntry> entries;
  std::uint64_t row = 0;
  for (const auto& c : col.chunks)
    for (std::size_t i = 0; i < c.row_count(); ++i, ++row)
      if (c.valid(i) && std::isfinite(c.values[i])) entries.push_back({sample_key(seed, row), row, c.values[i], 0});
  if (sampled) *sampled = entries.size() > cap;
  truncate_sample(entries, cap);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.x);
  return out;
}

// --- dataset ----------------------------------------------------------------

std::uint64_t row_hash(const DataFrame& df, std::size_t chunk, std::size_t i) noexcept {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (const auto& col : df.columns()) {
    const auto& c = col.chunks[chunk];
    std::uint64_t cell;
    if (!c.valid(i)) {
      cell = 0x6d697373696e67ULL;  // "missing"
    } else if (col.dtype == DType::Numerical) {
      const double v = c.values[i] + 0.0;
      std::memcpy(&cell, &v, sizeof cell);
    } else {
      cell = static_cast<std::uint64_t>(c.codes[i]) + 1;
    }
    h = splitmix64(h ^ cell);
  }
  return h;
}

namespace {

std::pair<std::size_t, std::size_t> locate(const DataFrame& df, std::size_t row) {
  const auto& counts = df.meta().chunk_row_counts;
  std::size_t lo = 0, hi = counts.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (df.chunk_offset(mid) <= row)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, row - df.chunk_offset(lo)};
}

}  // namespace

bool rows_equal(const DataFrame& df, std::size_t row_a, std::size_t row_b) {
  const auto [ca, ia] = locate(df, row_a);
  const auto [cb, ib] = locate(df, row_b);
  for (const auto& col : df.columns()) {
    const auto& a = col.chunks[ca];
    const auto& b = col.chunks[cb];
    if (a.valid(ia) != b.valid(ib)) return false;
    if (!a.valid(ia)) continue;
    if (col.dtype == DType::Numerical ? a.values[ia] != b.values[ib] : a.codes[ia] != b.codes[ib]) return false;
  }
  return true;
}

std::size_t count_duplicates(const DataFrame& df, std::vector<std::pair<std::uint64_t, std::uint64_t>> hashed) {
  std::sort(hashed.begin(), hashed.end());
  std::size_t dups = 0;
  for (std::size_t i = 0; i < hashed.size();) {
    std::size_t j = i;
    while (j < hashed.size() && hashed[j].first == hashed[i].first) ++j;
    std::vector<std::uint64_t> reps;
    for (std::size_t k = i; k < j; ++k) {
      const auto row = hashed[k].second;
      if (std::any_of(reps.begin(), reps.end(), [&](auto r) { return rows_equal(df, r, row); }))
        ++dups;
      else
        reps.push_back(row);
    }
    i = j;
  }
  return dups;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> row_hashes(const DataFrame& df, std::size_t chunk) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  const std::size_t rows = df.meta().chunk_row_counts[chunk], offset = df.chunk_offset(chunk);
  out.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) out.emplace_back(row_hash(df, chunk, i), offset + i);
  return out;
}

DatasetStats finish_dataset_stats(const DataFrame& df,
                                  std::vector<std::pair<std::uint64_t, std::uint64_t>> hashed_rows) {
  DatasetStats s;
  s.rows = df.rows();
  s.columns = df.width();
  for (const auto& col : df.columns()) {
    (col.dtype == DType::Numerical ? s.numerical : s.categorical) += 1;
    s.missing_cells += col.missing_count();
    s.dtypes.emplace_back(col.name, col.dtype);
  }
  const double cells = static_cast<double>(s.rows) * static_cast<double>(s.columns);
  s.missing_pct = cells > 0 ? 100.0 * static_cast<double>(s.missing_cells) / cells : 0.0;
  s.duplicate_rows = count_duplicates(df, std::move(hashed_rows));
  return s;
}

DatasetStats dataset_stats(const DataFrame& df) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> hashed;
  hashed.reserve(df.rows());
  for (std::size_t c = 0; c < df.chunk_count(); ++c) {
    auto part = row_hashes(df, c);
    hashed.insert(hashed.end(), part.begin(), part.end());
  }
  return finish_dataset_stats(df, std::move(hashed));
}

}  // namespace eda::analytics
