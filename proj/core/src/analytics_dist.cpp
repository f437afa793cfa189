#include <algorithm>
#include <cmath>
#include <numbers>

#include "eda/analytics.hpp"
#include "eda/error.hpp"
#include "eda/special.hpp"

namespace eda::analytics {
namespace {

std::pair<double, double> finite_range(const Column& col) {
  bool any = false;
  double lo = 0, hi = 0;
  for (const auto& c : col.chunks)
    for (std::size_t i = 0; i < c.row_count(); ++i) {
      if (!c.valid(i) || !std::isfinite(c.values[i])) continue;
      const double v = c.values[i];
      if (!any) {
        lo = hi = v;
        any = true;
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (!any) throw NoData("column '" + col.name + "' has no finite values");
  return {lo, hi};
}

void require_numeric(const Column& col) {
  if (col.dtype != DType::Numerical)
    throw UnsupportedCombination("column '" + col.name + "' is not numerical");
}

}  // namespace

// --- histogram --------------------------------------------------------------

std::vector<double> uniform_edges(double lo, double hi, std::size_t bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("invalid histogram range");
  if (lo == hi) return {lo - 0.5, lo + 0.5};
  std::vector<double> edges(bins + 1);
  const double width = hi - lo;
  for (std::size_t i = 0; i <= bins; ++i)
    edges[i] = lo + width * static_cast<double>(i) / static_cast<double>(bins);
  edges[bins] = hi;
  return edges;
}

std::optional<std::size_t> bin_index(double x, std::span<const double> edges) noexcept {
  if (edges.size() < 2 || !(x >= edges.front()) || !(x <= edges.back())) return std::nullopt;
  const std::size_t nb = edges.size() - 1;
  const double pos = (x - edges.front()) / (edges.back() - edges.front()) * static_cast<double>(nb);
  auto idx = std::min(nb - 1, static_cast<std::size_t>(std::max(0.0, pos)));
  while (idx > 0 && x < edges[idx]) --idx;
  while (idx + 1 < nb && x >= edges[idx + 1]) ++idx;
  return idx;
}

std::vector<std::int64_t> histogram_partial(const Chunk& chunk, std::span<const double> edges) {
  std::vector<std::int64_t> counts(edges.size() - 1, 0);
  for (std::size_t i = 0; i < chunk.row_count(); ++i) {
    if (!chunk.valid(i)) continue;
    if (const auto b = bin_index(chunk.values[i], edges)) ++counts[*b];
  }
  return counts;
}

Histogram histogram(const Column& col, std::size_t bins, std::optional<std::pair<double, double>> range) {
  require_numeric(col);
  const auto [lo, hi] = range ? *range : finite_range(col);
  Histogram h;
  h.column = col.name;
  h.edges = uniform_edges(lo, hi, bins);
  h.counts.assign(h.edges.size() - 1, 0);
  for (const auto& c : col.chunks) merge_counts(h.counts, histogram_partial(c, h.edges));
  return h;
}

// --- density / normal plots -------------------------------------------------

double silverman_bandwidth(double sd, double iqr, std::size_t n) noexcept {
  const double alt = iqr / 1.34;
  double spread = std::min(sd, alt);
  if (!(spread > 0)) spread = sd > 0 ? sd : alt;
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

KdeCurve kde(std::span<const double> values, std::size_t grid_points) {
  if (values.size() < 2) throw NoData("density estimate needs at least two finite values");
  if (grid_points < 2) throw std::invalid_argument("density grid needs at least two points");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double mean = 0;
  for (double v : sorted) mean += v;
  mean /= n;
  double ss = 0;
  for (double v : sorted) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1));
  if (!(sd > 0)) throw DegenerateSpread("density estimate of a constant sample");
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);

  KdeCurve k;
  k.bandwidth = silverman_bandwidth(sd, iqr, sorted.size());
  k.n_used = k.n_total = sorted.size();
  const double lo = sorted.front() - 3 * k.bandwidth, hi = sorted.back() + 3 * k.bandwidth;
  const double norm = 1.0 / (n * k.bandwidth * std::sqrt(2 * std::numbers::pi));
  k.x.resize(grid_points);
  k.density.resize(grid_points);
  for (std::size_t g = 0; g < grid_points; ++g) {
    const double x = lo + (hi - lo) * static_cast<double>(g) / static_cast<double>(grid_points - 1);
    double sum = 0;
    for (double v : sorted) {
      const double z = (x - v) / k.bandwidth;
      sum += std::exp(-0.5 * z * z);
    }
    k.x[g] = x;
    k.density[g] = sum * norm;
  }
  return k;
}

KdeCurve kde(const Column& col, std::size_t grid_points, std::size_t sample_cap, std::uint64_t seed) {
  require_numeric(col);
  bool sampled = false;
  const auto values = sample_values(col, sample_cap, seed, &sampled);
  std::size_t total = 0;
  for (const auto& c : col.chunks)
    for (std::size_t i = 0; i < c.row_count(); ++i) total += c.valid(i) && std::isfinite(c.values[i]);
  auto k = kde(values, grid_points);
  k.column = col.name;
  k.n_total = total;
  k.sampled = sampled;
  return k;
}

std::vector<double> qq_probs(std::size_t n_points) {
  std::vector<double> p(n_points);
  for (std::size_t i = 0; i < n_points; ++i)
    p[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n_points);
  return p;
}

QQPoints qq_normal(std::span<const double> sorted, std::size_t n_points) {
  if (sorted.size() < 2) throw NoData("normal Q-Q plot needs at least two finite values");
  if (n_points < 1) throw std::invalid_argument("normal Q-Q plot needs at least one point");
  const double n = static_cast<double>(sorted.size());
  double mean = 0;
  for (double v : sorted) mean += v;
  mean /= n;
  double ss = 0;
  for (double v : sorted) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1));
  if (!(sd > 0)) throw DegenerateSpread("normal Q-Q plot of a constant sample");
  QQPoints q;
  q.mean = mean;
  q.std = sd;
  for (double p : qq_probs(n_points)) {
    q.theoretical.push_back(mean + sd * special::normal_quantile(p));
    q.sample.push_back(quantile_sorted(sorted, p));
  }
  return q;
}

QQPoints qq_normal(const Column& col, std::size_t n_points) {
  require_numeric(col);
  auto q = qq_normal(sorted_finite(col), n_points);
  q.column = col.name;
  return q;
}

// --- box plot ---------------------------------------------------------------

Fences tukey_fences(double q1, double median, double q3) noexcept {
  const double iqr = q3 - q1;
  return {q1, median, q3, q1 - 1.5 * iqr, q3 + 1.5 * iqr};
}

BoxPartial box_partial(std::span<const double> values, const Fences& f) {
  BoxPartial p;
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    ++p.n;
    if (v < f.lower || v > f.upper) {
      p.outliers.push_back(v);
    } else if (!p.any_inside) {
      p.lo = p.hi = v;
      p.any_inside = true;
    } else {
      p.lo = std::min(p.lo, v);
      p.hi = std::max(p.hi, v);
    }
  }
  return p;
}

void merge_box(BoxPartial& into, BoxPartial&& other) {
  into.n += other.n;
  if (other.any_inside) {
    if (!into.any_inside) {
      into.lo = other.lo;
      into.hi = other.hi;
      into.any_inside = true;
    } else {
      into.lo = std::min(into.lo, other.lo);
      into.hi = std::max(into.hi, other.hi);
    }
  }
  into.outliers.insert(into.outliers.end(), other.outliers.begin(), other.outliers.end());
}

BoxStats finish_box(BoxPartial&& p, const Fences& f, std::size_t max_outliers, std::string label) {
  BoxStats b;
  b.label = std::move(label);
  b.n = p.n;
  b.q1 = f.q1;
  b.median = f.median;
  b.q3 = f.q3;
  b.lower_fence = f.lower;
  b.upper_fence = f.upper;
  b.lower_whisker = p.any_inside ? p.lo : f.q1;
  b.upper_whisker = p.any_inside ? p.hi : f.q3;
  std::sort(p.outliers.begin(), p.outliers.end());
  b.n_outliers = p.outliers.size();
  if (p.outliers.size() > max_outliers) p.outliers.resize(max_outliers);
  b.outliers = std::move(p.outliers);
  return b;
}

BoxStats box_stats(std::span<const double> values, std::size_t max_outliers, std::string label) {
  std::vector<double> sorted;
  sorted.reserve(values.size());
  for (double v : values)
    if (std::isfinite(v)) sorted.push_back(v);
  if (sorted.empty()) throw NoData("box plot of an empty sample");
  std::sort(sorted.begin(), sorted.end());
  const auto f =
      tukey_fences(quantile_sorted(sorted, 0.25), quantile_sorted(sorted, 0.5), quantile_sorted(sorted, 0.75));
  return finish_box(box_partial(sorted, f), f, max_outliers, std::move(label));
}

BoxStats box_stats(const Column& col, std::size_t max_outliers) {
  require_numeric(col);
  return box_stats(sorted_finite(col), max_outliers, col.name);
}

GroupedValues grouped_values(const Chunk& num, const Chunk& cat, std::size_t categories) {
  GroupedValues g;
  g.values.resize(categories);
  g.present.assign(categories, 0);
  for (std::size_t i = 0; i < num.row_count(); ++i) {
    if (!cat.valid(i)) continue;
    const auto code = static_cast<std::size_t>(cat.codes[i]);
    ++g.present[code];
    if (num.valid(i) && std::isfinite(num.values[i])) g.values[code].push_back(num.values[i]);
  }
  return g;
}

void merge_grouped(GroupedValues& into, GroupedValues&& other) {
  if (into.values.size() < other.values.size()) {
    into.values.resize(other.values.size());
    into.present.resize(other.values.size(), 0);
  }
  for (std::size_t k = 0; k < other.values.size(); ++k) {
    into.values[k].insert(into.values[k].end(), other.values[k].begin(), other.values[k].end());
    into.present[k] += other.present[k];
  }
}

GroupedValues grouped_values(const Column& num, const Column& cat) {
  require_numeric(num);
  if (cat.dtype != DType::Categorical) throw UnsupportedCombination("column '" + cat.name + "' is not categorical");
  GroupedValues g;
  for (std::size_t c = 0; c < num.chunks.size(); ++c)
    merge_grouped(g, grouped_values(num.chunks[c], cat.chunks[c], cat.category_count()));
  return g;
}

BoxGroup finish_grouped_box(const GroupedValues& g, const Column& col, const Column& group, std::size_t max_outliers,
                            std::size_t top_k) {
  std::vector<std::int64_t> counts(g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) counts[i] = static_cast<std::int64_t>(g.values[i].size());
  BoxGroup out;
  out.column = col.name;
  out.group_column = group.name;
  auto selected = top_k_indices(counts, *group.dictionary, top_k);
  if (selected.empty()) throw NoData("no complete (" + col.name + ", " + group.name + ") rows");
  std::sort(selected.begin(), selected.end(),
            [&](auto a, auto b) { return (*group.dictionary)[a] < (*group.dictionary)[b]; });
  for (auto i : selected)
    out.boxes.push_back(box_stats(g.values[i], max_outliers, group.label(static_cast<std::int32_t>(i))));
  for (std::size_t i = 0; i < g.present.size(); ++i)
    if (g.present[i] > 0 && counts[i] == 0) out.omitted.push_back(group.label(static_cast<std::int32_t>(i)));
  std::sort(out.omitted.begin(), out.omitted.end());
  return out;
}

BoxGroup box_stats_grouped(const Column& col, const Column& group, std::size_t max_outliers, std::size_t top_k) {
  return finish_grouped_box(grouped_values(col, group), col, group, max_outliers, top_k);
}

}  // namespace eda::analytics
