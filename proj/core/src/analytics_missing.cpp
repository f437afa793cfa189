#include <algorithm>
#include <cmath>
#include <limits>

#include "eda/analytics.hpp"
#include "eda/error.hpp"
#include "eda/graph.hpp"
#include "eda/special.hpp"

namespace eda::analytics {
namespace {

constexpr std::size_t kMaxCdfPoints = 512;

double pct(std::int64_t part, std::size_t whole) noexcept {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

MissingPartial missing_partial(const DataFrame& df, std::size_t chunk) {
  const std::size_t m = df.width();
  MissingPartial p;
  p.rows = df.meta().chunk_row_counts[chunk];
  p.missing.assign(m, 0);
  p.co_missing.assign(m * m, 0);
  std::vector<const Chunk*> chunks;
  for (const auto& col : df.columns()) chunks.push_back(&col.chunks[chunk]);
  std::vector<std::size_t> gaps;
  for (std::size_t i = 0; i < p.rows; ++i) {
    gaps.clear();
    for (std::size_t j = 0; j < m; ++j)
      if (!chunks[j]->valid(i)) gaps.push_back(j);
    for (std::size_t a = 0; a < gaps.size(); ++a) {
      ++p.missing[gaps[a]];
      for (std::size_t b = a; b < gaps.size(); ++b) ++p.co_missing[gaps[a] * m + gaps[b]];
    }
  }
  return p;
}

void merge_missing(MissingPartial& into, MissingPartial&& other) {
  if (into.missing.empty() && into.rows == 0) {
    into = std::move(other);
    return;
  }
  into.rows += other.rows;
  for (std::size_t i = 0; i < into.missing.size(); ++i) into.missing[i] += other.missing[i];
  for (std::size_t i = 0; i < into.co_missing.size(); ++i) into.co_missing[i] += other.co_missing[i];
}

MissingPartial missing_partial(const DataFrame& df) {
  std::vector<MissingPartial> parts;
  for (std::size_t c = 0; c < df.chunk_count(); ++c) parts.push_back(missing_partial(df, c));
  return graph::tree_reduce(std::move(parts), [](auto& a, auto&& b) { merge_missing(a, std::move(b)); });
}

MissingBar finish_missing_bar(const MissingPartial& p, const DataFrame& df) {
  MissingBar bar;
  bar.columns = df.names();
  bar.rows = df.rows();
  bar.missing = p.missing;
  bar.missing.resize(df.width(), 0);
  for (auto c : bar.missing) bar.pct.push_back(pct(c, bar.rows));
  return bar;
}

MissingBar missing_bar(const DataFrame& df) { return finish_missing_bar(missing_partial(df), df); }

std::size_t spectrum_segments(std::size_t rows, std::size_t segments) noexcept { return std::min(rows, segments); }

std::size_t spectrum_segment_of(std::size_t row, std::size_t rows, std::size_t segments) noexcept {
  const std::size_t s = spectrum_segments(rows, segments);
  return ((row + 1) * s + rows - 1) / rows - 1;
}

SpectrumPartial spectrum_partial(const DataFrame& df, std::size_t chunk, std::size_t segments) {
  if (segments < 1) throw std::invalid_argument("spectrum needs at least one segment");
  const std::size_t n = df.rows(), m = df.width();
  const std::size_t s = spectrum_segments(n, segments);
  SpectrumPartial p;
  p.counts.assign(s * m, 0);
  p.rows.assign(s, 0);
  p.start.assign(s, std::numeric_limits<std::size_t>::max());
  const std::size_t offset = df.chunk_offset(chunk);
  const std::size_t rows = df.meta().chunk_row_counts[chunk];
  std::vector<const Chunk*> chunks;
  for (const auto& col : df.columns()) chunks.push_back(&col.chunks[chunk]);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t seg = spectrum_segment_of(offset + i, n, segments);
    if (p.rows[seg]++ == 0) p.start[seg] = offset + i;
    for (std::size_t j = 0; j < m; ++j)
      if (!chunks[j]->valid(i)) ++p.counts[seg * m + j];
  }
  return p;
}

void merge_spectrum(SpectrumPartial& into, SpectrumPartial&& other) {
  for (std::size_t i = 0; i < into.counts.size(); ++i) into.counts[i] += other.counts[i];
  for (std::size_t k = 0; k < into.rows.size(); ++k) {
    into.rows[k] += other.rows[k];
    into.start[k] = std::min(into.start[k], other.start[k]);
  }
}

MissingSpectrum finish_spectrum(const SpectrumPartial& p, const DataFrame& df) {
  const std::size_t m = df.width(), s = p.rows.size();
  MissingSpectrum out;
  out.columns = df.names();
  out.segment_start = p.start;
  out.segment_rows = p.rows;
  out.fractions.resize(s * m);
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t j = 0; j < m; ++j)
      out.fractions[k * m + j] = static_cast<double>(p.counts[k * m + j]) / static_cast<double>(p.rows[k]);
  return out;
}

MissingSpectrum missing_spectrum(const DataFrame& df, std::size_t segments) {
  std::vector<SpectrumPartial> parts;
  for (std::size_t c = 0; c < df.chunk_count(); ++c) parts.push_back(spectrum_partial(df, c, segments));
  return finish_spectrum(
      graph::tree_reduce(std::move(parts), [](auto& a, auto&& b) { merge_spectrum(a, std::move(b)); }), df);
}

NullityCorr finish_nullity_corr(const MissingPartial& p, const DataFrame& df) {
  const std::size_t m = df.width();
  const auto n = static_cast<std::int64_t>(p.rows);
  NullityCorr out;
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < m; ++j) {
    if (p.missing[j] > 0 && p.missing[j] < n)
      kept.push_back(j);
    else
      out.excluded.push_back(df.column(j).name);
  }
  if (kept.size() < 2) throw TooFewColumns("nullity correlation needs two partially missing columns");
  for (auto j : kept) out.columns.push_back(df.column(j).name);
  const std::size_t k = kept.size();
  out.values.assign(k * k, 1.0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      const auto i = kept[a], j = kept[b];
      const long double ai = p.missing[i], aj = p.missing[j], cij = p.co_missing[i * m + j];
      const long double nn = static_cast<long double>(n);
      const long double num = nn * cij - ai * aj;
      const long double den = std::sqrt(ai * (nn - ai)) * std::sqrt(aj * (nn - aj));
      const double r = std::clamp(static_cast<double>(num / den), -1.0, 1.0);
      out.values[a * k + b] = out.values[b * k + a] = r;
    }
  return out;
}

NullityCorr nullity_corr(const DataFrame& df) { return finish_nullity_corr(missing_partial(df), df); }

DendrogramTree finish_dendrogram(const MissingPartial& p, const DataFrame& df) {
  const std::size_t m = df.width();
  if (m < 2) throw TooFewColumns("dendrogram needs at least two columns");
  DendrogramTree tree;
  tree.leaves = df.names();
  // Active clusters: node id, size, distances to every other active cluster.
  std::vector<std::size_t> id(m), size(m, 1);
  std::vector<std::vector<double>> d(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    id[i] = i;
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto sq = static_cast<double>(p.missing[i] + p.missing[j] - 2 * p.co_missing[i * m + j]);
      d[i][j] = d[j][i] = std::sqrt(std::max(0.0, sq));
    }
  }
  std::vector<bool> alive(m, true);
  for (std::size_t step = 0; step + 1 < m; ++step) {
    std::size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < m; ++j)
        if (alive[j] && d[i][j] < best) {
          best = d[i][j];
          bi = i;
          bj = j;
        }
    }
    DendrogramTree::Merge merge;
    merge.left = std::min(id[bi], id[bj]);
    merge.right = std::max(id[bi], id[bj]);
    merge.height = best;
    merge.size = size[bi] + size[bj];
    for (std::size_t k = 0; k < m; ++k) {
      if (!alive[k] || k == bi || k == bj) continue;
      const double v = (static_cast<double>(size[bi]) * d[bi][k] + static_cast<double>(size[bj]) * d[bj][k]) /
                       static_cast<double>(merge.size);
      d[bi][k] = d[k][bi] = v;
    }
    alive[bj] = false;
    size[bi] = merge.size;
    id[bi] = m + tree.merges.size();
    tree.merges.push_back(merge);
  }
  // Left-to-right leaf order of the final tree.
  std::vector<std::size_t> stack{m + tree.merges.size() - 1};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    if (node < m) {
      tree.leaf_order.push_back(node);
      continue;
    }
    const auto& mg = tree.merges[node - m];
    stack.push_back(mg.right);
    stack.push_back(mg.left);
  }
  return tree;
}

DendrogramTree nullity_dendrogram(const DataFrame& df) { return finish_dendrogram(missing_partial(df), df); }

Ecdf ecdf_on(std::span<const double> sorted, std::span<const double> grid) {
  Ecdf e;
  e.x.assign(grid.begin(), grid.end());
  const double n = static_cast<double>(sorted.size());
  for (double g : grid) {
    const auto k = std::upper_bound(sorted.begin(), sorted.end(), g) - sorted.begin();
    e.p.push_back(sorted.empty() ? 0.0 : static_cast<double>(k) / n);
  }
  return e;
}

ImpactPair missing_impact_pair(const DataFrame& df, std::size_t anchor, std::size_t column, std::size_t bins,
                               std::size_t top_k, bool with_cdf) {
  const auto& a = df.column(anchor);
  const auto& col = df.column(column);
  ImpactPair pair;
  pair.anchor = a.name;
  pair.column = col.name;
  pair.dtype = col.dtype;
  pair.anchor_fully_observed = a.missing_count() == 0;

  if (col.dtype == DType::Numerical) {
    std::vector<double> before, after;
    for (std::size_t c = 0; c < col.chunks.size(); ++c) {
      const auto& cc = col.chunks[c];
      const auto& ac = a.chunks[c];
      for (std::size_t i = 0; i < cc.row_count(); ++i) {
        if (!cc.valid(i) || !std::isfinite(cc.values[i])) continue;
        before.push_back(cc.values[i]);
        if (ac.valid(i)) after.push_back(cc.values[i]);
      }
    }
    if (before.empty()) throw NoData("column '" + col.name + "' has no finite values");
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    pair.before_n = before.size();
    pair.after_n = after.size();
    const auto edges = uniform_edges(before.front(), before.back(), bins);
    const auto hist = [&](const std::vector<double>& v) {
      Histogram h;
      h.column = col.name;
      h.edges = edges;
      h.counts.assign(edges.size() - 1, 0);
      for (double x : v)
        if (const auto b = bin_index(x, edges)) ++h.counts[*b];
      return h;
    };
    pair.before_hist = hist(before);
    pair.after_hist = hist(after);
    if (!after.empty()) pair.ks_distance = special::ks_statistic(before, after);
    if (with_cdf) {
      std::vector<double> grid;
      std::unique_copy(before.begin(), before.end(), std::back_inserter(grid));
      if (grid.size() > kMaxCdfPoints) {
        std::vector<double> thinned;
        for (std::size_t i = 0; i < kMaxCdfPoints; ++i)
          thinned.push_back(
              quantile_sorted(before, static_cast<double>(i) / static_cast<double>(kMaxCdfPoints - 1)));
        grid = std::move(thinned);
      }
      pair.before_cdf = ecdf_on(before, grid);
      pair.after_cdf = ecdf_on(after, grid);
    }
    return pair;
  }

  std::vector<std::int64_t> before(col.category_count(), 0), after(col.category_count(), 0);
  for (std::size_t c = 0; c < col.chunks.size(); ++c) {
    const auto& cc = col.chunks[c];
    const auto& ac = a.chunks[c];
    for (std::size_t i = 0; i < cc.row_count(); ++i) {
      if (!cc.valid(i)) continue;
      const auto code = static_cast<std::size_t>(cc.codes[i]);
      ++before[code];
      if (ac.valid(i)) ++after[code];
    }
  }
  auto bars_before = bar_from_counts(col.name, *col.dictionary, before, top_k);
  BarCounts bars_after;
  bars_after.column = col.name;
  bars_after.labels = bars_before.labels;
  std::int64_t shown = 0;
  for (const auto& label : bars_before.labels) {
    const auto code = static_cast<std::size_t>(
        std::find(col.dictionary->begin(), col.dictionary->end(), label) - col.dictionary->begin());
    bars_after.counts.push_back(after[code]);
    shown += after[code];
  }
  for (auto c : after) {
    bars_after.total += c;
    if (c > 0) ++bars_after.distinct;
  }
  bars_after.other = bars_after.total - shown;
  pair.before_n = static_cast<std::size_t>(bars_before.total);
  pair.after_n = static_cast<std::size_t>(bars_after.total);
  // Largest gap between the two discrete CDFs over all categories.
  if (bars_before.total > 0 && bars_after.total > 0) {
    double cb = 0, ca = 0, gap = 0;
    for (std::size_t k = 0; k < before.size(); ++k) {
      cb += static_cast<double>(before[k]) / static_cast<double>(bars_before.total);
      ca += static_cast<double>(after[k]) / static_cast<double>(bars_after.total);
      gap = std::max(gap, std::abs(cb - ca));
    }
    pair.ks_distance = gap;
  }
  pair.before_bars = std::move(bars_before);
  pair.after_bars = std::move(bars_after);
  return pair;
}

std::vector<ImpactPair> missing_impact(const DataFrame& df, std::string_view anchor,
                                       std::optional<std::string_view> target, std::size_t bins,
                                       std::size_t top_k) {
  const std::size_t a = df.index_of(anchor);
  std::vector<ImpactPair> out;
  if (target) {
    const std::size_t t = df.index_of(*target);
    out.push_back(missing_impact_pair(df, a, t, bins, top_k, df.column(t).dtype == DType::Numerical));
    return out;
  }
  for (std::size_t j = 0; j < df.width(); ++j) {
    if (j == a) continue;
    try {
      out.push_back(missing_impact_pair(df, a, j, bins, top_k, false));
    } catch (const NoData&) {
      // A column with nothing to compare contributes no pair.
    }
  }
  return out;
}

}  // namespace eda::analytics
