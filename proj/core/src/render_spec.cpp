#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "eda/error.hpp"
#include "eda/render.hpp"
#include "render_util.hpp"

namespace eda::render {
namespace {

using K = ChartKind;

Axis linear_axis(std::string label, double lo, double hi) {
  Axis a;
  a.label = std::move(label);
  a.scale = "linear";
  a.ticks = nice_ticks(lo, hi);
  if (!a.ticks.empty()) {
    a.min = a.ticks.front().value;
    a.max = a.ticks.back().value;
  }
  return a;
}

Axis band_axis(std::string label, std::vector<std::string> categories) {
  Axis a;
  a.label = std::move(label);
  a.scale = "band";
  a.categories = std::move(categories);
  a.min = 0;
  a.max = static_cast<double>(a.categories.size());
  return a;
}

// Finite extent of several arrays; {0, 1} when there is none.
std::pair<double, double> extent(std::initializer_list<const std::vector<double>*> arrays) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto* a : arrays)
    for (double v : *a)
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
  if (lo > hi) return {0, 1};
  return {lo, hi};
}

std::string join(const std::vector<std::string>& items, std::string_view sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? std::string(sep) : "") + items[i];
  return out;
}

bool flagged(std::span<const Insight> insights, InsightKind kind) {
  return std::any_of(insights.begin(), insights.end(), [&](const Insight& i) { return i.kind == kind; });
}

ChartSpec base(K kind, std::string title, const ConfigTree& cfg, std::span<const Insight> insights) {
  ChartSpec s;
  s.kind = kind;
  s.title = std::move(title);
  s.width = static_cast<int>(cfg.get_int("plot.width"));
  s.height = static_cast<int>(cfg.get_int("plot.height"));
  s.has_insight = !insights.empty();
  return s;
}

std::string titled(K kind, const std::vector<std::string>& columns) {
  std::string t(chart_label(kind));
  if (!columns.empty()) t += " (" + join(columns) + ")";
  return t;
}

[[noreturn]] void mismatch(K kind, const Intermediate& data) {
  throw UnknownKind("no " + std::string(to_string(kind)) + " chart template for " +
                    std::string(intermediate_kind(data)) + " data");
}

void require(K kind, std::initializer_list<K> allowed, const Intermediate& data) {
  if (std::find(allowed.begin(), allowed.end(), kind) == allowed.end()) mismatch(kind, data);
}

// --- tables -------------------------------------------------------------------

ChartSpec overview(const DatasetStats& d, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(K::Overview, titled(K::Overview, {}), cfg, ins);
  s.table = {{"Rows", fmt_count(d.rows), false},
             {"Columns", fmt_count(d.columns), false},
             {"Numerical columns", fmt_count(d.numerical), false},
             {"Categorical columns", fmt_count(d.categorical), false},
             {"Missing cells", fmt_count(d.missing_cells), d.missing_cells > 0},
             {"Missing cells (%)", fmt_pct(d.missing_pct), d.missing_cells > 0},
             {"Duplicate rows", fmt_count(d.duplicate_rows), d.duplicate_rows > 0}};
  for (const auto& [name, dtype] : d.dtypes) s.table.push_back({"Type of " + name, std::string(to_string(dtype)), false});
  return s;
}

ChartSpec stats_table(const ColumnStats& c, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(K::Stats, titled(K::Stats, {c.column}), cfg, ins);
  const double pct_missing = c.n ? 100.0 * static_cast<double>(c.n_missing) / static_cast<double>(c.n) : 0.0;
  s.table = {{"Rows", fmt_count(c.n), false},
             {"Missing", fmt_count(c.n_missing), flagged(ins, InsightKind::Missing)},
             {"Missing (%)", fmt_pct(pct_missing), flagged(ins, InsightKind::Missing)},
             {"Distinct", fmt_count(c.n_distinct),
              flagged(ins, InsightKind::HighCardinality) || flagged(ins, InsightKind::Constant)}};
  if (c.dtype == DType::Categorical) {
    s.table.push_back({"Most frequent", c.top, false});
    s.table.push_back({"Most frequent count", fmt_count(static_cast<std::size_t>(c.top_count)), false});
    return s;
  }
  const auto row = [&](const char* label, double v, bool hi = false) { s.table.push_back({label, fmt_num(v), hi}); };
  s.table.push_back({"Infinite", fmt_count(c.n_infinite), flagged(ins, InsightKind::Infinite)});
  s.table.push_back({"Zeros", fmt_count(c.n_zero), flagged(ins, InsightKind::Zeros)});
  s.table.push_back({"Negatives", fmt_count(c.n_negative), flagged(ins, InsightKind::Negatives)});
  row("Minimum", c.min);
  row("5th percentile", c.quantiles[0]);
  row("Q1", c.quantiles[1]);
  row("Median", c.quantiles[2]);
  row("Q3", c.quantiles[3]);
  row("95th percentile", c.quantiles[4]);
  row("Maximum", c.max);
  row("Mean", c.mean);
  row("Standard deviation", c.std);
  row("Variance", c.variance);
  row("Skewness", c.skewness, flagged(ins, InsightKind::Skewed));
  row("Kurtosis", c.kurtosis);
  return s;
}

// --- univariate ---------------------------------------------------------------

Series hist_rects(const Histogram& h, std::string color, bool density) {
  Series r;
  r.type = SeriesType::Rect;
  r.name = h.column;
  r.color = std::move(color);
  const double total = static_cast<double>(h.total());
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    double v = static_cast<double>(h.counts[i]);
    if (density) v = total > 0 ? v / (total * (h.edges[i + 1] - h.edges[i])) : 0.0;
    r.x.push_back(h.edges[i]);
    r.x2.push_back(h.edges[i + 1]);
    r.y.push_back(0);
    r.y2.push_back(v);
  }
  return r;
}

ChartSpec histogram(const Histogram& h, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(K::Histogram, titled(K::Histogram, {h.column}), cfg, ins);
  auto r = hist_rects(h, palette(0), false);
  if (!h.edges.empty()) s.x_axis = linear_axis(h.column, h.edges.front(), h.edges.back());
  s.y_axis = linear_axis("Frequency", 0, extent({&r.y2}).second);
  s.series.push_back(std::move(r));
  return s;
}

ChartSpec kde(const KdeCurve& k, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(K::Kde, titled(K::Kde, {k.column}), cfg, ins);
  if (k.histogram) {
    s.series.push_back(hist_rects(*k.histogram, palette(9), true));
    s.series.back().name = "histogram";
  }
  Series line;
  line.type = SeriesType::Line;
  line.name = "density";
  line.color = palette(0);
  line.x = k.x;
  line.y = k.density;
  s.series.push_back(std::move(line));
  auto [x0, x1] = extent({&k.x});
  double y1 = extent({&k.density}).second;
  if (k.histogram) {
    const auto& h = s.series.front();
    x0 = std::min(x0, h.x.empty() ? x0 : h.x.front());
    x1 = std::max(x1, h.x2.empty() ? x1 : h.x2.back());
    y1 = std::max(y1, extent({&h.y2}).second);
  }
  s.x_axis = linear_axis(k.column, x0, x1);
  s.y_axis = linear_axis("Density", 0, y1);
  if (k.sampled) s.notes.push_back("density estimated on " + fmt_count(k.n_used) + " sampled rows");
  s.notes.push_back("bandwidth " + fmt_num(k.bandwidth));
  return s;
}

ChartSpec qq(const QQPoints& q, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(K::QQNormal, titled(K::QQNormal, {q.column}), cfg, ins);
  Series pts;
  pts.type = SeriesType::Point;
  pts.name = q.column;
  pts.color = palette(0);
  pts.x = q.theoretical;
  pts.y = q.sample;
  auto [x0, x1] = extent({&q.theoretical});
  Series ref;
  ref.type = SeriesType::Line;
  ref.name = "reference";
  ref.color = palette(2);
  ref.x = {x0, x1};
  ref.y = {x0, x1};  // theoretical quantiles are already on the data scale
  auto [y0, y1] = extent({&q.sample, &ref.y});
  s.x_axis = linear_axis("Normal quantiles (fitted mean and sd)", x0, x1);
  s.y_axis = linear_axis(q.column + " quantiles", y0, y1);
  s.series.push_back(std::move(pts));
  s.series.push_back(std::move(ref));
  return s;
}

void add_boxes(ChartSpec& s, const std::vector<BoxStats>& boxes, const std::string& value_label,
               std::string band_label) {
  Series b;
  b.type = SeriesType::Box;
  b.name = value_label;
  b.color = palette(0);
  Series out;
  out.type = SeriesType::Point;
  out.name = "outliers";
  out.color = palette(2);
  std::vector<std::string> cats;
  std::vector<double> ys;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& box = boxes[i];
    cats.push_back(box.label);
    b.x.push_back(static_cast<double>(i));
    b.boxes.push_back(box);
    for (double v : {box.lower_whisker, box.upper_whisker, box.q1, box.q3}) ys.push_back(v);
    for (double v : box.outliers) {
      out.x.push_back(static_cast<double>(i));
      out.y.push_back(v);
      ys.push_back(v);
    }
  }
  auto [y0, y1] = extent({&ys});
  s.x_axis = band_axis(std::move(band_label), std::move(cats));
  s.y_axis = linear_axis(value_label, y0, y1);
  if (!b.boxes.empty()) s.series.push_back(std::move(b));
  if (!out.x.empty()) s.series.push_back(std::move(out));
}

ChartSpec box(const BoxStats& b, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(K::Box, titled(K::Box, {b.label}), cfg, ins);
  add_boxes(s, {b}, b.label, "");
  if (b.n_outliers > b.outliers.size())
    s.notes.push_back("showing " + fmt_count(b.outliers.size()) + " of " + fmt_count(b.n_outliers) + " outliers");
  return s;
}

ChartSpec box_group(const BoxGroup& g, K kind, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(kind, titled(kind, {g.column, g.group_column}), cfg, ins);
  add_boxes(s, g.boxes, g.column, g.group_column);
  if (!g.omitted.empty()) s.notes.push_back("no data for: " + join(g.omitted));
  return s;
}

ChartSpec bars(const BarCounts& b, K kind, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(kind, titled(kind, {b.column}), cfg, ins);
  std::vector<std::string> labels = b.labels;
  std::vector<double> counts;
  for (auto c : b.counts) counts.push_back(static_cast<double>(c));
  if (b.other > 0) {
    labels.push_back("Other");
    counts.push_back(static_cast<double>(b.other));
  }
  if (b.distinct > b.labels.size())
    s.notes.push_back("showing the top " + fmt_count(b.labels.size()) + " of " + fmt_count(b.distinct) +
                      " categories");
  Series r;
  r.name = b.column;
  if (kind == K::Pie) {
    r.type = SeriesType::Slice;
    r.value = counts;
    r.labels = labels;
    for (std::size_t i = 0; i < labels.size(); ++i) r.color += (i ? " " : "") + palette(i);
    s.series.push_back(std::move(r));
    return s;
  }
  r.type = SeriesType::Bar;
  r.color = palette(0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    r.x.push_back(static_cast<double>(i));
    r.y.push_back(0);
    r.y2.push_back(counts[i]);
  }
  s.y_axis = linear_axis("Count", 0, extent({&r.y2}).second);
  s.x_axis = band_axis(b.column, std::move(labels));
  s.series.push_back(std::move(r));
  return s;
}

// --- bivariate ----------------------------------------------------------------

ChartSpec scatter(const ScatterPoints& p, K kind, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(kind, titled(kind, {p.x_column, p.y_column}), cfg, ins);
  Series pts;
  pts.type = SeriesType::Point;
  pts.name = p.y_column;
  pts.color = palette(0);
  pts.opacity = 0.6;
  pts.x = p.x;
  pts.y = p.y;
  auto [x0, x1] = extent({&p.x});
  auto [y0, y1] = extent({&p.y});
  s.series.push_back(std::move(pts));
  if (kind == K::CorrScatter && std::isfinite(p.slope) && std::isfinite(p.intercept) && !p.x.empty()) {
    Series fit;
    fit.type = SeriesType::Line;
    fit.name = "least squares fit";
    fit.color = palette(2);
    fit.x = {x0, x1};
    fit.y = {p.intercept + p.slope * x0, p.intercept + p.slope * x1};
    y0 = std::min({y0, fit.y[0], fit.y[1]});
    y1 = std::max({y1, fit.y[0], fit.y[1]});
    s.series.push_back(std::move(fit));
    s.notes.push_back("r = " + fmt_fixed(p.r, 3));
  }
  s.x_axis = linear_axis(p.x_column, x0, x1);
  s.y_axis = linear_axis(p.y_column, y0, y1);
  if (p.sampled) s.notes.push_back("showing " + fmt_count(p.x.size()) + " of " + fmt_count(p.n_pairs) + " points");
  return s;
}

ChartSpec hexbin(const HexbinGrid& g, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(K::Hexbin, titled(K::Hexbin, {g.x_column, g.y_column}), cfg, ins);
  Series h;
  h.type = SeriesType::Hex;
  h.name = "count";
  std::int64_t most = 0;
  for (const auto& c : g.cells) {
    h.x.push_back(c.cx);
    h.y.push_back(c.cy);
    h.value.push_back(static_cast<double>(c.count));
    most = std::max(most, c.count);
  }
  if (g.gridsize > 0) {
    h.x2 = {g.hex_size * (g.x_max - g.x_min) / g.gridsize};
    h.y2 = {g.hex_size * (g.y_max - g.y_min) / g.gridsize};
  }
  const double px = h.x2.empty() ? 0 : h.x2[0], py = h.y2.empty() ? 0 : h.y2[0];
  s.x_axis = linear_axis(g.x_column, g.x_min - px, g.x_max + px);
  s.y_axis = linear_axis(g.y_column, g.y_min - py, g.y_max + py);
  s.color = ColorScale{"sequential", 0, static_cast<double>(std::max<std::int64_t>(most, 1))};
  if (!h.x.empty()) s.series.push_back(std::move(h));
  if (g.degenerate) s.notes.push_back("all points share one location");
  return s;
}

ChartSpec cross(const CrossCounts& c, K kind, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(kind, titled(kind, {c.x_column, c.y_column}), cfg, ins);
  const std::size_t nx = c.x_labels.size(), ny = c.y_labels.size();
  if (kind == K::CrossHeatmap) {
    Series h;
    h.type = SeriesType::Heat;
    h.name = "count";
    double most = 1;
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j) {
        h.x.push_back(static_cast<double>(i));
        h.y.push_back(static_cast<double>(j));
        h.value.push_back(static_cast<double>(c.at(i, j)));
        most = std::max(most, h.value.back());
      }
    s.x_axis = band_axis(c.x_column, c.x_labels);
    s.y_axis = band_axis(c.y_column, c.y_labels);
    s.color = ColorScale{"sequential", 0, most};
    if (!h.x.empty()) s.series.push_back(std::move(h));
    return s;
  }
  s.stacked = kind == K::StackedBar;
  std::vector<double> base_height(nx, 0.0);
  double top = 0;
  for (std::size_t j = 0; j < ny; ++j) {
    Series b;
    b.type = SeriesType::Bar;
    b.name = c.y_labels[j];
    b.color = palette(j);
    for (std::size_t i = 0; i < nx; ++i) {
      const double v = static_cast<double>(c.at(i, j));
      const double y = s.stacked ? base_height[i] : 0.0;
      b.x.push_back(static_cast<double>(i));
      b.y.push_back(y);
      b.y2.push_back(y + v);
      if (s.stacked) base_height[i] += v;
      top = std::max(top, y + v);
    }
    s.series.push_back(std::move(b));
  }
  s.x_axis = band_axis(c.x_column, c.x_labels);
  s.y_axis = linear_axis("Count", 0, top);
  return s;
}

ChartSpec category_histograms(const HistogramGroup& g, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(K::CategoryHistograms, titled(K::CategoryHistograms, {g.column, g.group_column}), cfg, ins);
  double top = 0, lo = 0, hi = 1;
  for (std::size_t i = 0; i < g.histograms.size(); ++i) {
    const auto& h = g.histograms[i];
    Series st;
    st.type = SeriesType::Step;
    st.name = i < g.labels.size() ? g.labels[i] : h.column;
    st.color = palette(i);
    st.x = h.edges;
    for (auto c : h.counts) {
      st.y.push_back(static_cast<double>(c));
      top = std::max(top, st.y.back());
    }
    if (!h.edges.empty()) {
      lo = h.edges.front();
      hi = h.edges.back();
    }
    s.series.push_back(std::move(st));
  }
  s.x_axis = linear_axis(g.column, lo, hi);
  s.y_axis = linear_axis("Frequency", 0, top);
  return s;
}

// --- correlation --------------------------------------------------------------

ChartSpec heat_square(K kind, std::string title, const std::vector<std::string>& columns,
                      const std::vector<double>& values, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(kind, std::move(title), cfg, ins);
  Series h;
  h.type = SeriesType::Heat;
  h.name = "r";
  const std::size_t m = columns.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      h.x.push_back(static_cast<double>(j));
      h.y.push_back(static_cast<double>(i));
      h.value.push_back(values[i * m + j]);
    }
  s.x_axis = band_axis("", columns);
  s.y_axis = band_axis("", columns);
  s.color = ColorScale{"diverging", -1, 1};
  if (!h.x.empty()) s.series.push_back(std::move(h));
  return s;
}

ChartSpec corr_matrix(const CorrMatrix& m, K kind, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = heat_square(kind, titled(kind, {}), m.columns, m.values, cfg, ins);
  if (m.sampled) s.notes.push_back("estimated on " + fmt_count(m.max_rows_used) + " sampled rows");
  if (!m.constant_columns.empty()) s.notes.push_back("constant columns: " + join(m.constant_columns));
  return s;
}

ChartSpec corr_rank(const CorrRanking& r, K kind, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(kind, titled(kind, {r.anchor}), cfg, ins);
  Series b;
  b.type = SeriesType::Bar;
  b.name = r.method;
  b.color = palette(0);
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    b.x.push_back(static_cast<double>(i));
    b.y.push_back(0);
    b.y2.push_back(r.values[i]);
  }
  s.x_axis = band_axis("", r.columns);
  s.y_axis = linear_axis("Correlation with " + r.anchor, -1, 1);
  if (!b.x.empty()) s.series.push_back(std::move(b));
  return s;
}

// --- missing values -----------------------------------------------------------

ChartSpec missing_bar(const MissingBar& m, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(K::MissingBar, titled(K::MissingBar, {}), cfg, ins);
  Series b;
  b.type = SeriesType::Bar;
  b.name = "missing";
  b.color = palette(0);
  for (std::size_t i = 0; i < m.pct.size(); ++i) {
    b.x.push_back(static_cast<double>(i));
    b.y.push_back(0);
    b.y2.push_back(m.pct[i]);
  }
  s.x_axis = band_axis("", m.columns);
  s.y_axis = linear_axis("Missing (%)", 0, std::max(1.0, extent({&b.y2}).second));
  if (!b.x.empty()) s.series.push_back(std::move(b));
  return s;
}

ChartSpec spectrum(const MissingSpectrum& m, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(K::MissingSpectrum, titled(K::MissingSpectrum, {}), cfg, ins);
  Series h;
  h.type = SeriesType::Heat;
  h.name = "missing fraction";
  std::vector<std::string> rows;
  for (std::size_t seg = 0; seg < m.segments(); ++seg) {
    const auto first = m.segment_start[seg];
    rows.push_back(fmt_count(first + 1) + "-" + fmt_count(first + m.segment_rows[seg]));
    for (std::size_t c = 0; c < m.columns.size(); ++c) {
      h.x.push_back(static_cast<double>(c));
      h.y.push_back(static_cast<double>(seg));
      h.value.push_back(m.at(seg, c));
    }
  }
  s.x_axis = band_axis("", m.columns);
  s.y_axis = band_axis("Rows", std::move(rows));
  s.color = ColorScale{"sequential", 0, 1};
  if (!h.x.empty()) s.series.push_back(std::move(h));
  return s;
}

ChartSpec nullity(const NullityCorr& n, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = heat_square(K::NullityHeatmap, titled(K::NullityHeatmap, {}), n.columns, n.values, cfg, ins);
  if (!n.excluded.empty()) s.notes.push_back("not shown (no missing values or all missing): " + join(n.excluded));
  return s;
}

ChartSpec dendrogram(const DendrogramTree& t, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(K::NullityDendrogram, titled(K::NullityDendrogram, {}), cfg, ins);
  const std::size_t leaves = t.leaves.size();
  std::vector<double> pos(leaves + t.merges.size(), 0.0), height(leaves + t.merges.size(), 0.0);
  std::vector<std::string> order;
  for (std::size_t i = 0; i < t.leaf_order.size(); ++i) {
    pos[t.leaf_order[i]] = static_cast<double>(i);
    order.push_back(t.leaves[t.leaf_order[i]]);
  }
  Series l;
  l.type = SeriesType::Link;
  l.name = "merge";
  l.color = palette(0);
  double top = 0;
  for (std::size_t k = 0; k < t.merges.size(); ++k) {
    const auto& m = t.merges[k];
    const double xl = pos[m.left], xr = pos[m.right], hl = height[m.left], hr = height[m.right];
    const auto seg = [&](double x0, double y0, double x1, double y1) {
      l.x.push_back(x0);
      l.y.push_back(y0);
      l.x2.push_back(x1);
      l.y2.push_back(y1);
    };
    seg(xl, hl, xl, m.height);
    seg(xl, m.height, xr, m.height);
    seg(xr, hr, xr, m.height);
    pos[leaves + k] = (xl + xr) / 2;
    height[leaves + k] = m.height;
    top = std::max(top, m.height);
  }
  s.x_axis = band_axis("", std::move(order));
  s.y_axis = linear_axis("Distance", 0, std::max(top, 1e-9));
  if (!l.x.empty()) s.series.push_back(std::move(l));
  return s;
}

ChartSpec impact(const ImpactPair& p, K kind, const ConfigTree& cfg, std::span<const Insight> ins) {
  auto s = base(kind, titled(kind, {p.anchor, p.column}), cfg, ins);
  if (p.anchor_fully_observed) s.notes.push_back(p.anchor + " has no missing values");
  if (p.ks_distance) s.notes.push_back("KS distance D = " + fmt_fixed(*p.ks_distance, 4));
  if (kind == K::ImpactCdf) {
    if (!p.before_cdf || !p.after_cdf) mismatch(kind, p);
    double lo = 0, hi = 1;
    int idx = 0;
    for (const auto* e : {&*p.before_cdf, &*p.after_cdf}) {
      Series st;
      st.type = SeriesType::Line;
      st.name = idx == 0 ? "before" : "after";
      st.color = palette(static_cast<std::size_t>(idx++));
      st.x = e->x;
      st.y = e->p;
      s.series.push_back(std::move(st));
    }
    std::tie(lo, hi) = extent({&p.before_cdf->x, &p.after_cdf->x});
    s.x_axis = linear_axis(p.column, lo, hi);
    s.y_axis = linear_axis("Cumulative fraction", 0, 1);
    return s;
  }
  if (p.before_hist && p.after_hist) {
    auto before = hist_rects(*p.before_hist, palette(0), false);
    auto after = hist_rects(*p.after_hist, palette(1), false);
    before.name = "before";
    after.name = "after";
    before.opacity = after.opacity = 0.5;
    const double top = extent({&before.y2, &after.y2}).second;
    s.x_axis = linear_axis(p.column, p.before_hist->edges.front(), p.before_hist->edges.back());
    s.y_axis = linear_axis("Frequency", 0, top);
    s.series.push_back(std::move(before));
    s.series.push_back(std::move(after));
    return s;
  }
  if (p.before_bars && p.after_bars) {
    double top = 0;
    int idx = 0;
    for (const auto* b : {&*p.before_bars, &*p.after_bars}) {
      Series r;
      r.type = SeriesType::Bar;
      r.name = idx == 0 ? "before" : "after";
      r.color = palette(static_cast<std::size_t>(idx++));
      for (std::size_t i = 0; i < b->counts.size(); ++i) {
        r.x.push_back(static_cast<double>(i));
        r.y.push_back(0);
        r.y2.push_back(static_cast<double>(b->counts[i]));
        top = std::max(top, r.y2.back());
      }
      s.series.push_back(std::move(r));
    }
    s.x_axis = band_axis(p.column, p.before_bars->labels);
    s.y_axis = linear_axis("Count", 0, top);
    return s;
  }
  return s;
}

}  // namespace

bool ChartSpec::empty() const noexcept {
  if (!table.empty()) return false;
  return std::all_of(series.begin(), series.end(), [](const Series& s) {
    return s.x.empty() && s.value.empty() && s.boxes.empty();
  });
}

std::vector<Tick> nice_ticks(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) return {};
  if (lo > hi) std::swap(lo, hi);
  if (lo == hi) {
    const double d = lo == 0 ? 1.0 : std::abs(lo) * 0.1;
    lo -= d;
    hi += d;
  }
  const double range = hi - lo;
  int exp10 = static_cast<int>(std::floor(std::log10(range))) + 1;
  // Steps m * 10^e with m in {5, 2, 1}, from coarse to fine.
  struct Step {
    int mant;
    int exp;
    double value() const { return exp >= 0 ? mant * std::pow(10.0, exp) : mant / std::pow(10.0, -exp); }
  };
  const auto count = [&](const Step& s, long long& first, long long& last) {
    const double v = s.value();
    first = static_cast<long long>(std::floor(lo / v + 1e-9));
    last = static_cast<long long>(std::ceil(hi / v - 1e-9));
    return last - first + 1;
  };
  Step chosen{1, exp10 + 1};
  long long first = 0, last = 0;
  count(chosen, first, last);
  for (int e = exp10 + 1; e > exp10 - 4; --e) {
    bool stop = false;
    for (int m : {5, 2, 1}) {
      Step s{m, e};
      long long f = 0, l = 0;
      if (count(s, f, l) > 8) {
        stop = true;
        break;
      }
      chosen = s;
      first = f;
      last = l;
    }
    if (stop) break;
  }
  // Too few ticks: widen the domain, never below zero for non-negative data.
  bool up = true;
  while (last - first + 1 < 5) {
    if (up || (lo >= 0 && first <= 0))
      ++last;
    else
      --first;
    up = !up;
  }
  const int decimals = std::max(0, -chosen.exp);
  std::vector<Tick> ticks;
  for (long long k = first; k <= last; ++k) {
    const double v = chosen.exp >= 0 ? static_cast<double>(k * chosen.mant) * std::pow(10.0, chosen.exp)
                                     : static_cast<double>(k * chosen.mant) / std::pow(10.0, -chosen.exp);
    ticks.push_back({v, fmt_tick(v, decimals)});
  }
  return ticks;
}

ChartSpec to_chart_spec(const Intermediate& data, ChartKind kind, const ConfigTree& cfg,
                        std::span<const Insight> insights) {
  return std::visit(
      [&](const auto& v) -> ChartSpec {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DatasetStats>) {
          require(kind, {K::Overview}, data);
          return overview(v, cfg, insights);
        } else if constexpr (std::is_same_v<T, ColumnStats>) {
          require(kind, {K::Stats}, data);
          return stats_table(v, cfg, insights);
        } else if constexpr (std::is_same_v<T, Histogram>) {
          require(kind, {K::Histogram}, data);
          return histogram(v, cfg, insights);
        } else if constexpr (std::is_same_v<T, KdeCurve>) {
          require(kind, {K::Kde}, data);
          return eda::render::kde(v, cfg, insights);
        } else if constexpr (std::is_same_v<T, QQPoints>) {
          require(kind, {K::QQNormal}, data);
          return qq(v, cfg, insights);
        } else if constexpr (std::is_same_v<T, BoxStats>) {
          require(kind, {K::Box}, data);
          return box(v, cfg, insights);
        } else if constexpr (std::is_same_v<T, BoxGroup>) {
          require(kind, {K::BinnedBox, K::GroupedBox}, data);
          return box_group(v, kind, cfg, insights);
        } else if constexpr (std::is_same_v<T, BarCounts>) {
          require(kind, {K::Bar, K::Pie}, data);
          return bars(v, kind, cfg, insights);
        } else if constexpr (std::is_same_v<T, CorrMatrix>) {
          require(kind, {K::CorrPearson, K::CorrSpearman, K::CorrKendall}, data);
          return eda::render::corr_matrix(v, kind, cfg, insights);
        } else if constexpr (std::is_same_v<T, CorrRanking>) {
          require(kind, {K::RankPearson, K::RankSpearman, K::RankKendall}, data);
          return eda::render::corr_rank(v, kind, cfg, insights);
        } else if constexpr (std::is_same_v<T, ScatterPoints>) {
          require(kind, {K::Scatter, K::CorrScatter}, data);
          return scatter(v, kind, cfg, insights);
        } else if constexpr (std::is_same_v<T, HexbinGrid>) {
          require(kind, {K::Hexbin}, data);
          return eda::render::hexbin(v, cfg, insights);
        } else if constexpr (std::is_same_v<T, MissingBar>) {
          require(kind, {K::MissingBar}, data);
          return eda::render::missing_bar(v, cfg, insights);
        } else if constexpr (std::is_same_v<T, MissingSpectrum>) {
          require(kind, {K::MissingSpectrum}, data);
          return spectrum(v, cfg, insights);
        } else if constexpr (std::is_same_v<T, NullityCorr>) {
          require(kind, {K::NullityHeatmap}, data);
          return nullity(v, cfg, insights);
        } else if constexpr (std::is_same_v<T, DendrogramTree>) {
          require(kind, {K::NullityDendrogram}, data);
          return dendrogram(v, cfg, insights);
        } else if constexpr (std::is_same_v<T, ImpactPair>) {
          require(kind, {K::Impact, K::ImpactCdf}, data);
          return impact(v, kind, cfg, insights);
        } else if constexpr (std::is_same_v<T, CrossCounts>) {
          require(kind, {K::NestedBar, K::StackedBar, K::CrossHeatmap}, data);
          return eda::render::cross(v, kind, cfg, insights);
        } else {
          static_assert(std::is_same_v<T, HistogramGroup>);
          require(kind, {K::CategoryHistograms}, data);
          return eda::render::category_histograms(v, cfg, insights);
        }
      },
      data);
}

ChartSpec to_chart_spec(const Intermediate& data, const ConfigTree& cfg) {
  static constexpr K primary[] = {K::Stats,   K::Histogram,     K::Kde,         K::QQNormal,      K::Box,
                                  K::GroupedBox, K::Bar,        K::CorrPearson, K::RankPearson,   K::Scatter,
                                  K::Hexbin,  K::MissingBar,    K::MissingSpectrum, K::NullityHeatmap,
                                  K::NullityDendrogram, K::Impact, K::Overview, K::NestedBar, K::CategoryHistograms};
  static_assert(std::size(primary) == std::variant_size_v<Intermediate>);
  K kind = primary[data.index()];
  if (const auto* m = std::get_if<CorrMatrix>(&data)) {
    if (m->method == "spearman") kind = K::CorrSpearman;
    if (m->method == "kendall") kind = K::CorrKendall;
  } else if (const auto* r = std::get_if<CorrRanking>(&data)) {
    if (r->method == "spearman") kind = K::RankSpearman;
    if (r->method == "kendall") kind = K::RankKendall;
  }
  return to_chart_spec(data, kind, cfg);
}

ChartSpec to_chart_spec(const Panel& panel, const ConfigTree& cfg) {
  if (!panel.data) {
    auto s = base(panel.kind, panel.title, cfg, panel.insights);
    if (panel.skip_reason) s.notes.push_back(*panel.skip_reason);
    return s;
  }
  auto s = to_chart_spec(*panel.data, panel.kind, cfg, panel.insights);
  s.title = panel.title;
  return s;
}

}  // namespace eda::render
