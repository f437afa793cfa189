#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "eda/analytics.hpp"
#include "eda/error.hpp"
#include "eda/graph.hpp"

namespace eda::analytics {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool finite_at(const Chunk& c, std::size_t i) noexcept { return c.valid(i) && std::isfinite(c.values[i]); }

double clamp_unit(double r) noexcept { return std::isnan(r) ? r : std::clamp(r, -1.0, 1.0); }

void require_numeric(const Column& col) {
  if (col.dtype != DType::Numerical) throw UnsupportedCombination("column '" + col.name + "' is not numerical");
}

void require_categorical(const Column& col) {
  if (col.dtype != DType::Categorical) throw UnsupportedCombination("column '" + col.name + "' is not categorical");
}

std::string range_label(double lo, double hi, bool last) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.4g, %.4g%c", lo, hi, last ? ']' : ')');
  return buf;
}

// Merge sort that counts exchanges; `v` is sorted in place.
std::uint64_t count_swaps(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t swaps = count_swaps(v, buf, lo, mid) + count_swaps(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += mid - i;
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

// Sum of t(t-1)/2 over runs of equal values in a sorted sequence.
template <class Eq>
std::uint64_t tie_pairs(std::size_t n, Eq eq) {
  std::uint64_t total = 0, run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && eq(i - 1, i)) {
      ++run;
    } else {
      total += run * (run - 1) / 2;
      run = 1;
    }
  }
  return total;
}

}  // namespace

// --- correlation ------------------------------------------------------------

void CoMoments::add(double x, double y) noexcept {
  ++n;
  const double nn = static_cast<double>(n);
  const double dx = x - mean_x, dy = y - mean_y;
  mean_x += dx / nn;
  mean_y += dy / nn;
  m2x += dx * (x - mean_x);
  m2y += dy * (y - mean_y);
  cxy += dx * (y - mean_y);
}

void CoMoments::merge(const CoMoments& o) noexcept {
  if (o.n == 0) return;
  if (n == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n), nb = static_cast<double>(o.n), nt = na + nb;
  const double dx = o.mean_x - mean_x, dy = o.mean_y - mean_y;
  m2x += o.m2x + dx * dx * na * nb / nt;
  m2y += o.m2y + dy * dy * na * nb / nt;
  cxy += o.cxy + dx * dy * na * nb / nt;
  mean_x += dx * nb / nt;
  mean_y += dy * nb / nt;
  n += o.n;
}

double CoMoments::pearson() const noexcept {
  if (n < 2 || !(m2x > 0) || !(m2y > 0)) return kNaN;
  return clamp_unit(cxy / std::sqrt(m2x * m2y));
}

double CoMoments::slope() const noexcept { return n < 2 || !(m2x > 0) ? kNaN : cxy / m2x; }

double CoMoments::intercept() const noexcept { return mean_y - slope() * mean_x; }

std::vector<double> midranks(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i + 1;
    while (j < idx.size() && values[idx[j]] == values[idx[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[idx[k]] = r;
    i = j;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) return kNaN;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0) || !(syy > 0)) return kNaN;
  return clamp_unit(sxy / std::sqrt(sxx * syy));
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  return pearson(midranks(x), midranks(y));
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("kendall: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) return kNaN;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b]; });
  const std::uint64_t n1 = tie_pairs(n, [&](auto i, auto j) { return x[idx[i]] == x[idx[j]]; });
  const std::uint64_t n3 =
      tie_pairs(n, [&](auto i, auto j) { return x[idx[i]] == x[idx[j]] && y[idx[i]] == y[idx[j]]; });
  std::vector<double> ys(n), buf(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[idx[i]];
  const std::uint64_t swaps = count_swaps(ys, buf, 0, n);
  const std::uint64_t n2 = tie_pairs(n, [&](auto i, auto j) { return ys[i] == ys[j]; });
  const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (n1 == n0 || n2 == n0) return kNaN;
  const double s = static_cast<double>(n0) - static_cast<double>(n1) - static_cast<double>(n2) +
                   static_cast<double>(n3) - 2.0 * static_cast<double>(swaps);
  const double denom = std::sqrt(static_cast<double>(n0 - n1)) * std::sqrt(static_cast<double>(n0 - n2));
  return clamp_unit(s / denom);
}

std::vector<std::size_t> numerical_columns(const DataFrame& df) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < df.width(); ++i)
    if (df.column(i).dtype == DType::Numerical) out.push_back(i);
  return out;
}

std::vector<std::size_t> constant_columns(const DataFrame& df, std::span<const std::size_t> cols) {
  std::vector<std::size_t> out;
  for (auto ci : cols) {
    const auto& col = df.column(ci);
    bool seen = false, varies = false;
    double first = 0;
    for (const auto& c : col.chunks) {
      for (std::size_t i = 0; i < c.row_count() && !varies; ++i) {
        if (!finite_at(c, i)) continue;
        if (!seen) {
          first = c.values[i];
          seen = true;
        } else if (c.values[i] != first) {
          varies = true;
        }
      }
      if (varies) break;
    }
    if (!varies) out.push_back(ci);
  }
  return out;
}

std::vector<CoMoments> comoment_partial(const DataFrame& df, std::size_t chunk, std::span<const std::size_t> cols) {
  const std::size_t m = cols.size();
  std::vector<CoMoments> out(m * m);
  std::vector<const Chunk*> chunks;
  for (auto c : cols) chunks.push_back(&df.column(c).chunks[chunk]);
  const std::size_t rows = df.meta().chunk_row_counts[chunk];
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      auto& cm = out[a * m + b];
      const Chunk& ca = *chunks[a];
      const Chunk& cb = *chunks[b];
      for (std::size_t i = 0; i < rows; ++i)
        if (finite_at(ca, i) && finite_at(cb, i)) cm.add(ca.values[i], cb.values[i]);
    }
  return out;
}

void merge_comoments(std::vector<CoMoments>& into, std::vector<CoMoments>&& other) {
  if (into.empty()) {
    into = std::move(other);
    return;
  }
  for (std::size_t i = 0; i < into.size() && i < other.size(); ++i) into[i].merge(other[i]);
}

namespace {

CorrMatrix empty_matrix(const DataFrame& df, std::string_view method, std::span<const std::size_t> cols,
                        std::vector<std::size_t>& constant) {
  CorrMatrix m;
  m.method = std::string(method);
  for (auto c : cols) m.columns.push_back(df.column(c).name);
  m.values.assign(cols.size() * cols.size(), kNaN);
  constant = constant_columns(df, cols);
  for (auto c : constant) m.constant_columns.push_back(df.column(c).name);
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (std::find(constant.begin(), constant.end(), cols[i]) == constant.end()) m.values[i * cols.size() + i] = 1.0;
  return m;
}

void set_pair(CorrMatrix& m, std::size_t a, std::size_t b, double r) {
  const std::size_t k = m.columns.size();
  m.values[a * k + b] = r;
  m.values[b * k + a] = r;
}

bool is_constant(const std::vector<std::size_t>& constant, std::size_t col) {
  return std::find(constant.begin(), constant.end(), col) != constant.end();
}

}  // namespace

CorrMatrix finish_pearson(const DataFrame& df, std::span<const std::size_t> cols, const std::vector<CoMoments>& pairs) {
  std::vector<std::size_t> constant;
  auto m = empty_matrix(df, "pearson", cols, constant);
  const std::size_t k = cols.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      const auto& cm = pairs[a * k + b];
      m.max_rows_used = std::max(m.max_rows_used, cm.n);
      if (!is_constant(constant, cols[a]) && !is_constant(constant, cols[b])) set_pair(m, a, b, cm.pearson());
    }
  return m;
}

CorrMatrix corr_matrix(const DataFrame& df, std::string_view method, std::size_t kendall_cap, std::uint64_t seed) {
  if (method != "pearson" && method != "spearman" && method != "kendall")
    throw std::invalid_argument("unknown correlation method '" + std::string(method) + "'");
  const auto cols = numerical_columns(df);
  if (method == "pearson") {
    std::vector<std::vector<CoMoments>> parts;
    for (std::size_t c = 0; c < df.chunk_count(); ++c) parts.push_back(comoment_partial(df, c, cols));
    return finish_pearson(
        df, cols, graph::tree_reduce(std::move(parts), [](auto& a, auto&& b) { merge_comoments(a, std::move(b)); }));
  }

  std::vector<std::size_t> constant;
  auto m = empty_matrix(df, method, cols, constant);
  const std::size_t k = cols.size();

  // Columns that are finite on every row share one global rank vector.
  std::vector<std::vector<double>> full_ranks(k);
  if (method == "spearman") {
    for (std::size_t a = 0; a < k; ++a) {
      const auto& col = df.column(cols[a]);
      std::vector<double> v;
      v.reserve(df.rows());
      bool complete = true;
      for (const auto& c : col.chunks)
        for (std::size_t i = 0; i < c.row_count() && complete; ++i) {
          if (!finite_at(c, i)) complete = false;
          else v.push_back(c.values[i]);
        }
      if (complete) full_ranks[a] = midranks(v);
    }
  }

  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      if (is_constant(constant, cols[a]) || is_constant(constant, cols[b])) continue;
      const auto& ca = df.column(cols[a]);
      const auto& cb = df.column(cols[b]);
      double r;
      if (method == "spearman") {
        if (!full_ranks[a].empty() && !full_ranks[b].empty()) {
          r = pearson(full_ranks[a], full_ranks[b]);
          m.max_rows_used = std::max(m.max_rows_used, df.rows());
        } else {
          const auto p = complete_pairs(ca, cb);
          r = spearman(p.x, p.y);
          m.max_rows_used = std::max(m.max_rows_used, p.x.size());
        }
      } else {
        auto p = complete_pairs(ca, cb);
        if (p.x.size() > kendall_cap) {
          std::vector<SampleEntry> entries;
          entries.reserve(p.x.size());
          for (std::size_t i = 0; i < p.x.size(); ++i)
            entries.push_back({sample_key(seed, p.rows[i]), p.rows[i], p.x[i], p.y[i]});
          truncate_sample(entries, kendall_cap);
          std::sort(entries.begin(), entries.end(), [](const auto& l, const auto& r) { return l.row < r.row; });
          p.x.clear();
          p.y.clear();
          for (const auto& e : entries) {
            p.x.push_back(e.x);
            p.y.push_back(e.y);
          }
          m.sampled = true;
        }
        r = kendall_tau_b(p.x, p.y);
        m.max_rows_used = std::max(m.max_rows_used, p.x.size());
      }
      set_pair(m, a, b, r);
    }
  return m;
}

CorrRanking corr_rank(const CorrMatrix& m, std::string_view anchor) {
  const auto it = std::find(m.columns.begin(), m.columns.end(), anchor);
  if (it == m.columns.end()) throw UnknownColumn(std::string(anchor), m.columns);
  const std::size_t a = static_cast<std::size_t>(it - m.columns.begin());
  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < m.columns.size(); ++j)
    if (j != a) others.push_back(j);
  // NaN entries sort last.
  const auto mag = [&](std::size_t j) {
    const double v = std::abs(m.at(a, j));
    return std::isnan(v) ? -1.0 : v;
  };
  std::sort(others.begin(), others.end(), [&](auto l, auto r) {
    if (mag(l) != mag(r)) return mag(l) > mag(r);
    return m.columns[l] < m.columns[r];
  });
  CorrRanking out;
  out.method = m.method;
  out.anchor = std::string(anchor);
  for (auto j : others) {
    out.columns.push_back(m.columns[j]);
    out.values.push_back(m.at(a, j));
  }
  return out;
}

// --- bivariate plots --------------------------------------------------------

PairSample complete_pairs(const Chunk& x, const Chunk& y, std::uint64_t first_row) {
  PairSample p;
  for (std::size_t i = 0; i < x.row_count(); ++i) {
    if (!finite_at(x, i) || !finite_at(y, i)) continue;
    p.x.push_back(x.values[i]);
    p.y.push_back(y.values[i]);
    p.rows.push_back(first_row + i);
  }
  return p;
}

void merge_pairs(PairSample& into, PairSample&& other) {
  if (into.x.empty()) {
    into = std::move(other);
    return;
  }
  into.x.insert(into.x.end(), other.x.begin(), other.x.end());
  into.y.insert(into.y.end(), other.y.begin(), other.y.end());
  into.rows.insert(into.rows.end(), other.rows.begin(), other.rows.end());
}

PairSample complete_pairs(const Column& x, const Column& y) {
  require_numeric(x);
  require_numeric(y);
  PairSample p;
  std::uint64_t row = 0;
  for (std::size_t c = 0; c < x.chunks.size(); ++c) {
    merge_pairs(p, complete_pairs(x.chunks[c], y.chunks[c], row));
    row += x.chunks[c].row_count();
  }
  return p;
}

ScatterPoints finish_scatter(const PairSample& p, std::string x_column, std::string y_column, std::size_t max_points,
                             std::uint64_t seed) {
  if (p.x.empty()) throw NoData("no complete (" + x_column + ", " + y_column + ") pairs");
  ScatterPoints s;
  s.x_column = std::move(x_column);
  s.y_column = std::move(y_column);
  s.n_pairs = p.x.size();
  CoMoments cm;
  for (std::size_t i = 0; i < p.x.size(); ++i) cm.add(p.x[i], p.y[i]);
  s.slope = cm.slope();
  s.intercept = cm.intercept();
  s.r = cm.pearson();
  if (p.x.size() <= max_points) {
    s.x = p.x;
    s.y = p.y;
    return s;
  }
  std::vector<SampleEntry> entries;
  entries.reserve(p.x.size());
  for (std::size_t k = 0; k < p.x.size(); ++k) entries.push_back({sample_key(seed, p.rows[k]), p.rows[k], p.x[k], p.y[k]});
  truncate_sample(entries, max_points);
  std::sort(entries.begin(), entries.end(), [](const auto& l, const auto& r) { return l.row < r.row; });
  for (const auto& e : entries) {
    s.x.push_back(e.x);
    s.y.push_back(e.y);
  }
  s.sampled = true;
  return s;
}

ScatterPoints scatter_sample(const Column& x, const Column& y, std::size_t max_points, std::uint64_t seed) {
  return finish_scatter(complete_pairs(x, y), x.name, y.name, max_points, seed);
}

namespace {

const double kSqrt3 = std::sqrt(3.0);

// Centre-to-corner size in normalised units (x spans [0, gridsize]).
double hex_size() noexcept { return 1.0 / kSqrt3; }

std::pair<double, double> hex_centre(int q, int r) noexcept {
  const double s = hex_size();
  return {s * kSqrt3 * (q + r / 2.0), s * 1.5 * r};
}

std::pair<double, double> normalise(const HexLayout& l, double x, double y) noexcept {
  const double sx = l.x_max > l.x_min ? (x - l.x_min) / (l.x_max - l.x_min) : 0.0;
  const double sy = l.y_max > l.y_min ? (y - l.y_min) / (l.y_max - l.y_min) : 0.0;
  return {sx * l.gridsize, sy * l.gridsize};
}

}  // namespace

HexLayout hex_layout(double x_min, double x_max, double y_min, double y_max, int gridsize) noexcept {
  return {x_min, x_max, y_min, y_max, std::max(1, gridsize), !(x_max > x_min) && !(y_max > y_min)};
}

std::pair<int, int> hex_of(const HexLayout& layout, double x, double y) noexcept {
  if (layout.degenerate) return {0, 0};
  const auto [px, py] = normalise(layout, x, y);
  const double s = hex_size();
  const double fq = (kSqrt3 / 3.0 * px - py / 3.0) / s;
  const double fr = (2.0 / 3.0 * py) / s;
  // Cube rounding.
  const double fs = -fq - fr;
  double rq = std::round(fq), rr = std::round(fr), rs = std::round(fs);
  const double dq = std::abs(rq - fq), dr = std::abs(rr - fr), ds = std::abs(rs - fs);
  if (dq > dr && dq > ds)
    rq = -rr - rs;
  else if (dr > ds)
    rr = -rq - rs;
  const int q0 = static_cast<int>(rq), r0 = static_cast<int>(rr);
  // Resolve boundary points among the rounded hex and its neighbours.
  static constexpr int dirs[7][2] = {{0, 0}, {1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}};
  std::pair<int, int> best{q0, r0};
  double best_d = std::numeric_limits<double>::infinity();
  const double eps = 1e-9 * s * s;
  for (const auto& d : dirs) {
    const int q = q0 + d[0], r = r0 + d[1];
    const auto [cx, cy] = hex_centre(q, r);
    const double dist = (px - cx) * (px - cx) + (py - cy) * (py - cy);
    if (dist < best_d - eps) {
      best = {q, r};
      best_d = dist;
    } else if (dist <= best_d + eps && std::pair{q, r} < best) {
      best = {q, r};
      best_d = std::min(best_d, dist);
    }
  }
  return best;
}

HexbinGrid finish_hexbin(const HexLayout& layout, const std::map<std::pair<int, int>, std::int64_t>& counts,
                         std::string x_column, std::string y_column) {
  HexbinGrid g;
  g.x_column = std::move(x_column);
  g.y_column = std::move(y_column);
  g.gridsize = layout.gridsize;
  g.x_min = layout.x_min;
  g.x_max = layout.x_max;
  g.y_min = layout.y_min;
  g.y_max = layout.y_max;
  g.hex_size = hex_size();
  g.degenerate = layout.degenerate;
  for (const auto& [qr, n] : counts) {
    if (n == 0) continue;
    HexCell cell;
    cell.q = qr.first;
    cell.r = qr.second;
    const auto [hx, hy] = hex_centre(cell.q, cell.r);
    cell.cx = layout.x_max > layout.x_min ? layout.x_min + hx / layout.gridsize * (layout.x_max - layout.x_min)
                                           : layout.x_min;
    cell.cy = layout.y_max > layout.y_min ? layout.y_min + hy / layout.gridsize * (layout.y_max - layout.y_min)
                                           : layout.y_min;
    cell.count = n;
    g.total += n;
    g.cells.push_back(cell);
  }
  return g;
}

HexbinGrid finish_hexbin(const PairSample& p, std::string x_column, std::string y_column, int gridsize) {
  if (p.x.empty()) throw NoData("no complete (" + x_column + ", " + y_column + ") pairs");
  const auto [xlo, xhi] = std::minmax_element(p.x.begin(), p.x.end());
  const auto [ylo, yhi] = std::minmax_element(p.y.begin(), p.y.end());
  const auto layout = hex_layout(*xlo, *xhi, *ylo, *yhi, gridsize);
  std::map<std::pair<int, int>, std::int64_t> counts;
  for (std::size_t i = 0; i < p.x.size(); ++i) ++counts[hex_of(layout, p.x[i], p.y[i])];
  return finish_hexbin(layout, counts, std::move(x_column), std::move(y_column));
}

HexbinGrid hexbin(const Column& x, const Column& y, int gridsize) {
  return finish_hexbin(complete_pairs(x, y), x.name, y.name, gridsize);
}

std::vector<std::int64_t> joint_counts(const Chunk& x, const Chunk& y, std::size_t nx, std::size_t ny) {
  std::vector<std::int64_t> joint(nx * ny, 0);
  for (std::size_t i = 0; i < x.row_count(); ++i)
    if (x.valid(i) && y.valid(i))
      ++joint[static_cast<std::size_t>(x.codes[i]) * ny + static_cast<std::size_t>(y.codes[i])];
  return joint;
}

CrossCounts finish_cross(const std::vector<std::int64_t>& joint, const Column& x, const Column& y, std::size_t top_k) {
  const std::size_t nx = x.category_count(), ny = y.category_count();
  std::vector<std::int64_t> mx(nx, 0), my(ny, 0);
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < ny; ++b) {
      mx[a] += joint[a * ny + b];
      my[b] += joint[a * ny + b];
    }
  CrossCounts out;
  out.x_column = x.name;
  out.y_column = y.name;
  const auto tx = top_k_indices(mx, *x.dictionary, top_k);
  const auto ty = top_k_indices(my, *y.dictionary, top_k);
  if (tx.empty()) throw NoData("no complete (" + x.name + ", " + y.name + ") rows");
  for (auto a : tx) out.x_labels.push_back((*x.dictionary)[a]);
  for (auto b : ty) out.y_labels.push_back((*y.dictionary)[b]);
  for (auto a : tx)
    for (auto b : ty) out.counts.push_back(joint[a * ny + b]);
  return out;
}

CrossCounts cross_counts(const Column& x, const Column& y, std::size_t top_k) {
  require_categorical(x);
  require_categorical(y);
  std::vector<std::int64_t> joint(x.category_count() * y.category_count(), 0);
  for (std::size_t c = 0; c < x.chunks.size(); ++c)
    merge_counts(joint, joint_counts(x.chunks[c], y.chunks[c], x.category_count(), y.category_count()));
  return finish_cross(joint, x, y, top_k);
}

HistogramGroup finish_category_histograms(const GroupedValues& g, const Column& num, const Column& cat,
                                          std::size_t bins, std::size_t top_k) {
  std::vector<std::int64_t> counts(g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) counts[i] = static_cast<std::int64_t>(g.values[i].size());
  const auto top = top_k_indices(counts, *cat.dictionary, top_k);
  if (top.empty()) throw NoData("no complete (" + num.name + ", " + cat.name + ") rows");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (auto i : top)
    for (double v : g.values[i]) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  const auto edges = uniform_edges(lo, hi, bins);
  HistogramGroup out;
  out.column = num.name;
  out.group_column = cat.name;
  for (auto i : top) {
    Histogram h;
    h.column = num.name;
    h.edges = edges;
    h.counts.assign(edges.size() - 1, 0);
    for (double v : g.values[i])
      if (const auto b = bin_index(v, edges)) ++h.counts[*b];
    out.labels.push_back((*cat.dictionary)[i]);
    out.histograms.push_back(std::move(h));
  }
  return out;
}

HistogramGroup category_histograms(const Column& num, const Column& cat, std::size_t bins, std::size_t top_k) {
  return finish_category_histograms(grouped_values(num, cat), num, cat, bins, top_k);
}

BoxGroup finish_binned_box(const PairSample& p, std::string x_column, std::string y_column, std::size_t bins,
                           std::size_t max_outliers) {
  if (p.x.empty()) throw NoData("no complete (" + x_column + ", " + y_column + ") pairs");
  const auto [lo, hi] = std::minmax_element(p.x.begin(), p.x.end());
  const auto edges = uniform_edges(*lo, *hi, bins);
  const std::size_t nb = edges.size() - 1;
  std::vector<std::vector<double>> groups(nb);
  for (std::size_t i = 0; i < p.x.size(); ++i)
    if (const auto b = bin_index(p.x[i], edges)) groups[*b].push_back(p.y[i]);
  BoxGroup out;
  out.column = std::move(y_column);
  out.group_column = std::move(x_column);
  for (std::size_t b = 0; b < nb; ++b) {
    auto label = range_label(edges[b], edges[b + 1], b + 1 == nb);
    if (groups[b].empty())
      out.omitted.push_back(std::move(label));
    else
      out.boxes.push_back(box_stats(groups[b], max_outliers, std::move(label)));
  }
  return out;
}

BoxGroup binned_box(const Column& x, const Column& y, std::size_t bins, std::size_t max_outliers) {
  return finish_binned_box(complete_pairs(x, y), x.name, y.name, bins, max_outliers);
}

}  // namespace eda::analytics
