#include "planner.hpp"

#include <algorithm>
#include <cmath>

#include "eda/analytics.hpp"
#include "eda/error.hpp"
#include "eda/special.hpp"

namespace eda::detail {

using graph::ChunkRef;
using graph::Inputs;
using graph::NodeId;
using graph::Params;
namespace an = eda::analytics;

double QuantileSet::at(double p) const {
  const auto it = std::lower_bound(probs.begin(), probs.end(), p);
  if (it == probs.end() || *it != p) throw std::out_of_range("quantile probability not planned");
  return values.at(static_cast<std::size_t>(it - probs.begin()));
}

namespace {

std::vector<double> finite_values(const Chunk& c) {
  std::vector<double> out;
  out.reserve(c.row_count());
  for (std::size_t i = 0; i < c.row_count(); ++i)
    if (c.valid(i) && std::isfinite(c.values[i])) out.push_back(c.values[i]);
  return out;
}

template <class T>
T identity(T&& v, const Inputs&, const DataFrame&) {
  return std::move(v);
}

struct SamplePartial {
  std::vector<an::SampleEntry> entries;
  std::size_t n = 0;
};

using Hashes = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

}  // namespace

std::vector<double> Planner::univariate_probs() const {
  std::vector<double> probs(kStatsProbs.begin(), kStatsProbs.end());
  for (double p : an::qq_probs(static_cast<std::size_t>(cfg_.get_int("qq.points")))) probs.push_back(p);
  std::sort(probs.begin(), probs.end());
  probs.erase(std::unique(probs.begin(), probs.end()), probs.end());
  return probs;
}

NodeId Planner::dataset() {
  return graph_.add_reduce(
      "dataset", "", {},
      graph::reduce_kernel<Hashes>(
          [](const Inputs&, const ChunkRef& r) { return an::row_hashes(r.df, r.index); },
          [](Hashes& a, Hashes&& b) { a.insert(a.end(), b.begin(), b.end()); },
          [](Hashes&& h, const Inputs&, const DataFrame& df) { return an::finish_dataset_stats(df, std::move(h)); }));
}

NodeId Planner::stats(std::size_t col) {
  const auto dtype = df_.column(col).dtype;
  const auto cats = df_.column(col).category_count();
  return graph_.add_reduce(
      "stats", Params().add("col", name(col)).str(), {},
      graph::reduce_kernel<an::StatsPartial>(
          [=](const Inputs&, const ChunkRef& r) { return an::partial_stats(r.chunk(col), dtype, cats); },
          [](an::StatsPartial& a, an::StatsPartial&& b) { an::merge_stats(a, std::move(b)); },
          identity<an::StatsPartial>));
}

NodeId Planner::quantiles(std::size_t col, std::vector<double> probs) {
  const auto params = Params().add("col", name(col)).add("probs", probs).str();
  return graph_.add_reduce(
      "quantiles", params, {},
      graph::reduce_kernel<std::vector<double>>(
          [=](const Inputs&, const ChunkRef& r) { return an::sorted_finite(r.chunk(col)); },
          [](std::vector<double>& a, std::vector<double>&& b) { an::merge_sorted(a, std::move(b)); },
          [probs](std::vector<double>&& sorted, const Inputs&, const DataFrame&) {
            QuantileSet q{probs, {}};
            if (!sorted.empty())
              for (double p : probs) q.values.push_back(an::quantile_sorted(sorted, p));
            return q;
          }));
}

NodeId Planner::column_stats(std::size_t col) {
  const auto s = stats(col);
  if (df_.column(col).dtype == DType::Categorical) {
    return graph_.add_finalize("column_stats", Params().add("col", name(col)).str(), {s},
                               graph::finalize_kernel([col](const Inputs& in, const DataFrame& df) {
                                 return an::finish_stats(in.get<an::StatsPartial>(0), df.column(col), {});
                               }));
  }
  const auto q = quantiles(col, univariate_probs());
  return graph_.add_finalize("column_stats", Params().add("col", name(col)).str(), {s, q},
                             graph::finalize_kernel([col](const Inputs& in, const DataFrame& df) {
                               const auto& qs = in.get<QuantileSet>(1);
                               std::vector<double> values;
                               if (!qs.values.empty())
                                 for (double p : kStatsProbs) values.push_back(qs.at(p));
                               return an::finish_stats(in.get<an::StatsPartial>(0), df.column(col), values);
                             }));
}

NodeId Planner::histogram(std::size_t col, std::int64_t bins) {
  const auto s = stats(col);
  const auto nb = static_cast<std::size_t>(bins);
  const auto edges_of = [nb](const an::StatsPartial& p, const std::string& column) {
    if (p.count == 0) throw NoData("column '" + column + "' has no finite values");
    return an::uniform_edges(p.min, p.max, nb);
  };
  const std::string column = name(col);
  return graph_.add_reduce(
      "histogram", Params().add("col", column).add("bins", bins).str(), {s},
      graph::reduce_kernel<std::vector<std::int64_t>>(
          [=](const Inputs& in, const ChunkRef& r) {
            return an::histogram_partial(r.chunk(col), edges_of(in.get<an::StatsPartial>(0), column));
          },
          [](std::vector<std::int64_t>& a, std::vector<std::int64_t>&& b) { an::merge_counts(a, std::move(b)); },
          [=](std::vector<std::int64_t>&& counts, const Inputs& in, const DataFrame&) {
            Histogram h;
            h.column = column;
            h.edges = edges_of(in.get<an::StatsPartial>(0), column);
            h.counts = std::move(counts);
            return h;
          }));
}

NodeId Planner::sample(std::size_t col, std::int64_t cap, std::int64_t seed) {
  const auto k = static_cast<std::size_t>(cap);
  const auto sd = static_cast<std::uint64_t>(seed);
  return graph_.add_reduce(
      "sample", Params().add("col", name(col)).add("cap", cap).add("seed", seed).str(), {},
      graph::reduce_kernel<SamplePartial>(
          [=](const Inputs&, const ChunkRef& r) {
            SamplePartial p;
            const auto& c = r.chunk(col);
            for (std::size_t i = 0; i < c.row_count(); ++i) {
              if (!c.valid(i) || !std::isfinite(c.values[i])) continue;
              const std::uint64_t row = r.offset + i;
              p.entries.push_back({an::sample_key(sd, row), row, c.values[i], 0});
              ++p.n;
            }
            an::truncate_sample(p.entries, k);
            return p;
          },
          [k](SamplePartial& a, SamplePartial&& b) {
            a.entries.insert(a.entries.end(), b.entries.begin(), b.entries.end());
            a.n += b.n;
            an::truncate_sample(a.entries, k);
          },
          [k](SamplePartial&& p, const Inputs&, const DataFrame&) {
            std::sort(p.entries.begin(), p.entries.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
            SampleSet s;
            for (const auto& e : p.entries) s.values.push_back(e.x);
            s.n_total = p.n;
            s.sampled = p.n > k;
            return s;
          }));
}

NodeId Planner::kde(std::size_t col) {
  const auto s = sample(col, cfg_.get_int("kde.sample"), cfg_.get_int("kde.seed"));
  const auto h = histogram(col, cfg_.get_int("kde.bins"));
  const auto grid = cfg_.get_int("kde.grid_points");
  const std::string column = name(col);
  return graph_.add_finalize("kde", Params().add("col", column).add("grid", grid).str(), {s, h},
                             graph::finalize_kernel([=](const Inputs& in, const DataFrame&) {
                               const auto& smp = in.get<SampleSet>(0);
                               auto k = an::kde(smp.values, static_cast<std::size_t>(grid));
                               k.column = column;
                               k.n_total = smp.n_total;
                               k.sampled = smp.sampled;
                               k.histogram = in.get<Histogram>(1);
                               return k;
                             }));
}

NodeId Planner::qq(std::size_t col) {
  const auto s = stats(col);
  const auto q = quantiles(col, univariate_probs());
  const auto points = cfg_.get_int("qq.points");
  const std::string column = name(col);
  return graph_.add_finalize(
      "qq_normal", Params().add("col", column).add("points", points).str(), {s, q},
      graph::finalize_kernel([=](const Inputs& in, const DataFrame&) {
        const auto& p = in.get<an::StatsPartial>(0);
        const auto& qs = in.get<QuantileSet>(1);
        if (p.count < 2) throw NoData("normal Q-Q plot needs at least two finite values");
        const double sd = std::sqrt(an::sample_variance(p));
        if (!(sd > 0)) throw DegenerateSpread("normal Q-Q plot of a constant column");
        QQPoints out;
        out.column = column;
        out.mean = p.mean;
        out.std = sd;
        for (double pr : an::qq_probs(static_cast<std::size_t>(points))) {
          out.theoretical.push_back(p.mean + sd * special::normal_quantile(pr));
          out.sample.push_back(qs.at(pr));
        }
        return out;
      }));
}

NodeId Planner::box(std::size_t col) {
  const auto q = quantiles(col, univariate_probs());
  const auto cap = cfg_.get_int("box.max_outliers");
  const std::string column = name(col);
  const auto fences_of = [column](const QuantileSet& qs) {
    if (qs.values.empty()) throw NoData("column '" + column + "' has no finite values");
    return an::tukey_fences(qs.at(0.25), qs.at(0.5), qs.at(0.75));
  };
  return graph_.add_reduce(
      "box", Params().add("col", column).add("max_outliers", cap).str(), {q},
      graph::reduce_kernel<an::BoxPartial>(
          [=](const Inputs& in, const ChunkRef& r) {
            return an::box_partial(finite_values(r.chunk(col)), fences_of(in.get<QuantileSet>(0)));
          },
          [](an::BoxPartial& a, an::BoxPartial&& b) { an::merge_box(a, std::move(b)); },
          [=](an::BoxPartial&& p, const Inputs& in, const DataFrame&) {
            return an::finish_box(std::move(p), fences_of(in.get<QuantileSet>(0)), static_cast<std::size_t>(cap),
                                  column);
          }));
}

NodeId Planner::bar(std::size_t col, std::int64_t top_k) {
  const auto s = stats(col);
  return graph_.add_finalize("bar", Params().add("col", name(col)).add("top_k", top_k).str(), {s},
                             graph::finalize_kernel([=](const Inputs& in, const DataFrame& df) {
                               const auto& c = df.column(col);
                               static const std::vector<std::string> none;
                               return an::bar_from_counts(c.name, c.dictionary ? *c.dictionary : none,
                                                          in.get<an::StatsPartial>(0).code_counts,
                                                          static_cast<std::size_t>(top_k));
                             }));
}

NodeId Planner::pairs(std::size_t x, std::size_t y) {
  return graph_.add_reduce(
      "pairs", Params().add("x", name(x)).add("y", name(y)).str(), {},
      graph::reduce_kernel<an::PairSample>(
          [=](const Inputs&, const ChunkRef& r) { return an::complete_pairs(r.chunk(x), r.chunk(y), r.offset); },
          [](an::PairSample& a, an::PairSample&& b) { an::merge_pairs(a, std::move(b)); },
          identity<an::PairSample>));
}

NodeId Planner::scatter(std::size_t x, std::size_t y) {
  const auto p = pairs(x, y);
  const auto cap = cfg_.get_int("scatter.sample"), seed = cfg_.get_int("scatter.seed");
  const std::string xn = name(x), yn = name(y);
  return graph_.add_finalize("scatter", Params().add("x", xn).add("y", yn).add("sample", cap).add("seed", seed).str(),
                             {p}, graph::finalize_kernel([=](const Inputs& in, const DataFrame&) {
                               return an::finish_scatter(in.get<an::PairSample>(0), xn, yn,
                                                         static_cast<std::size_t>(cap),
                                                         static_cast<std::uint64_t>(seed));
                             }));
}

NodeId Planner::hexbin(std::size_t x, std::size_t y) {
  const auto p = pairs(x, y);
  const auto grid = cfg_.get_int("hexbin.gridsize");
  const std::string xn = name(x), yn = name(y);
  return graph_.add_finalize("hexbin", Params().add("x", xn).add("y", yn).add("gridsize", grid).str(), {p},
                             graph::finalize_kernel([=](const Inputs& in, const DataFrame&) {
                               return an::finish_hexbin(in.get<an::PairSample>(0), xn, yn, static_cast<int>(grid));
                             }));
}

NodeId Planner::binned_box(std::size_t x, std::size_t y) {
  const auto p = pairs(x, y);
  const auto bins = cfg_.get_int("box.bins"), cap = cfg_.get_int("box.max_outliers");
  const std::string xn = name(x), yn = name(y);
  return graph_.add_finalize(
      "binned_box", Params().add("x", xn).add("y", yn).add("bins", bins).add("max_outliers", cap).str(), {p},
      graph::finalize_kernel([=](const Inputs& in, const DataFrame&) {
        return an::finish_binned_box(in.get<an::PairSample>(0), xn, yn, static_cast<std::size_t>(bins),
                                     static_cast<std::size_t>(cap));
      }));
}

NodeId Planner::grouped(std::size_t num, std::size_t cat) {
  const auto cats = df_.column(cat).category_count();
  return graph_.add_reduce(
      "grouped", Params().add("num", name(num)).add("cat", name(cat)).str(), {},
      graph::reduce_kernel<an::GroupedValues>(
          [=](const Inputs&, const ChunkRef& r) { return an::grouped_values(r.chunk(num), r.chunk(cat), cats); },
          [](an::GroupedValues& a, an::GroupedValues&& b) { an::merge_grouped(a, std::move(b)); },
          identity<an::GroupedValues>));
}

NodeId Planner::grouped_box(std::size_t num, std::size_t cat) {
  const auto g = grouped(num, cat);
  const auto cap = cfg_.get_int("box.max_outliers"), top_k = cfg_.get_int("bar.top_k");
  return graph_.add_finalize(
      "grouped_box",
      Params().add("num", name(num)).add("cat", name(cat)).add("max_outliers", cap).add("top_k", top_k).str(), {g},
      graph::finalize_kernel([=](const Inputs& in, const DataFrame& df) {
        return an::finish_grouped_box(in.get<an::GroupedValues>(0), df.column(num), df.column(cat),
                                      static_cast<std::size_t>(cap), static_cast<std::size_t>(top_k));
      }));
}

NodeId Planner::category_histograms(std::size_t num, std::size_t cat) {
  const auto g = grouped(num, cat);
  const auto bins = cfg_.get_int("hist.bins"), top_k = cfg_.get_int("bar.top_k");
  return graph_.add_finalize(
      "category_histograms",
      Params().add("num", name(num)).add("cat", name(cat)).add("bins", bins).add("top_k", top_k).str(), {g},
      graph::finalize_kernel([=](const Inputs& in, const DataFrame& df) {
        return an::finish_category_histograms(in.get<an::GroupedValues>(0), df.column(num), df.column(cat),
                                              static_cast<std::size_t>(bins), static_cast<std::size_t>(top_k));
      }));
}

NodeId Planner::cross(std::size_t x, std::size_t y) {
  const auto nx = df_.column(x).category_count(), ny = df_.column(y).category_count();
  const auto joint = graph_.add_reduce(
      "joint_counts", Params().add("x", name(x)).add("y", name(y)).str(), {},
      graph::reduce_kernel<std::vector<std::int64_t>>(
          [=](const Inputs&, const ChunkRef& r) { return an::joint_counts(r.chunk(x), r.chunk(y), nx, ny); },
          [](std::vector<std::int64_t>& a, std::vector<std::int64_t>&& b) { an::merge_counts(a, std::move(b)); },
          identity<std::vector<std::int64_t>>));
  const auto top_k = cfg_.get_int("bar.top_k");
  return graph_.add_finalize("cross", Params().add("x", name(x)).add("y", name(y)).add("top_k", top_k).str(), {joint},
                             graph::finalize_kernel([=](const Inputs& in, const DataFrame& df) {
                               return an::finish_cross(in.get<std::vector<std::int64_t>>(0), df.column(x),
                                                       df.column(y), static_cast<std::size_t>(top_k));
                             }));
}

NodeId Planner::corr(std::string_view method) {
  const auto cols = an::numerical_columns(df_);
  std::vector<std::string> names;
  for (auto c : cols) names.push_back(name(c));
  const auto require_two = [n = cols.size()] {
    if (n < 2) throw TooFewColumns("correlation needs at least two numerical columns");
  };
  if (method == "pearson") {
    const auto moments = graph_.add_reduce(
        "comoments", Params().add("cols", names).str(), {},
        graph::reduce_kernel<std::vector<an::CoMoments>>(
            [=](const Inputs&, const ChunkRef& r) { return an::comoment_partial(r.df, r.index, cols); },
            [](std::vector<an::CoMoments>& a, std::vector<an::CoMoments>&& b) {
              an::merge_comoments(a, std::move(b));
            },
            identity<std::vector<an::CoMoments>>));
    return graph_.add_finalize("corr", Params().add("method", std::string(method)).add("cols", names).str(),
                               {moments}, graph::finalize_kernel([=](const Inputs& in, const DataFrame& df) {
                                 require_two();
                                 return an::finish_pearson(df, cols, in.get<std::vector<an::CoMoments>>(0));
                               }));
  }
  const auto cap = cfg_.get_int("corr.kendall_cap"), seed = cfg_.get_int("corr.seed");
  Params params;
  params.add("method", std::string(method)).add("cols", names);
  if (method == "kendall") params.add("cap", cap).add("seed", seed);
  return graph_.add_finalize("corr", params.str(), {},
                             graph::finalize_kernel([=, m = std::string(method)](const Inputs&, const DataFrame& df) {
                               require_two();
                               return an::corr_matrix(df, m, static_cast<std::size_t>(cap),
                                                      static_cast<std::uint64_t>(seed));
                             }));
}

NodeId Planner::rank(std::string_view method, std::size_t col) {
  const auto m = corr(method);
  const std::string column = name(col);
  return graph_.add_finalize("corr_rank", Params().add("method", std::string(method)).add("col", column).str(), {m},
                             graph::finalize_kernel([=](const Inputs& in, const DataFrame&) {
                               return an::corr_rank(in.get<CorrMatrix>(0), column);
                             }));
}

NodeId Planner::missing() {
  return graph_.add_reduce(
      "missing", "", {},
      graph::reduce_kernel<an::MissingPartial>(
          [](const Inputs&, const ChunkRef& r) { return an::missing_partial(r.df, r.index); },
          [](an::MissingPartial& a, an::MissingPartial&& b) { an::merge_missing(a, std::move(b)); },
          identity<an::MissingPartial>));
}

NodeId Planner::missing_bar() {
  return graph_.add_finalize("missing_bar", "", {missing()},
                             graph::finalize_kernel([](const Inputs& in, const DataFrame& df) {
                               return an::finish_missing_bar(in.get<an::MissingPartial>(0), df);
                             }));
}

NodeId Planner::spectrum() {
  const auto segments = cfg_.get_int("spectrum.segments");
  const auto s = static_cast<std::size_t>(segments);
  return graph_.add_reduce(
      "spectrum", Params().add("segments", segments).str(), {},
      graph::reduce_kernel<an::SpectrumPartial>(
          [s](const Inputs&, const ChunkRef& r) { return an::spectrum_partial(r.df, r.index, s); },
          [](an::SpectrumPartial& a, an::SpectrumPartial&& b) { an::merge_spectrum(a, std::move(b)); },
          [](an::SpectrumPartial&& p, const Inputs&, const DataFrame& df) { return an::finish_spectrum(p, df); }));
}

NodeId Planner::nullity() {
  return graph_.add_finalize("nullity_corr", "", {missing()},
                             graph::finalize_kernel([](const Inputs& in, const DataFrame& df) {
                               return an::finish_nullity_corr(in.get<an::MissingPartial>(0), df);
                             }));
}

NodeId Planner::dendrogram() {
  return graph_.add_finalize("dendrogram", "", {missing()},
                             graph::finalize_kernel([](const Inputs& in, const DataFrame& df) {
                               return an::finish_dendrogram(in.get<an::MissingPartial>(0), df);
                             }));
}

NodeId Planner::impact(std::size_t anchor, std::size_t col, bool with_cdf) {
  const auto bins = cfg_.get_int("hist.bins"), top_k = cfg_.get_int("bar.top_k");
  return graph_.add_finalize(
      "impact",
      Params()
          .add("anchor", name(anchor))
          .add("col", name(col))
          .add("bins", bins)
          .add("top_k", top_k)
          .add("cdf", std::int64_t{with_cdf})
          .str(),
      {}, graph::finalize_kernel([=](const Inputs&, const DataFrame& df) {
        return an::missing_impact_pair(df, anchor, col, static_cast<std::size_t>(bins),
                                       static_cast<std::size_t>(top_k), with_cdf);
      }));
}

PanelPlan Planner::univariate_panel(ChartKind kind, std::size_t col) {
  PanelPlan p{kind, {name(col)}, {}, {}};
  switch (kind) {
    case ChartKind::Stats: p.node = column_stats(col); break;
    case ChartKind::Histogram: p.node = histogram(col, cfg_.get_int("hist.bins")); break;
    case ChartKind::Kde: p.node = kde(col); break;
    case ChartKind::QQNormal:
      p.node = qq(col);
      p.aux["normal_sample"] = sample(col, cfg_.get_int("insight.normal_sample"), cfg_.get_int("kde.seed"));
      break;
    case ChartKind::Box: p.node = box(col); break;
    case ChartKind::Bar: p.node = bar(col, cfg_.get_int("bar.top_k")); break;
    case ChartKind::Pie: p.node = bar(col, cfg_.get_int("pie.top_k")); break;
    default: throw std::logic_error("not a univariate chart: " + std::string(to_string(kind)));
  }
  p.aux["stats"] = stats(col);
  return p;
}

std::vector<PanelPlan> Planner::plan(TaskFamily family, const std::vector<std::string>& columns,
                                     const std::vector<ChartKind>& kinds) {
  std::vector<std::size_t> idx;
  for (const auto& c : columns) idx.push_back(df_.index_of(c));
  std::vector<PanelPlan> out;
  const auto add = [&](ChartKind kind, std::vector<std::size_t> cols, NodeId node) {
    PanelPlan p{kind, {}, node, {}};
    for (auto c : cols) p.columns.push_back(name(c));
    out.push_back(std::move(p));
    return &out.back();
  };

  switch (family) {
    case TaskFamily::Plot:
      if (idx.empty()) {
        for (auto kind : kinds) {
          if (kind == ChartKind::Overview) {
            auto* p = add(kind, {}, dataset());
            for (std::size_t c = 0; c < df_.width(); ++c) p->aux["stats:" + name(c)] = stats(c);
            continue;
          }
          const auto want = kind == ChartKind::Histogram ? DType::Numerical : DType::Categorical;
          for (std::size_t c = 0; c < df_.width(); ++c)
            if (df_.column(c).dtype == want) out.push_back(univariate_panel(kind, c));
        }
      } else if (idx.size() == 1) {
        for (auto kind : kinds) out.push_back(univariate_panel(kind, idx[0]));
      } else {
        const std::size_t x = idx[0], y = idx[1];
        const bool xn = df_.column(x).dtype == DType::Numerical;
        const std::size_t num = xn ? x : y, cat = xn ? y : x;
        for (auto kind : kinds) {
          switch (kind) {
            case ChartKind::Scatter: add(kind, {x, y}, scatter(x, y)); break;
            case ChartKind::Hexbin: add(kind, {x, y}, hexbin(x, y)); break;
            case ChartKind::BinnedBox: add(kind, {x, y}, binned_box(x, y)); break;
            case ChartKind::GroupedBox: add(kind, {x, y}, grouped_box(num, cat)); break;
            case ChartKind::CategoryHistograms: add(kind, {x, y}, category_histograms(num, cat)); break;
            default: add(kind, {x, y}, cross(x, y)); break;
          }
        }
      }
      break;
    case TaskFamily::PlotCorrelation:
      if (idx.empty()) {
        std::map<std::string, NodeId> all;
        for (auto kind : kinds) all["corr:" + std::string(*chart_method(kind))] = corr(*chart_method(kind));
        for (auto kind : kinds) add(kind, {}, corr(*chart_method(kind)))->aux = all;
      } else if (idx.size() == 1) {
        for (auto kind : kinds) {
          auto* p = add(kind, {idx[0]}, rank(*chart_method(kind), idx[0]));
          p->aux["corr"] = corr(*chart_method(kind));
        }
      } else {
        for (auto kind : kinds) add(kind, {idx[0], idx[1]}, scatter(idx[0], idx[1]));
      }
      break;
    case TaskFamily::PlotMissing:
      if (idx.empty()) {
        for (auto kind : kinds) {
          switch (kind) {
            case ChartKind::MissingBar: add(kind, {}, missing_bar()); break;
            case ChartKind::MissingSpectrum: add(kind, {}, spectrum()); break;
            case ChartKind::NullityHeatmap: add(kind, {}, nullity()); break;
            default: add(kind, {}, dendrogram()); break;
          }
        }
      } else if (idx.size() == 1) {
        for (auto kind : kinds)
          for (std::size_t c = 0; c < df_.width(); ++c)
            if (c != idx[0]) add(kind, {idx[0], c}, impact(idx[0], c, false));
      } else {
        const bool cdf = df_.column(idx[1]).dtype == DType::Numerical;
        for (auto kind : kinds) add(kind, {idx[0], idx[1]}, impact(idx[0], idx[1], cdf));
      }
      break;
  }
  return out;
}

}  // namespace eda::detail
