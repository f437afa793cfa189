#include <cmath>
#include <cstdio>

#include "eda/render.hpp"
#include "json.hpp"

namespace eda::render {
namespace {

using Json = nlohmann::ordered_json;

void write(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::null:
    case Json::value_t::discarded: out += "null"; break;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
    case Json::value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); break;
    case Json::value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); break;
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else if (v == 0) {
        out += '0';
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
      }
      break;
    }
    case Json::value_t::string:
    case Json::value_t::binary: out += j.dump(); break;
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        write(e, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(k).dump();
        out += ':';
        write(v, out);
      }
      out += '}';
      break;
    }
  }
}

std::string dump(const Json& j) {
  std::string out;
  write(j, out);
  out += '\n';
  return out;
}

Json arr(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

template <class T>
Json arr_int(const std::vector<T>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Json arr(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

Json to_json(const Histogram& h) {
  return Json{{"column", h.column}, {"edges", arr(h.edges)}, {"counts", arr_int(h.counts)}};
}

Json to_json(const BarCounts& b) {
  return Json{{"column", b.column},     {"labels", arr(b.labels)},     {"counts", arr_int(b.counts)},
              {"other", b.other},       {"distinct", b.distinct},      {"total", b.total}};
}

Json to_json(const BoxStats& b) {
  return Json{{"label", b.label},
              {"n", b.n},
              {"q1", b.q1},
              {"median", b.median},
              {"q3", b.q3},
              {"lower_fence", b.lower_fence},
              {"upper_fence", b.upper_fence},
              {"lower_whisker", b.lower_whisker},
              {"upper_whisker", b.upper_whisker},
              {"outliers", arr(b.outliers)},
              {"n_outliers", b.n_outliers}};
}

Json to_json(const Ecdf& e) { return Json{{"x", arr(e.x)}, {"p", arr(e.p)}}; }

template <class T>
Json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  return to_json(*v);
}

Json to_json(const ColumnStats& c) {
  Json q = Json::array();
  for (double v : c.quantiles) q.push_back(v);
  Json j{{"column", c.column},
         {"dtype", std::string(to_string(c.dtype))},
         {"n", c.n},
         {"n_missing", c.n_missing},
         {"n_distinct", c.n_distinct}};
  if (c.dtype == DType::Numerical) {
    j["n_infinite"] = c.n_infinite;
    j["n_zero"] = c.n_zero;
    j["n_negative"] = c.n_negative;
    j["min"] = c.min;
    j["max"] = c.max;
    j["mean"] = c.mean;
    j["std"] = c.std;
    j["variance"] = c.variance;
    j["skewness"] = c.skewness;
    j["kurtosis"] = c.kurtosis;
    Json probs = Json::array();
    for (double p : kStatsProbs) probs.push_back(p);
    j["quantile_probs"] = probs;
    j["quantiles"] = q;
  } else {
    j["top"] = c.top;
    j["top_count"] = c.top_count;
  }
  return j;
}

Json to_json(const KdeCurve& k) {
  return Json{{"column", k.column},       {"x", arr(k.x)},        {"density", arr(k.density)},
              {"bandwidth", k.bandwidth}, {"n_used", k.n_used},   {"n_total", k.n_total},
              {"sampled", k.sampled},     {"histogram", opt(k.histogram)}};
}

Json to_json(const QQPoints& q) {
  return Json{{"column", q.column},
              {"theoretical", arr(q.theoretical)},
              {"sample", arr(q.sample)},
              {"mean", q.mean},
              {"std", q.std}};
}

Json to_json(const BoxGroup& g) {
  Json boxes = Json::array();
  for (const auto& b : g.boxes) boxes.push_back(to_json(b));
  return Json{{"column", g.column}, {"group_column", g.group_column}, {"boxes", boxes}, {"omitted", arr(g.omitted)}};
}

Json to_json(const CorrMatrix& m) {
  return Json{{"method", m.method},          {"columns", arr(m.columns)},
              {"values", arr(m.values)},     {"max_rows_used", m.max_rows_used},
              {"sampled", m.sampled},        {"constant_columns", arr(m.constant_columns)}};
}

Json to_json(const CorrRanking& r) {
  return Json{{"method", r.method}, {"anchor", r.anchor}, {"columns", arr(r.columns)}, {"values", arr(r.values)}};
}

Json to_json(const ScatterPoints& p) {
  return Json{{"x_column", p.x_column}, {"y_column", p.y_column}, {"x", arr(p.x)},         {"y", arr(p.y)},
              {"n_pairs", p.n_pairs},   {"sampled", p.sampled},   {"slope", p.slope},      {"intercept", p.intercept},
              {"r", p.r}};
}

Json to_json(const HexbinGrid& g) {
  Json cells = Json::array();
  for (const auto& c : g.cells) cells.push_back(Json{{"q", c.q}, {"r", c.r}, {"cx", c.cx}, {"cy", c.cy}, {"count", c.count}});
  return Json{{"x_column", g.x_column}, {"y_column", g.y_column}, {"gridsize", g.gridsize}, {"x_min", g.x_min},
              {"x_max", g.x_max},       {"y_min", g.y_min},       {"y_max", g.y_max},       {"hex_size", g.hex_size},
              {"degenerate", g.degenerate}, {"cells", cells},     {"total", g.total}};
}

Json to_json(const MissingBar& m) {
  return Json{{"columns", arr(m.columns)}, {"missing", arr_int(m.missing)}, {"pct", arr(m.pct)}, {"rows", m.rows}};
}

Json to_json(const MissingSpectrum& m) {
  return Json{{"columns", arr(m.columns)},
              {"segment_start", arr_int(m.segment_start)},
              {"segment_rows", arr_int(m.segment_rows)},
              {"fractions", arr(m.fractions)}};
}

Json to_json(const NullityCorr& n) {
  return Json{{"columns", arr(n.columns)}, {"values", arr(n.values)}, {"excluded", arr(n.excluded)}};
}

Json to_json(const DendrogramTree& t) {
  Json merges = Json::array();
  for (const auto& m : t.merges)
    merges.push_back(Json{{"left", m.left}, {"right", m.right}, {"height", m.height}, {"size", m.size}});
  return Json{{"leaves", arr(t.leaves)}, {"merges", merges}, {"leaf_order", arr_int(t.leaf_order)}};
}

Json to_json(const ImpactPair& p) {
  Json j{{"anchor", p.anchor},
         {"column", p.column},
         {"dtype", std::string(to_string(p.dtype))},
         {"anchor_fully_observed", p.anchor_fully_observed},
         {"before_n", p.before_n},
         {"after_n", p.after_n},
         {"before_hist", opt(p.before_hist)},
         {"after_hist", opt(p.after_hist)},
         {"before_bars", opt(p.before_bars)},
         {"after_bars", opt(p.after_bars)},
         {"before_cdf", opt(p.before_cdf)},
         {"after_cdf", opt(p.after_cdf)}};
  j["ks_distance"] = p.ks_distance ? Json(*p.ks_distance) : Json(nullptr);
  return j;
}

Json to_json(const DatasetStats& d) {
  Json types = Json::array();
  for (const auto& [name, dtype] : d.dtypes) types.push_back(Json{{"name", name}, {"dtype", std::string(to_string(dtype))}});
  return Json{{"rows", d.rows},
              {"columns", d.columns},
              {"numerical", d.numerical},
              {"categorical", d.categorical},
              {"missing_cells", d.missing_cells},
              {"missing_pct", d.missing_pct},
              {"duplicate_rows", d.duplicate_rows},
              {"dtypes", types}};
}

Json to_json(const CrossCounts& c) {
  return Json{{"x_column", c.x_column}, {"y_column", c.y_column}, {"x_labels", arr(c.x_labels)},
              {"y_labels", arr(c.y_labels)}, {"counts", arr_int(c.counts)}};
}

Json to_json(const HistogramGroup& g) {
  Json hists = Json::array();
  for (const auto& h : g.histograms) hists.push_back(to_json(h));
  return Json{{"column", g.column}, {"group_column", g.group_column}, {"labels", arr(g.labels)}, {"histograms", hists}};
}

Json intermediate_json(const Intermediate& i) {
  Json j{{"type", std::string(intermediate_kind(i))}};
  Json body = std::visit([](const auto& v) { return to_json(v); }, i);
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

Json insight_json(const Insight& i) {
  return Json{{"kind", std::string(to_string(i.kind))},
              {"columns", arr(i.columns)},
              {"observed", i.observed},
              {"threshold", i.threshold},
              {"severity", std::string(to_string(i.severity))},
              {"message", i.message},
              {"anchor", i.anchor}};
}

Json panel_json(const Panel& p) {
  Json insights = Json::array(), howto = Json::array();
  for (const auto& i : p.insights) insights.push_back(insight_json(i));
  for (const auto& h : p.howto) howto.push_back(Json{{"key", h.key}, {"value", h.value}, {"snippet", h.snippet}});
  Json j{{"id", p.id}, {"kind", std::string(to_string(p.kind))}, {"title", p.title}, {"columns", arr(p.columns)}};
  j["intermediate"] = p.data ? intermediate_json(*p.data) : Json(nullptr);
  if (p.skip_reason) j["skip_reason"] = *p.skip_reason;
  j["insights"] = insights;
  j["howto"] = howto;
  return j;
}

Json dataset_json(const DatasetInfo& d) {
  Json cols = Json::array();
  for (const auto& [name, dtype] : d.columns) cols.push_back(Json{{"name", name}, {"dtype", std::string(to_string(dtype))}});
  return Json{{"source", d.source}, {"rows", d.rows}, {"columns", cols}};
}

Json diagnostics_json(const std::vector<Diagnostic>& ds) {
  Json a = Json::array();
  for (const auto& d : ds) a.push_back(Json{{"panel", d.panel}, {"reason", d.reason}});
  return a;
}

Json graph_json(const GraphSummary& g) {
  return Json{{"nodes", g.nodes},
              {"reduce_nodes", g.reduce_nodes},
              {"finalize_nodes", g.finalize_nodes},
              {"executions", g.executions}};
}

}  // namespace

std::string export_json(const TaskResult& r) {
  Json panels = Json::array();
  for (const auto& p : r.panels) panels.push_back(panel_json(p));
  Json j{{"schema_version", "1"}, {"task", r.task}, {"dataset", dataset_json(r.dataset)}, {"panels", panels}};
  j["diagnostics"] = diagnostics_json(r.diagnostics);
  j["graph"] = graph_json(r.graph);
  return dump(j);
}

std::string export_json(const Report& report) {
  Json sections = Json::array();
  for (const auto& s : report.sections) {
    Json groups = Json::array();
    for (const auto& g : s.groups) {
      Json panels = Json::array();
      for (const auto& p : g.panels) panels.push_back(panel_json(p));
      groups.push_back(Json{{"title", g.title}, {"panels", panels}});
    }
    Json sj{{"name", s.name}};
    sj["note"] = s.note ? Json(*s.note) : Json(nullptr);
    sj["groups"] = groups;
    sj["diagnostics"] = diagnostics_json(s.diagnostics);
    sections.push_back(sj);
  }
  Json j{{"schema_version", "1"},
         {"task", "create_report(df)"},
         {"dataset", dataset_json(report.dataset)},
         {"sections", sections}};
  j["graph"] = graph_json(report.graph);
  return dump(j);
}

std::string normalize_json(std::string_view text) { return dump(Json::parse(text)); }

}  // namespace eda::render
