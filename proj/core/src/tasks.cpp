#include "eda/tasks.hpp"

#include <algorithm>
#include <any>
#include <cmath>
#include <map>

#include "eda/analytics.hpp"
#include "eda/error.hpp"
#include "planner.hpp"

namespace eda {
namespace {

namespace an = eda::analytics;
using detail::PanelPlan;
using detail::Planner;

std::string panel_title(ChartKind kind, const std::vector<std::string>& columns) {
  std::string t(chart_label(kind));
  if (columns.empty()) return t;
  t += " (";
  for (std::size_t i = 0; i < columns.size(); ++i) t += (i ? ", " : "") + columns[i];
  return t + ")";
}

template <std::size_t I = 0>
Intermediate from_any(const std::any& a) {
  if constexpr (I == std::variant_size_v<Intermediate>) {
    throw UnknownKind(std::string("node value is not an intermediate: ") + a.type().name());
  } else {
    using T = std::variant_alternative_t<I, Intermediate>;
    if (const auto* v = std::any_cast<T>(&a)) return *v;
    return from_any<I + 1>(a);
  }
}

std::vector<Insight> with_anchor(std::vector<Insight> in, std::string_view want) {
  std::vector<Insight> out;
  for (auto& i : in)
    if (i.anchor == want) out.push_back(std::move(i));
  return out;
}

ColumnStats quick_stats(const graph::Results& res, graph::NodeId node, const Column& col) {
  return an::finish_stats(res.get<an::StatsPartial>(node), col, {});
}

std::vector<Insight> panel_insights(const PanelPlan& p, const Panel& panel, const graph::Results& res,
                                    const DataFrame& df, const ConfigTree& cfg) {
  std::vector<Insight> out;
  const auto aux = [&](const std::string& key) -> std::optional<graph::NodeId> {
    const auto it = p.aux.find(key);
    if (it == p.aux.end() || !res.has(it->second)) return std::nullopt;
    return it->second;
  };
  const auto append = [&](std::vector<Insight> v) {
    for (auto& i : v) out.push_back(std::move(i));
  };

  switch (p.kind) {
    case ChartKind::Overview:
      for (const auto& col : df.columns())
        if (const auto s = aux("stats:" + col.name))
          append(with_anchor(insights::detect_stat_insights(quick_stats(res, *s, col), cfg), "stats"));
      break;
    case ChartKind::Stats:
      if (const auto s = aux("stats"))
        append(with_anchor(insights::detect_stat_insights(quick_stats(res, *s, df.column(p.columns[0])), cfg),
                           "stats"));
      break;
    case ChartKind::Histogram: {
      const auto s = aux("stats");
      if (!s || !panel.data) break;
      const auto& col = df.column(p.columns[0]);
      append(with_anchor(insights::detect_stat_insights(quick_stats(res, *s, col), cfg), "histogram"));
      const auto& partial = res.get<an::StatsPartial>(*s);
      std::vector<std::int64_t> counts;
      if (partial.value_counts.size() <= static_cast<std::size_t>(cfg.get_int("hist.bins"))) {
        for (const auto& [v, c] : partial.value_counts)
          if (std::isfinite(v)) counts.push_back(c);
      } else {
        counts = std::get<Histogram>(*panel.data).counts;
      }
      if (auto u = insights::test_uniform(counts, col.name, cfg, "histogram")) out.push_back(std::move(*u));
      break;
    }
    case ChartKind::Bar: {
      const auto s = aux("stats");
      if (!s) break;
      std::vector<std::int64_t> counts;
      for (auto c : res.get<an::StatsPartial>(*s).code_counts)
        if (c > 0) counts.push_back(c);
      if (auto u = insights::test_uniform(counts, p.columns[0], cfg, "bar")) out.push_back(std::move(*u));
      break;
    }
    case ChartKind::QQNormal:
      if (const auto s = aux("normal_sample"))
        if (auto n = insights::test_normal(res.get<detail::SampleSet>(*s).values, p.columns[0], cfg))
          out.push_back(std::move(*n));
      break;
    case ChartKind::CorrPearson:
    case ChartKind::CorrSpearman:
    case ChartKind::CorrKendall: {
      std::vector<CorrMatrix> ms;
      for (const auto& [key, node] : p.aux)
        if (key.rfind("corr:", 0) == 0 && res.has(node)) ms.push_back(res.get<CorrMatrix>(node));
      // Keep the method order of the task, not the map's key order.
      std::sort(ms.begin(), ms.end(), [](const auto& a, const auto& b) {
        const auto rank = [](const std::string& m) { return m == "pearson" ? 0 : m == "spearman" ? 1 : 2; };
        return rank(a.method) < rank(b.method);
      });
      append(with_anchor(insights::detect_corr_insights(ms, cfg), to_string(p.kind)));
      break;
    }
    case ChartKind::RankPearson:
    case ChartKind::RankSpearman:
    case ChartKind::RankKendall:
      if (const auto m = aux("corr")) {
        const CorrMatrix& cm = res.get<CorrMatrix>(*m);
        for (auto& i : insights::detect_corr_insights(std::span(&cm, 1), cfg))
          if (std::find(i.columns.begin(), i.columns.end(), p.columns[0]) != i.columns.end()) out.push_back(i);
      }
      break;
    case ChartKind::CorrScatter:
      if (panel.data) {
        const auto& s = std::get<ScatterPoints>(*panel.data);
        CorrMatrix cm;
        cm.method = "pearson";
        cm.columns = {s.x_column, s.y_column};
        cm.values = {1.0, s.r, s.r, 1.0};
        append(insights::detect_corr_insights(std::span(&cm, 1), cfg));
      }
      break;
    case ChartKind::Impact:
      if (panel.data)
        if (auto i = insights::detect_impact(std::get<ImpactPair>(*panel.data), cfg)) out.push_back(std::move(*i));
      break;
    default: break;
  }
  for (auto& i : out) i.anchor = std::string(to_string(p.kind));
  return out;
}

Panel make_panel(const PanelPlan& p, const graph::Results& res, const DataFrame& df, const ConfigTree& cfg) {
  Panel panel;
  panel.kind = p.kind;
  panel.columns = p.columns;
  panel.title = panel_title(p.kind, p.columns);
  if (res.has(p.node))
    panel.data = from_any(res.raw(p.node));
  else
    panel.skip_reason = res.skipped(p.node).value_or("not computed");
  panel.insights = panel_insights(p, panel, res, df, cfg);
  panel.howto = howto_for(p.kind, cfg);
  return panel;
}

DatasetInfo dataset_info(const DataFrame& df) {
  DatasetInfo d;
  d.source = df.source();
  d.rows = df.rows();
  for (const auto& c : df.columns()) d.columns.emplace_back(c.name, c.dtype);
  return d;
}

GraphSummary summarize(const graph::Graph& g, std::size_t executions) {
  return {g.size(), g.count(graph::Stage::Reduce), g.count(graph::Stage::Finalize), executions, g.dump()};
}

graph::ExecOptions exec_options(const RunOptions& o) { return {std::max<std::size_t>(1, o.workers), o.on_progress}; }

// --- report planning ---------------------------------------------------------

struct GroupPlan {
  std::string title;
  std::vector<PanelPlan> panels;
};

struct SectionPlan {
  std::string name;
  std::vector<GroupPlan> groups;
  std::optional<std::string> note;
};

constexpr std::string_view kSections[] = {"Overview", "Variables", "Interactions", "Correlations", "Missing Values"};

SectionPlan plan_section(std::size_t section, Planner& planner, const DataFrame& df, const ConfigTree& cfg) {
  SectionPlan s{std::string(kSections[section]), {}, {}};
  const auto numeric = an::numerical_columns(df);
  switch (section) {
    case 0: {
      const auto kinds = enabled_charts(cfg, {TaskFamily::Plot, {}});
      if (std::find(kinds.begin(), kinds.end(), ChartKind::Overview) != kinds.end())
        s.groups.push_back({"Dataset", planner.plan(TaskFamily::Plot, {}, {ChartKind::Overview})});
      break;
    }
    case 1:
      for (const auto& col : df.columns()) {
        const auto kinds = enabled_charts(cfg, {TaskFamily::Plot, {col.dtype}});
        s.groups.push_back({col.name, planner.plan(TaskFamily::Plot, {col.name}, kinds)});
      }
      break;
    case 2: {
      if (numeric.size() < 2) {
        s.note = "Not applicable: the dataset has fewer than two numerical columns.";
        break;
      }
      if (!cfg.get_bool("scatter.enabled")) break;
      const auto limit = static_cast<std::size_t>(cfg.get_int("corr.max_pairs"));
      for (std::size_t a = 0; a < numeric.size() && s.groups.size() < limit; ++a)
        for (std::size_t b = a + 1; b < numeric.size() && s.groups.size() < limit; ++b) {
          const std::vector<std::string> cols{df.column(numeric[a]).name, df.column(numeric[b]).name};
          s.groups.push_back({cols[0] + " and " + cols[1], planner.plan(TaskFamily::Plot, cols, {ChartKind::Scatter})});
        }
      break;
    }
    case 3: {
      if (numeric.size() < 2) {
        s.note = "Not applicable: the dataset has fewer than two numerical columns.";
        break;
      }
      const auto kinds = enabled_charts(cfg, {TaskFamily::PlotCorrelation, {}});
      if (!kinds.empty()) s.groups.push_back({"Correlation matrices", planner.plan(TaskFamily::PlotCorrelation, {}, kinds)});
      break;
    }
    default: {
      const auto kinds = enabled_charts(cfg, {TaskFamily::PlotMissing, {}});
      if (!kinds.empty()) s.groups.push_back({"Missing values", planner.plan(TaskFamily::PlotMissing, {}, kinds)});
      break;
    }
  }
  return s;
}

}  // namespace

std::string task_label(TaskFamily family, const std::vector<std::string>& columns) {
  std::string out(to_string(family));
  out += "(df";
  for (const auto& c : columns) out += ", " + c;
  return out + ")";
}

TaskSignature resolve_signature(const DataFrame& df, TaskFamily family, const std::vector<std::string>& columns) {
  if (columns.size() > 2)
    throw UnsupportedCombination(std::string(to_string(family)) + " accepts at most two columns, got " +
                                 std::to_string(columns.size()));
  TaskSignature sig{family, {}};
  for (const auto& c : columns) sig.dtypes.push_back(df.column(df.index_of(c)).dtype);
  if (columns.size() == 2 && columns[0] == columns[1])
    throw UnsupportedCombination("name two different columns, got '" + columns[0] + "' twice");
  return sig;
}

std::vector<ChartKind> mapping(const TaskSignature& sig) { return default_charts(sig); }

std::vector<HowtoEntry> howto_for(ChartKind kind, const ConfigTree& cfg) {
  std::vector<HowtoEntry> out;
  for (const auto* def : KeyRegistry::instance().owned_by(kind)) {
    auto value = format_value(cfg.resolve(def->key));
    out.push_back({def->key, value, "--config " + def->key + "=" + value});
  }
  return out;
}

graph::Graph plan_task_graph(const DataFrame& df, TaskFamily family, const std::vector<std::string>& columns,
                             const ConfigTree& cfg) {
  const auto sig = resolve_signature(df, family, columns);
  Planner planner(df, cfg);
  planner.plan(family, columns, enabled_charts(cfg, sig));
  return planner.take_graph();
}

TaskResult run_task(const DataFrame& df, TaskFamily family, const std::vector<std::string>& columns,
                    const ConfigTree& cfg, const RunOptions& options) {
  const auto sig = resolve_signature(df, family, columns);
  const auto kinds = enabled_charts(cfg, sig);
  Planner planner(df, cfg);
  const auto plans = planner.plan(family, columns, kinds);
  const auto before = graph::execution_count();
  const auto results = graph::execute(planner.graph(), df, exec_options(options));

  TaskResult r;
  r.signature = sig;
  r.columns = columns;
  r.task = task_label(family, columns);
  r.dataset = dataset_info(df);
  for (const auto& p : plans) {
    auto panel = make_panel(p, results, df, cfg);
    panel.id = "panel-" + std::to_string(r.panels.size() + 1);
    if (panel.skip_reason) r.diagnostics.push_back({panel.title, *panel.skip_reason});
    r.panels.push_back(std::move(panel));
  }
  r.graph = summarize(planner.graph(), graph::execution_count() - before);
  return r;
}

graph::Graph plan_report_graph(const DataFrame& df, const ConfigTree& cfg) {
  Planner planner(df, cfg);
  for (std::size_t s = 0; s < std::size(kSections); ++s) plan_section(s, planner, df, cfg);
  return planner.take_graph();
}

std::vector<graph::Graph> plan_report_section_graphs(const DataFrame& df, const ConfigTree& cfg) {
  std::vector<graph::Graph> out;
  for (std::size_t s = 0; s < std::size(kSections); ++s) {
    Planner planner(df, cfg);
    plan_section(s, planner, df, cfg);
    out.push_back(planner.take_graph());
  }
  return out;
}

Report create_report(const DataFrame& df, const ConfigTree& cfg, const RunOptions& options) {
  Planner planner(df, cfg);
  std::vector<SectionPlan> plans;
  for (std::size_t s = 0; s < std::size(kSections); ++s) plans.push_back(plan_section(s, planner, df, cfg));
  const auto before = graph::execution_count();
  const auto results = graph::execute(planner.graph(), df, exec_options(options));

  Report report;
  report.dataset = dataset_info(df);
  std::size_t next_id = 1;
  for (const auto& sp : plans) {
    ReportSection section;
    section.name = sp.name;
    section.note = sp.note;
    for (const auto& gp : sp.groups) {
      PanelGroup group;
      group.title = gp.title;
      for (const auto& p : gp.panels) {
        auto panel = make_panel(p, results, df, cfg);
        panel.id = "panel-" + std::to_string(next_id++);
        if (panel.skip_reason) section.diagnostics.push_back({panel.title, *panel.skip_reason});
        group.panels.push_back(std::move(panel));
      }
      section.groups.push_back(std::move(group));
    }
    report.sections.push_back(std::move(section));
  }
  report.graph = summarize(planner.graph(), graph::execution_count() - before);
  return report;
}

}  // namespace eda
