#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eda/charts.hpp"
#include "eda/config.hpp"
#include "eda/frame.hpp"
#include "eda/graph.hpp"
#include "eda/insights.hpp"
#include "eda/intermediate.hpp"

namespace eda {

/// One customisable key of a chart, with the CLI fragment that sets it.
struct HowtoEntry {
  std::string key;
  std::string value;
  std::string snippet;  // `--config key=value`

  friend bool operator==(const HowtoEntry&, const HowtoEntry&) = default;
};

struct Panel {
  std::string id;  // unique within a document, e.g. "panel-3"
  ChartKind kind = ChartKind::Stats;
  std::string title;
  std::vector<std::string> columns;
  std::optional<Intermediate> data;  // empty when the chart was skipped
  std::optional<std::string> skip_reason;
  std::vector<Insight> insights;
  std::vector<HowtoEntry> howto;
};

struct Diagnostic {
  std::string panel;
  std::string reason;
};

struct DatasetInfo {
  std::string source;
  std::size_t rows = 0;
  std::vector<std::pair<std::string, DType>> columns;
};

struct GraphSummary {
  std::size_t nodes = 0;
  std::size_t reduce_nodes = 0;
  std::size_t finalize_nodes = 0;
  std::size_t executions = 0;
  std::string dump;
};

struct TaskResult {
  TaskSignature signature;
  std::vector<std::string> columns;
  std::string task;  // e.g. "plot(df, price)"
  DatasetInfo dataset;
  std::vector<Panel> panels;
  std::vector<Diagnostic> diagnostics;
  GraphSummary graph;
};

/// A titled set of panels inside a report section (one per variable, per
/// column pair, ...).
struct PanelGroup {
  std::string title;
  std::vector<Panel> panels;
};

struct ReportSection {
  std::string name;
  std::vector<PanelGroup> groups;
  std::optional<std::string> note;  // replaces the groups when not applicable
  std::vector<Diagnostic> diagnostics;
};

struct Report {
  DatasetInfo dataset;
  std::vector<ReportSection> sections;
  GraphSummary graph;
};

struct RunOptions {
  std::size_t workers = 1;
  std::function<void(const graph::Progress&)> on_progress;
};

/// Validates the named columns and resolves their dtypes. Throws
/// UnknownColumn or UnsupportedCombination.
TaskSignature resolve_signature(const DataFrame& df, TaskFamily family, const std::vector<std::string>& columns);

/// Chart kinds of a signature (the fixed mapping table).
std::vector<ChartKind> mapping(const TaskSignature& sig);

/// How-to entries for every key registered to the chart kind.
std::vector<HowtoEntry> howto_for(ChartKind kind, const ConfigTree& cfg);

/// Builds one graph for the task, executes it once and assembles the panels.
TaskResult run_task(const DataFrame& df, TaskFamily family, const std::vector<std::string>& columns,
                    const ConfigTree& cfg, const RunOptions& options = {});

/// Whole-dataset report: Overview, Variables, Interactions, Correlations and
/// Missing Values, computed from a single graph.
Report create_report(const DataFrame& df, const ConfigTree& cfg, const RunOptions& options = {});

/// Graph of a task without executing it (for inspection and sharing checks).
graph::Graph plan_task_graph(const DataFrame& df, TaskFamily family, const std::vector<std::string>& columns,
                             const ConfigTree& cfg);
graph::Graph plan_report_graph(const DataFrame& df, const ConfigTree& cfg);
/// Graphs of the report sections planned in isolation, in section order.
std::vector<graph::Graph> plan_report_section_graphs(const DataFrame& df, const ConfigTree& cfg);

std::string task_label(TaskFamily family, const std::vector<std::string>& columns);

}  // namespace eda
