#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eda/frame.hpp"

namespace eda {

enum class ChartKind {
  Overview,
  Stats,
  Histogram,
  Kde,
  QQNormal,
  Box,
  Bar,
  Pie,
  Scatter,
  Hexbin,
  BinnedBox,
  GroupedBox,
  CategoryHistograms,
  NestedBar,
  StackedBar,
  CrossHeatmap,
  CorrPearson,
  CorrSpearman,
  CorrKendall,
  RankPearson,
  RankSpearman,
  RankKendall,
  CorrScatter,
  MissingBar,
  MissingSpectrum,
  NullityHeatmap,
  NullityDendrogram,
  Impact,
  ImpactCdf,
};

std::string_view to_string(ChartKind kind) noexcept;
/// Human-readable chart name used in titles and tabs.
std::string_view chart_label(ChartKind kind) noexcept;
std::optional<ChartKind> chart_kind_from_string(std::string_view name) noexcept;
const std::vector<ChartKind>& all_chart_kinds();

/// Correlation method behind a corr_* / rank_* chart, if any.
std::optional<std::string_view> chart_method(ChartKind kind) noexcept;

enum class TaskFamily { Plot, PlotCorrelation, PlotMissing };

std::string_view to_string(TaskFamily family) noexcept;

struct TaskSignature {
  TaskFamily family = TaskFamily::Plot;
  /// Resolved dtypes of the named columns; arity is dtypes.size().
  std::vector<DType> dtypes;

  std::size_t arity() const noexcept { return dtypes.size(); }
  friend bool operator==(const TaskSignature&, const TaskSignature&) = default;
};

std::string describe(const TaskSignature& sig);

/// The fixed task -> chart table. Throws UnsupportedCombination for
/// signatures with no mapping row (e.g. correlation on a categorical column).
std::vector<ChartKind> default_charts(const TaskSignature& sig);

}  // namespace eda
