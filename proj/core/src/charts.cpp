#include "eda/charts.hpp"

#include <array>
#include <utility>

#include "eda/error.hpp"

namespace eda {
namespace {

constexpr std::array<std::pair<ChartKind, std::string_view>, 29> kNames{{
    {ChartKind::Overview, "overview"},
    {ChartKind::Stats, "stats"},
    {ChartKind::Histogram, "histogram"},
    {ChartKind::Kde, "kde"},
    {ChartKind::QQNormal, "qq_normal"},
    {ChartKind::Box, "box"},
    {ChartKind::Bar, "bar"},
    {ChartKind::Pie, "pie"},
    {ChartKind::Scatter, "scatter"},
    {ChartKind::Hexbin, "hexbin"},
    {ChartKind::BinnedBox, "binned_box"},
    {ChartKind::GroupedBox, "grouped_box"},
    {ChartKind::CategoryHistograms, "category_histograms"},
    {ChartKind::NestedBar, "nested_bar"},
    {ChartKind::StackedBar, "stacked_bar"},
    {ChartKind::CrossHeatmap, "cross_heatmap"},
    {ChartKind::CorrPearson, "corr_pearson"},
    {ChartKind::CorrSpearman, "corr_spearman"},
    {ChartKind::CorrKendall, "corr_kendall"},
    {ChartKind::RankPearson, "rank_pearson"},
    {ChartKind::RankSpearman, "rank_spearman"},
    {ChartKind::RankKendall, "rank_kendall"},
    {ChartKind::CorrScatter, "corr_scatter"},
    {ChartKind::MissingBar, "missing_bar"},
    {ChartKind::MissingSpectrum, "missing_spectrum"},
    {ChartKind::NullityHeatmap, "nullity_heatmap"},
    {ChartKind::NullityDendrogram, "nullity_dendrogram"},
    {ChartKind::Impact, "impact"},
    {ChartKind::ImpactCdf, "impact_cdf"},
}};

}  // namespace

std::string_view to_string(ChartKind kind) noexcept {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<ChartKind> chart_kind_from_string(std::string_view name) noexcept {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

const std::vector<ChartKind>& all_chart_kinds() {
  static const std::vector<ChartKind> kinds = [] {
    std::vector<ChartKind> out;
    for (const auto& entry : kNames) out.push_back(entry.first);
    return out;
  }();
  return kinds;
}

std::optional<std::string_view> chart_method(ChartKind kind) noexcept {
  switch (kind) {
    case ChartKind::CorrPearson:
    case ChartKind::RankPearson:
      return "pearson";
    case ChartKind::CorrSpearman:
    case ChartKind::RankSpearman:
      return "spearman";
    case ChartKind::CorrKendall:
    case ChartKind::RankKendall:
      return "kendall";
    default:
      return std::nullopt;
  }
}

std::string_view to_string(TaskFamily family) noexcept {
  switch (family) {
    case TaskFamily::Plot:
      return "plot";
    case TaskFamily::PlotCorrelation:
      return "plot_correlation";
    case TaskFamily::PlotMissing:
      return "plot_missing";
  }
  return "unknown";
}

std::string describe(const TaskSignature& sig) {
  std::string out(to_string(sig.family));
  out += "(df";
  for (auto t : sig.dtypes) out += t == DType::Numerical ? ", N" : ", C";
  out += ")";
  return out;
}

std::vector<ChartKind> default_charts(const TaskSignature& sig) {
  using K = ChartKind;
  const auto N = DType::Numerical;
  const auto& t = sig.dtypes;
  switch (sig.family) {
    case TaskFamily::Plot:
      if (t.empty()) return {K::Overview, K::Histogram, K::Bar};
      if (t.size() == 1) {
        if (t[0] == N) return {K::Stats, K::Histogram, K::Kde, K::QQNormal, K::Box};
        return {K::Stats, K::Bar, K::Pie};
      }
      if (t.size() == 2) {
        if (t[0] == N && t[1] == N) return {K::Scatter, K::Hexbin, K::BinnedBox};
        if (t[0] != t[1]) return {K::GroupedBox, K::CategoryHistograms};
        return {K::NestedBar, K::StackedBar, K::CrossHeatmap};
      }
      break;
    case TaskFamily::PlotCorrelation:
      if (t.empty()) return {K::CorrPearson, K::CorrSpearman, K::CorrKendall};
      if (t.size() == 1 && t[0] == N) return {K::RankPearson, K::RankSpearman, K::RankKendall};
      if (t.size() == 2 && t[0] == N && t[1] == N) return {K::CorrScatter};
      if (t.size() <= 2)
        throw UnsupportedCombination(describe(sig) +
                                     " is not supported: correlation analysis needs numerical columns; "
                                     "use plot(df, col1, col2) to compare categorical columns");
      break;
    case TaskFamily::PlotMissing:
      if (t.empty()) return {K::MissingBar, K::MissingSpectrum, K::NullityHeatmap, K::NullityDendrogram};
      if (t.size() == 1) return {K::Impact};
      if (t.size() == 2) {
        if (t[1] == N) return {K::Impact, K::ImpactCdf};
        return {K::Impact};
      }
      break;
  }
  throw UnsupportedCombination(describe(sig) + " is not supported: at most two columns may be named");
}

std::string_view chart_label(ChartKind kind) noexcept {
  switch (kind) {
    case ChartKind::Overview: return "Dataset overview";
    case ChartKind::Stats: return "Statistics";
    case ChartKind::Histogram: return "Histogram";
    case ChartKind::Kde: return "KDE plot";
    case ChartKind::QQNormal: return "Normal Q-Q plot";
    case ChartKind::Box: return "Box plot";
    case ChartKind::Bar: return "Bar chart";
    case ChartKind::Pie: return "Pie chart";
    case ChartKind::Scatter: return "Scatter plot";
    case ChartKind::Hexbin: return "Hexbin plot";
    case ChartKind::BinnedBox: return "Binned box plot";
    case ChartKind::GroupedBox: return "Box plots by category";
    case ChartKind::CategoryHistograms: return "Histograms by category";
    case ChartKind::NestedBar: return "Nested bar chart";
    case ChartKind::StackedBar: return "Stacked bar chart";
    case ChartKind::CrossHeatmap: return "Cross-count heat map";
    case ChartKind::CorrPearson: return "Pearson correlation";
    case ChartKind::CorrSpearman: return "Spearman correlation";
    case ChartKind::CorrKendall: return "Kendall correlation";
    case ChartKind::RankPearson: return "Pearson correlation ranking";
    case ChartKind::RankSpearman: return "Spearman correlation ranking";
    case ChartKind::RankKendall: return "Kendall correlation ranking";
    case ChartKind::CorrScatter: return "Scatter plot with regression line";
    case ChartKind::MissingBar: return "Missing values per column";
    case ChartKind::MissingSpectrum: return "Missing spectrum";
    case ChartKind::NullityHeatmap: return "Nullity correlation";
    case ChartKind::NullityDendrogram: return "Nullity dendrogram";
    case ChartKind::Impact: return "Impact of dropping missing values";
    case ChartKind::ImpactCdf: return "Empirical CDFs before and after dropping";
  }
  return "Chart";
}

}  // namespace eda
