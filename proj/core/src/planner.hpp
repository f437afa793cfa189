#pragma once

#include <map>
#include <string>
#include <vector>

#include "eda/charts.hpp"
#include "eda/config.hpp"
#include "eda/frame.hpp"
#include "eda/graph.hpp"

namespace eda::detail {

/// A panel before execution: the node holding its data plus the extra nodes
/// its insights read.
struct PanelPlan {
  ChartKind kind;
  std::vector<std::string> columns;
  graph::NodeId node;
  std::map<std::string, graph::NodeId> aux;
};

/// Adds nodes to one shared graph. Identical computations requested by
/// different panels collapse into a single node.
class Planner {
 public:
  Planner(const DataFrame& df, const ConfigTree& cfg) : df_(df), cfg_(cfg) {}

  graph::Graph& graph() noexcept { return graph_; }
  graph::Graph take_graph() { return std::move(graph_); }

  /// Panels of one task; `kinds` are the enabled charts of its signature.
  std::vector<PanelPlan> plan(TaskFamily family, const std::vector<std::string>& columns,
                              const std::vector<ChartKind>& kinds);

  graph::NodeId dataset();
  graph::NodeId stats(std::size_t col);
  graph::NodeId quantiles(std::size_t col, std::vector<double> probs);
  graph::NodeId column_stats(std::size_t col);
  graph::NodeId histogram(std::size_t col, std::int64_t bins);
  graph::NodeId sample(std::size_t col, std::int64_t cap, std::int64_t seed);
  graph::NodeId kde(std::size_t col);
  graph::NodeId qq(std::size_t col);
  graph::NodeId box(std::size_t col);
  graph::NodeId bar(std::size_t col, std::int64_t top_k);
  graph::NodeId pairs(std::size_t x, std::size_t y);
  graph::NodeId scatter(std::size_t x, std::size_t y);
  graph::NodeId hexbin(std::size_t x, std::size_t y);
  graph::NodeId binned_box(std::size_t x, std::size_t y);
  graph::NodeId grouped(std::size_t num, std::size_t cat);
  graph::NodeId grouped_box(std::size_t num, std::size_t cat);
  graph::NodeId category_histograms(std::size_t num, std::size_t cat);
  graph::NodeId cross(std::size_t x, std::size_t y);
  graph::NodeId corr(std::string_view method);
  graph::NodeId rank(std::string_view method, std::size_t col);
  graph::NodeId missing();
  graph::NodeId missing_bar();
  graph::NodeId spectrum();
  graph::NodeId nullity();
  graph::NodeId dendrogram();
  graph::NodeId impact(std::size_t anchor, std::size_t col, bool with_cdf);

  /// Probabilities the shared quantile node of a numerical column serves.
  std::vector<double> univariate_probs() const;

 private:
  PanelPlan univariate_panel(ChartKind kind, std::size_t col);
  const std::string& name(std::size_t col) const { return df_.column(col).name; }

  const DataFrame& df_;
  const ConfigTree& cfg_;
  graph::Graph graph_;
};

/// Value of a quantile node: the requested probabilities and their values
/// (empty when the column has no finite value).
struct QuantileSet {
  std::vector<double> probs;
  std::vector<double> values;

  double at(double p) const;
};

/// Value of a sample node: at most `cap` finite values in row order.
struct SampleSet {
  std::vector<double> values;
  std::size_t n_total = 0;
  bool sampled = false;
};

}  // namespace eda::detail
