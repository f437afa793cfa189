#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eda/config.hpp"
#include "eda/intermediate.hpp"

namespace eda {

enum class InsightKind {
  Missing,
  Infinite,
  Zeros,
  Negatives,
  Constant,
  HighCardinality,
  Skewed,
  Uniform,
  Normal,
  SimilarDistribution,
  NoImpact,
  HighCorrelation
};

enum class Severity { Info, Warning };

std::string_view to_string(InsightKind k) noexcept;
std::string_view to_string(Severity s) noexcept;

struct Insight {
  InsightKind kind = InsightKind::Missing;
  std::vector<std::string> columns;
  double observed = 0;
  double threshold = 0;
  Severity severity = Severity::Info;
  std::string message;
  std::string anchor;  // chart kind the insight decorates

  friend bool operator==(const Insight&, const Insight&) = default;
};

}  // namespace eda

namespace eda::insights {

/// Firing predicate of the insight's kind applied to its own
/// (observed, threshold) pair.
bool satisfied(const Insight& i) noexcept;

/// Quality insights plus Constant, HighCardinality and Skewed.
std::vector<Insight> detect_stat_insights(const ColumnStats& s, const ConfigTree& cfg);

/// Chi-square test against equal class frequencies. Skipped with fewer than
/// two classes or fewer than five observations per class.
std::optional<Insight> test_uniform(std::span<const std::int64_t> counts, const std::string& column,
                                    const ConfigTree& cfg, std::string anchor = "histogram");

/// D'Agostino-Pearson K² on an already capped sample; skipped below 20
/// values or without spread.
std::optional<Insight> test_normal(std::span<const double> sample, const std::string& column, const ConfigTree& cfg);

/// Two-sample KS on sorted samples, both of at least 20 values.
std::optional<Insight> test_similar(std::span<const double> sorted_a, std::span<const double> sorted_b,
                                    const std::string& a, const std::string& b, const ConfigTree& cfg);

/// NoImpact when dropping the anchor's missing rows leaves the column's
/// distribution within insight.ks_d.
std::optional<Insight> detect_impact(const ImpactPair& pair, const ConfigTree& cfg);

/// HighCorrelation per unordered pair, keeping the method with the largest |r|.
std::vector<Insight> detect_corr_insights(std::span<const CorrMatrix> matrices, const ConfigTree& cfg);

}  // namespace eda::insights
