#include "eda/insights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "eda/error.hpp"
#include "eda/special.hpp"

namespace eda {

std::string_view to_string(InsightKind k) noexcept {
  switch (k) {
    case InsightKind::Missing: return "missing";
    case InsightKind::Infinite: return "infinite";
    case InsightKind::Zeros: return "zeros";
    case InsightKind::Negatives: return "negatives";
    case InsightKind::Constant: return "constant";
    case InsightKind::HighCardinality: return "high_cardinality";
    case InsightKind::Skewed: return "skewed";
    case InsightKind::Uniform: return "uniform";
    case InsightKind::Normal: return "normal";
    case InsightKind::SimilarDistribution: return "similar_distribution";
    case InsightKind::NoImpact: return "no_impact";
    case InsightKind::HighCorrelation: return "high_correlation";
  }
  return "unknown";
}

std::string_view to_string(Severity s) noexcept { return s == Severity::Warning ? "warning" : "info"; }

}  // namespace eda

namespace eda::insights {
namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

Insight make(InsightKind kind, std::vector<std::string> columns, double observed, double threshold,
             std::string message, std::string anchor) {
  const bool quality = kind == InsightKind::Missing || kind == InsightKind::Infinite || kind == InsightKind::Zeros ||
                       kind == InsightKind::Negatives || kind == InsightKind::Constant ||
                       kind == InsightKind::HighCardinality;
  return Insight{kind,
                 std::move(columns),
                 observed,
                 threshold,
                 quality ? Severity::Warning : Severity::Info,
                 std::move(message),
                 std::move(anchor)};
}

}  // namespace

bool satisfied(const Insight& i) noexcept {
  switch (i.kind) {
    case InsightKind::Constant: return i.observed == i.threshold;
    case InsightKind::Uniform:
    case InsightKind::Normal:
    case InsightKind::HighCorrelation: return i.observed >= i.threshold;
    case InsightKind::SimilarDistribution:
    case InsightKind::NoImpact: return i.observed <= i.threshold;
    default: return i.observed > i.threshold;
  }
}

std::vector<Insight> detect_stat_insights(const ColumnStats& s, const ConfigTree& cfg) {
  std::vector<Insight> out;
  const std::string& c = s.column;
  if (s.n > 0) {
    const double missing = 100.0 * static_cast<double>(s.n_missing) / static_cast<double>(s.n);
    const double thr = cfg.get_float("insight.missing_pct");
    if (missing > thr)
      out.push_back(make(InsightKind::Missing, {c}, missing, thr, c + " has " + fmt("%.2f", missing) + "% missing values",
                         "stats"));
  }
  if (s.n_infinite > 0)
    out.push_back(make(InsightKind::Infinite, {c}, static_cast<double>(s.n_infinite), 0,
                       c + " has " + std::to_string(s.n_infinite) + " infinite values", "stats"));
  const std::size_t present = s.n - s.n_missing;
  if (s.dtype == DType::Numerical && present > 0) {
    const double zeros = 100.0 * static_cast<double>(s.n_zero) / static_cast<double>(present);
    const double thr = cfg.get_float("insight.zeros_pct");
    if (zeros > thr)
      out.push_back(make(InsightKind::Zeros, {c}, zeros, thr, c + " has " + fmt("%.2f", zeros) + "% zeros", "stats"));
  }
  if (s.n_negative > 0 && cfg.get_bool("insight.flag_negatives"))
    out.push_back(make(InsightKind::Negatives, {c}, static_cast<double>(s.n_negative), 0,
                       c + " has " + std::to_string(s.n_negative) + " negative values", "stats"));
  if (s.n_distinct == 1)
    out.push_back(make(InsightKind::Constant, {c}, 1, 1, c + " has a constant value", "stats"));
  const auto card = static_cast<double>(cfg.get_int("insight.cardinality"));
  if (static_cast<double>(s.n_distinct) > card)
    out.push_back(make(InsightKind::HighCardinality, {c}, static_cast<double>(s.n_distinct), card,
                       c + " has a high cardinality: " + std::to_string(s.n_distinct) + " distinct values", "stats"));
  if (s.dtype == DType::Numerical && std::isfinite(s.skewness)) {
    const double thr = cfg.get_float("insight.skew");
    if (std::abs(s.skewness) > thr)
      out.push_back(make(InsightKind::Skewed, {c}, std::abs(s.skewness), thr,
                         c + " is skewed (skewness " + fmt("%.4g", s.skewness) + ")", "histogram"));
  }
  return out;
}

std::optional<Insight> test_uniform(std::span<const std::int64_t> counts, const std::string& column,
                                    const ConfigTree& cfg, std::string anchor) {
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  if (counts.size() < 2 || total < 5 * static_cast<std::int64_t>(counts.size())) return std::nullopt;
  const auto test = special::chi_square_uniform(counts);
  const double thr = cfg.get_float("insight.uniform_p");
  if (!(test.p_value >= thr)) return std::nullopt;
  return make(InsightKind::Uniform, {column}, test.p_value, thr, column + " is uniformly distributed",
              std::move(anchor));
}

std::optional<Insight> test_normal(std::span<const double> sample, const std::string& column, const ConfigTree& cfg) {
  if (sample.size() < 20) return std::nullopt;
  special::Normality test;
  try {
    test = special::dagostino_pearson(sample);
  } catch (const Skip&) {
    return std::nullopt;
  }
  const double thr = cfg.get_float("insight.normal_p");
  if (!(test.p_value >= thr)) return std::nullopt;
  return make(InsightKind::Normal, {column}, test.p_value, thr, column + " is normally distributed", "qq_normal");
}

std::optional<Insight> test_similar(std::span<const double> sorted_a, std::span<const double> sorted_b,
                                    const std::string& a, const std::string& b, const ConfigTree& cfg) {
  if (sorted_a.size() < 20 || sorted_b.size() < 20) return std::nullopt;
  const double d = special::ks_statistic(sorted_a, sorted_b);
  const double thr = cfg.get_float("insight.ks_d");
  if (!(d <= thr)) return std::nullopt;
  return make(InsightKind::SimilarDistribution, {a, b}, d, thr, a + " and " + b + " have similar distributions",
              "impact");
}

std::optional<Insight> detect_impact(const ImpactPair& pair, const ConfigTree& cfg) {
  const double thr = cfg.get_float("insight.ks_d");
  const double d = pair.anchor_fully_observed ? 0.0 : pair.ks_distance.value_or(1.0);
  if (!pair.anchor_fully_observed && (pair.before_n < 20 || pair.after_n < 20)) return std::nullopt;
  if (!(d <= thr)) return std::nullopt;
  return make(InsightKind::NoImpact, {pair.anchor, pair.column}, d, thr,
              "dropping the missing values of " + pair.anchor + " does not change the distribution of " + pair.column,
              "impact");
}

std::vector<Insight> detect_corr_insights(std::span<const CorrMatrix> matrices, const ConfigTree& cfg) {
  const double thr = cfg.get_float("insight.corr");
  struct Best {
    double r;
    std::string method;
    std::size_t order;
  };
  std::map<std::pair<std::string, std::string>, Best> best;
  std::size_t order = 0;
  for (const auto& m : matrices)
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j, ++order) {
        const double r = m.at(i, j);
        if (std::isnan(r)) continue;
        const auto key = std::pair{m.columns[i], m.columns[j]};
        const auto it = best.find(key);
        if (it == best.end())
          best.emplace(key, Best{r, m.method, order});
        else if (std::abs(r) > std::abs(it->second.r))
          it->second = Best{r, m.method, it->second.order};
      }
  std::vector<std::pair<std::size_t, Insight>> fired;
  for (const auto& [pair, b] : best) {
    if (!(std::abs(b.r) >= thr)) continue;
    fired.emplace_back(b.order, make(InsightKind::HighCorrelation, {pair.first, pair.second}, std::abs(b.r), thr,
                                     pair.first + " and " + pair.second + " are highly correlated (" + b.method +
                                         " r = " + fmt("%.3f", b.r) + ")",
                                     "corr_" + b.method));
  }
  std::sort(fired.begin(), fired.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Insight> out;
  for (auto& f : fired) out.push_back(std::move(f.second));
  return out;
}

}  // namespace eda::insights
