#include "eda/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "eda/error.hpp"

namespace eda {
namespace {

using K = ChartKind;

std::vector<ChartKind> every_kind() { return all_chart_kinds(); }

KeyDef bool_key(std::string key, bool def, std::string desc, std::vector<ChartKind> owners) {
  return {std::move(key), ValueType::Bool, def, std::move(desc), std::move(owners)};
}

KeyDef int_key(std::string key, std::int64_t def, std::string desc, std::vector<ChartKind> owners,
               double min = 1) {
  return {std::move(key), ValueType::Int, def, std::move(desc), std::move(owners), min};
}

KeyDef float_key(std::string key, double def, std::string desc, std::vector<ChartKind> owners, double min,
                 double max) {
  return {std::move(key), ValueType::Float, def, std::move(desc), std::move(owners), min, max};
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string value_type_name(const ConfigValue& v) {
  static constexpr std::string_view names[] = {"bool", "int", "float", "string", "string-list"};
  return std::string(names[v.index()]);
}

StringList split_list(std::string_view text) {
  StringList out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    start = end + 1;
  }
  return out;
}

ConfigValue coerce(const KeyDef& def, const ConfigValue& v) {
  const auto mismatch = [&] { return TypeMismatch(def.key, std::string(to_string(def.type)), value_type_name(v)); };
  ConfigValue out;
  switch (def.type) {
    case ValueType::Bool:
      if (!std::holds_alternative<bool>(v)) throw mismatch();
      return v;
    case ValueType::Int:
      if (const auto* i = std::get_if<std::int64_t>(&v)) {
        out = *i;
      } else if (const auto* d = std::get_if<double>(&v); d && std::isfinite(*d) && std::floor(*d) == *d) {
        out = static_cast<std::int64_t>(*d);
      } else {
        throw mismatch();
      }
      break;
    case ValueType::Float:
      if (const auto* i = std::get_if<std::int64_t>(&v))
        out = static_cast<double>(*i);
      else if (std::holds_alternative<double>(v))
        out = v;
      else
        throw mismatch();
      break;
    case ValueType::String:
      if (std::holds_alternative<StringList>(v)) throw mismatch();
      out = std::holds_alternative<std::string>(v) ? std::get<std::string>(v) : format_value(v);
      return out;
    case ValueType::StringList:
      if (const auto* s = std::get_if<std::string>(&v))
        out = split_list(*s);
      else if (std::holds_alternative<StringList>(v))
        out = v;
      else
        throw mismatch();
      return out;
  }
  const double num = std::holds_alternative<std::int64_t>(out) ? static_cast<double>(std::get<std::int64_t>(out))
                                                               : std::get<double>(out);
  if (num < def.min || num > def.max)
    throw ConfigError("config key '" + def.key + "' value " + format_value(out) + " is out of range [" +
                      format_value(def.min) + ", " + format_value(def.max) + "]");
  return out;
}

}  // namespace

std::string_view to_string(ValueType t) noexcept {
  switch (t) {
    case ValueType::Bool:
      return "bool";
    case ValueType::Int:
      return "int";
    case ValueType::Float:
      return "float";
    case ValueType::String:
      return "string";
    case ValueType::StringList:
      return "string-list";
  }
  return "unknown";
}

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::Default:
      return "default";
    case Provenance::Shortcut:
      return "shortcut";
    case Provenance::Explicit:
      return "explicit";
  }
  return "unknown";
}

std::string format_value(const ConfigValue& v) {
  struct Visitor {
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
      std::string s(buf, ptr);
      // Keep a float recognisable as one when read back.
      if (std::isfinite(d) && s.find_first_of(".eE") == std::string::npos) s += ".0";
      return s;
    }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const StringList& l) const {
      std::string out;
      for (std::size_t i = 0; i < l.size(); ++i) out += (i ? "," : "") + l[i];
      return out;
    }
  };
  return std::visit(Visitor{}, v);
}

ConfigValue parse_value(std::string_view text) {
  if (text == "true") return true;
  if (text == "false") return false;
  std::int64_t i = 0;
  if (auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), i);
      ec == std::errc() && ptr == text.data() + text.size() && !text.empty())
    return i;
  double d = 0;
  if (auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
      ec == std::errc() && ptr == text.data() + text.size() && !text.empty() && std::isfinite(d))
    return d;
  return std::string(text);
}

KeyRegistry::KeyRegistry() : shortcuts_{"bins", "top_k"} {
  const std::vector<ChartKind> corr_kinds{K::CorrPearson, K::CorrSpearman, K::CorrKendall,
                                          K::RankPearson, K::RankSpearman, K::RankKendall};
  keys_ = {
      bool_key("overview.enabled", true, "Show the dataset overview table", {K::Overview}),
      bool_key("stats.enabled", true, "Show the column statistics table", {K::Stats}),
      bool_key("hist.enabled", true, "Show the histogram", {K::Histogram}),
      int_key("hist.bins", 50, "Number of histogram bins",
              {K::Histogram, K::CategoryHistograms, K::Impact}),
      bool_key("kde.enabled", true, "Show the kernel density plot", {K::Kde}),
      int_key("kde.bins", 50, "Number of bins of the histogram drawn under the density curve", {K::Kde}),
      int_key("kde.grid_points", 200, "Points at which the density curve is evaluated", {K::Kde}, 2),
      int_key("kde.sample", 10000, "Maximum number of rows used to estimate the density", {K::Kde}),
      int_key("kde.seed", 0, "Seed of the density-estimation row sample", {K::Kde}, 0),
      bool_key("qq.enabled", true, "Show the normal Q-Q plot", {K::QQNormal}),
      int_key("qq.points", 100, "Number of quantile pairs in the normal Q-Q plot", {K::QQNormal}, 2),
      bool_key("box.enabled", true, "Show the box plot", {K::Box}),
      int_key("box.bins", 50, "Number of x-axis bins of the binned box plot", {K::BinnedBox}),
      int_key("box.max_outliers", 100, "Maximum outliers listed per box", {K::Box, K::GroupedBox, K::BinnedBox},
              0),
      bool_key("bar.enabled", true, "Show the bar chart", {K::Bar}),
      int_key("bar.top_k", 10, "Number of most frequent categories shown",
              {K::Bar, K::GroupedBox, K::CategoryHistograms, K::NestedBar, K::StackedBar, K::CrossHeatmap,
               K::Impact}),
      bool_key("pie.enabled", true, "Show the pie chart", {K::Pie}),
      int_key("pie.top_k", 10, "Number of most frequent categories shown as slices", {K::Pie}),
      bool_key("scatter.enabled", true, "Show the scatter plot", {K::Scatter}),
      int_key("scatter.sample", 1000, "Maximum number of points drawn", {K::Scatter, K::CorrScatter}),
      int_key("scatter.seed", 0, "Seed of the point sample", {K::Scatter, K::CorrScatter}, 0),
      bool_key("hexbin.enabled", true, "Show the hexbin plot", {K::Hexbin}),
      int_key("hexbin.gridsize", 20, "Number of hexagons across the x axis", {K::Hexbin}),
      bool_key("binned_box.enabled", true, "Show box plots of the y column per x bin", {K::BinnedBox}),
      bool_key("grouped_box.enabled", true, "Show box plots per category", {K::GroupedBox}),
      bool_key("category_hist.enabled", true, "Show one histogram per category", {K::CategoryHistograms}),
      bool_key("nested_bar.enabled", true, "Show the nested bar chart", {K::NestedBar}),
      bool_key("stacked_bar.enabled", true, "Show the stacked bar chart", {K::StackedBar}),
      bool_key("cross_heatmap.enabled", true, "Show the cross-count heat map", {K::CrossHeatmap}),
      KeyDef{"corr.methods", ValueType::StringList, StringList{"pearson", "spearman", "kendall"},
             "Correlation methods computed", corr_kinds},
      int_key("corr.kendall_cap", 10000, "Maximum rows used for Kendall's tau (sampled beyond)",
              {K::CorrKendall, K::RankKendall}, 2),
      int_key("corr.seed", 0, "Seed of the Kendall row sample", {K::CorrKendall, K::RankKendall}, 0),
      int_key("corr.max_pairs", 5, "Column pairs shown in the report's interactions section", {K::Scatter}, 0),
      bool_key("corr_scatter.enabled", true, "Show the scatter plot with regression line", {K::CorrScatter}),
      bool_key("missing_bar.enabled", true, "Show missing counts per column", {K::MissingBar}),
      bool_key("spectrum.enabled", true, "Show the missing spectrum", {K::MissingSpectrum}),
      int_key("spectrum.segments", 50, "Row segments of the missing spectrum", {K::MissingSpectrum}),
      bool_key("nullity_heatmap.enabled", true, "Show the nullity correlation heat map", {K::NullityHeatmap}),
      bool_key("dendrogram.enabled", true, "Show the nullity dendrogram", {K::NullityDendrogram}),
      bool_key("impact.enabled", true, "Show before/after distributions", {K::Impact}),
      bool_key("impact_cdf.enabled", true, "Show before/after empirical CDFs", {K::ImpactCdf}),
      int_key("plot.width", 600, "Chart width in pixels", every_kind(), 100),
      int_key("plot.height", 400, "Chart height in pixels", every_kind(), 100),
      float_key("type.numeric_threshold", 0.95, "Fraction of parseable values needed to type a column numerical",
                {K::Overview, K::Stats}, 0.0, 1.0),
      float_key("insight.missing_pct", 1.0, "Missing percentage above which a column is flagged",
                {K::Overview, K::Stats}, 0.0, 100.0),
      float_key("insight.zeros_pct", 5.0, "Zero percentage above which a column is flagged", {K::Stats}, 0.0,
                100.0),
      bool_key("insight.flag_negatives", false, "Flag columns containing negative values", {K::Stats}),
      int_key("insight.cardinality", 50, "Distinct count above which a column is flagged", {K::Overview, K::Stats},
              0),
      float_key("insight.skew", 1.0, "Absolute skewness above which a column is flagged",
                {K::Overview, K::Stats, K::Histogram}, 0.0, 1e300),
      float_key("insight.uniform_p", 0.999, "Chi-square p-value at or above which counts are called uniform",
                {K::Histogram, K::Bar}, 0.0, 1.0),
      float_key("insight.normal_p", 0.99, "Normality-test p-value at or above which a column is called normal",
                {K::QQNormal}, 0.0, 1.0),
      int_key("insight.normal_sample", 10000, "Maximum rows fed to the normality test", {K::QQNormal}, 20),
      float_key("insight.ks_d", 0.05, "KS distance at or below which two distributions are called similar",
                {K::Impact, K::ImpactCdf}, 0.0, 1.0),
      float_key("insight.corr", 0.9, "Absolute correlation at or above which a pair is flagged", corr_kinds, 0.0,
                1.0),
  };
}

const KeyRegistry& KeyRegistry::instance() {
  static const KeyRegistry registry;
  return registry;
}

const KeyDef* KeyRegistry::find(std::string_view key) const noexcept {
  for (const auto& k : keys_)
    if (k.key == key) return &k;
  return nullptr;
}

const KeyDef& KeyRegistry::at(std::string_view key) const {
  if (const auto* k = find(key)) return *k;
  throw UnknownKey(std::string(key), nearest(key));
}

std::vector<const KeyDef*> KeyRegistry::owned_by(ChartKind kind) const {
  std::vector<const KeyDef*> out;
  for (const auto& k : keys_)
    if (std::find(k.owners.begin(), k.owners.end(), kind) != k.owners.end()) out.push_back(&k);
  return out;
}

bool KeyRegistry::is_shortcut(std::string_view name) const noexcept {
  return std::find(shortcuts_.begin(), shortcuts_.end(), name) != shortcuts_.end();
}

std::vector<const KeyDef*> KeyRegistry::shortcut_targets(std::string_view shortcut) const {
  std::vector<const KeyDef*> out;
  if (!is_shortcut(shortcut)) return out;
  const std::string suffix = "." + std::string(shortcut);
  for (const auto& k : keys_)
    if (k.key.size() > suffix.size() && k.key.compare(k.key.size() - suffix.size(), suffix.size(), suffix) == 0)
      out.push_back(&k);
  return out;
}

std::string KeyRegistry::nearest(std::string_view key) const {
  std::string best;
  std::size_t best_d = std::numeric_limits<std::size_t>::max();
  auto consider = [&](const std::string& candidate) {
    const auto d = edit_distance(key, candidate);
    if (d < best_d) {
      best_d = d;
      best = candidate;
    }
  };
  for (const auto& k : keys_) consider(k.key);
  for (const auto& s : shortcuts_) consider(s);
  return best;
}

const ConfigValue& ConfigTree::resolve(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw UnknownKey(std::string(key), KeyRegistry::instance().nearest(key));
  return it->second.value;
}

Provenance ConfigTree::provenance(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw UnknownKey(std::string(key), KeyRegistry::instance().nearest(key));
  return it->second.provenance;
}

bool ConfigTree::get_bool(std::string_view key) const { return std::get<bool>(resolve(key)); }
std::int64_t ConfigTree::get_int(std::string_view key) const { return std::get<std::int64_t>(resolve(key)); }
double ConfigTree::get_float(std::string_view key) const { return std::get<double>(resolve(key)); }
const std::string& ConfigTree::get_string(std::string_view key) const { return std::get<std::string>(resolve(key)); }
const StringList& ConfigTree::get_list(std::string_view key) const { return std::get<StringList>(resolve(key)); }

ConfigTree build_config(const ConfigInput& explicit_values, const ConfigInput& shortcuts) {
  const auto& reg = KeyRegistry::instance();
  ConfigTree tree;
  for (const auto& k : reg.keys()) tree.entries_[k.key] = {k.default_value, Provenance::Default};

  for (const auto& [name, value] : shortcuts) {
    if (!reg.is_shortcut(name)) throw UnknownKey(name, reg.nearest(name));
    for (const auto* def : reg.shortcut_targets(name)) tree.entries_[def->key] = {coerce(*def, value), Provenance::Shortcut};
  }
  for (const auto& [key, value] : explicit_values) {
    if (key.find('.') == std::string::npos || key.front() == '.' || key.back() == '.')
      throw UnknownKey(key, reg.nearest(key));
    const auto& def = reg.at(key);
    tree.entries_[def.key] = {coerce(def, value), Provenance::Explicit};
  }
  for (const auto& m : tree.get_list("corr.methods"))
    if (m != "pearson" && m != "spearman" && m != "kendall")
      throw ConfigError("corr.methods: unknown method '" + m + "' (expected pearson, spearman, kendall)");
  tree.explicit_ = explicit_values;
  tree.shortcuts_ = shortcuts;
  return tree;
}

ConfigTree build_config_mixed(const ConfigInput& pairs) {
  ConfigInput explicit_values, shortcuts;
  for (const auto& p : pairs) (KeyRegistry::instance().is_shortcut(p.first) ? shortcuts : explicit_values).push_back(p);
  return build_config(explicit_values, shortcuts);
}

std::pair<std::string, ConfigValue> parse_assignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError("expected KEY=VALUE, got '" + std::string(text) + "'");
  auto key = text.substr(0, eq);
  while (!key.empty() && key.back() == ' ') key.remove_suffix(1);
  auto value = text.substr(eq + 1);
  while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
  return {std::string(key), parse_value(value)};
}

ConfigInput parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  ConfigInput out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_assignment(std::string_view(line).substr(first)));
  }
  return out;
}

const ConfigValue& resolve(const ConfigTree& cfg, std::string_view key) { return cfg.resolve(key); }

std::string_view enabled_key(ChartKind kind) noexcept {
  switch (kind) {
    case K::Overview:
      return "overview.enabled";
    case K::Stats:
      return "stats.enabled";
    case K::Histogram:
      return "hist.enabled";
    case K::Kde:
      return "kde.enabled";
    case K::QQNormal:
      return "qq.enabled";
    case K::Box:
      return "box.enabled";
    case K::Bar:
      return "bar.enabled";
    case K::Pie:
      return "pie.enabled";
    case K::Scatter:
      return "scatter.enabled";
    case K::Hexbin:
      return "hexbin.enabled";
    case K::BinnedBox:
      return "binned_box.enabled";
    case K::GroupedBox:
      return "grouped_box.enabled";
    case K::CategoryHistograms:
      return "category_hist.enabled";
    case K::NestedBar:
      return "nested_bar.enabled";
    case K::StackedBar:
      return "stacked_bar.enabled";
    case K::CrossHeatmap:
      return "cross_heatmap.enabled";
    case K::CorrScatter:
      return "corr_scatter.enabled";
    case K::MissingBar:
      return "missing_bar.enabled";
    case K::MissingSpectrum:
      return "spectrum.enabled";
    case K::NullityHeatmap:
      return "nullity_heatmap.enabled";
    case K::NullityDendrogram:
      return "dendrogram.enabled";
    case K::Impact:
      return "impact.enabled";
    case K::ImpactCdf:
      return "impact_cdf.enabled";
    default:
      return {};
  }
}

std::vector<ChartKind> enabled_charts(const ConfigTree& cfg, const TaskSignature& task) {
  std::vector<ChartKind> out;
  const auto& methods = cfg.get_list("corr.methods");
  for (auto kind : default_charts(task)) {
    if (auto key = enabled_key(kind); !key.empty() && !cfg.get_bool(key)) continue;
    if (auto method = chart_method(kind);
        method && std::find(methods.begin(), methods.end(), *method) == methods.end())
      continue;
    out.push_back(kind);
  }
  return out;
}

}  // namespace eda
