#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "eda/charts.hpp"

namespace eda {

using StringList = std::vector<std::string>;
using ConfigValue = std::variant<bool, std::int64_t, double, std::string, StringList>;

enum class ValueType { Bool, Int, Float, String, StringList };
enum class Provenance { Default, Shortcut, Explicit };

std::string_view to_string(ValueType t) noexcept;
std::string_view to_string(Provenance p) noexcept;

/// Canonical text form; parse_value(format_value(v)) coerced to the key's
/// type gives back v.
std::string format_value(const ConfigValue& v);

/// Guesses bool, then int, then float, then falls back to string.
ConfigValue parse_value(std::string_view text);

struct KeyDef {
  std::string key;
  ValueType type;
  ConfigValue default_value;
  std::string description;
  std::vector<ChartKind> owners;
  /// Lower bound for numeric keys, inclusive.
  double min = -1e300;
  double max = 1e300;
};

/// Every configurable key. Also the source of the how-to guide content.
class KeyRegistry {
 public:
  static const KeyRegistry& instance();

  const std::vector<KeyDef>& keys() const noexcept { return keys_; }
  const KeyDef* find(std::string_view key) const noexcept;
  const KeyDef& at(std::string_view key) const;  // throws UnknownKey
  std::vector<const KeyDef*> owned_by(ChartKind kind) const;
  /// Every key a shortcut fans out to (`bins` -> all `*.bins`).
  std::vector<const KeyDef*> shortcut_targets(std::string_view shortcut) const;
  bool is_shortcut(std::string_view name) const noexcept;
  const std::vector<std::string>& shortcuts() const noexcept { return shortcuts_; }
  /// Closest registered key or shortcut by edit distance.
  std::string nearest(std::string_view key) const;

 private:
  KeyRegistry();
  std::vector<KeyDef> keys_;
  std::vector<std::string> shortcuts_;
};

using ConfigInput = std::vector<std::pair<std::string, ConfigValue>>;

class ConfigTree {
 public:
  struct Entry {
    ConfigValue value;
    Provenance provenance = Provenance::Default;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  const ConfigValue& resolve(std::string_view key) const;
  Provenance provenance(std::string_view key) const;
  const std::map<std::string, Entry, std::less<>>& entries() const noexcept { return entries_; }

  bool get_bool(std::string_view key) const;
  std::int64_t get_int(std::string_view key) const;
  double get_float(std::string_view key) const;
  const std::string& get_string(std::string_view key) const;
  const StringList& get_list(std::string_view key) const;

  /// The inputs this tree was built from, for rebuilding.
  const ConfigInput& explicit_inputs() const noexcept { return explicit_; }
  const ConfigInput& shortcut_inputs() const noexcept { return shortcuts_; }

  friend bool operator==(const ConfigTree& a, const ConfigTree& b) { return a.entries_ == b.entries_; }

 private:
  friend ConfigTree build_config(const ConfigInput&, const ConfigInput&);
  std::map<std::string, Entry, std::less<>> entries_;
  ConfigInput explicit_;
  ConfigInput shortcuts_;
};

/// Registry defaults, then shortcuts, then explicit keys.
ConfigTree build_config(const ConfigInput& explicit_values = {}, const ConfigInput& shortcuts = {});

/// Routes each pair to shortcuts or explicit keys by name.
ConfigTree build_config_mixed(const ConfigInput& pairs);

/// "KEY=VALUE" -> (KEY, parse_value(VALUE)). Throws ConfigError when '=' is absent.
std::pair<std::string, ConfigValue> parse_assignment(std::string_view text);

/// One KEY=VALUE per line; blank lines and lines starting with '#' are skipped.
ConfigInput parse_config_file(const std::string& path);

const ConfigValue& resolve(const ConfigTree& cfg, std::string_view key);

/// The default chart set for `task`, minus charts switched off via their
/// `*.enabled` key (or absent from corr.methods), order preserved.
std::vector<ChartKind> enabled_charts(const ConfigTree& cfg, const TaskSignature& task);

/// `*.enabled` key gating a chart kind, if it has one.
std::string_view enabled_key(ChartKind kind) noexcept;

}  // namespace eda
