#include "eda/error.hpp"

#include <utility>

namespace eda {

FileNotFound::FileNotFound(const std::string& path)
    : DataError("file not found: " + path), path_(path) {}

ParseError::ParseError(std::size_t line, const std::string& reason)
    : DataError("parse error at line " + std::to_string(line) + ": " + reason), line_(line) {}

EmptyInput::EmptyInput() : DataError("input has no data rows") {}

InvalidChunkSize::InvalidChunkSize(long long requested)
    : DataError("invalid chunk size " + std::to_string(requested) + " (must be >= 1)") {}

namespace {
std::string unknown_column_message(const std::string& name, const std::vector<std::string>& available) {
  std::string msg = "unknown column '" + name + "'; available columns:";
  for (const auto& a : available) msg += " " + a;
  return msg;
}
}  // namespace

UnknownColumn::UnknownColumn(const std::string& name, std::vector<std::string> available)
    : DataError(unknown_column_message(name, available)), column_(name), available_(std::move(available)) {}

UnknownKey::UnknownKey(const std::string& key, const std::string& suggestion)
    : ConfigError("unknown config key '" + key + "'" +
                  (suggestion.empty() ? std::string() : "; did you mean '" + suggestion + "'?")),
      key_(key),
      suggestion_(suggestion) {}

TypeMismatch::TypeMismatch(const std::string& key, const std::string& expected, const std::string& got)
    : ConfigError("config key '" + key + "' expects " + expected + ", got " + got) {}

KernelError::KernelError(const std::string& node, const std::string& cause)
    : Error("kernel failed at node " + node + ": " + cause), node_(node) {}

}  // namespace eda
