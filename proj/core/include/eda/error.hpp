#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace eda {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- data / ingestion -------------------------------------------------------

class DataError : public Error {
 public:
  using Error::Error;
};

class FileNotFound : public DataError {
 public:
  explicit FileNotFound(const std::string& path);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& reason);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyInput : public DataError {
 public:
  EmptyInput();
};

class InvalidChunkSize : public DataError {
 public:
  explicit InvalidChunkSize(long long requested);
};

class UnknownColumn : public DataError {
 public:
  UnknownColumn(const std::string& name, std::vector<std::string> available);
  const std::string& column() const noexcept { return column_; }
  const std::vector<std::string>& available() const noexcept { return available_; }

 private:
  std::string column_;
  std::vector<std::string> available_;
};

class UnsupportedCombination : public DataError {
 public:
  using DataError::DataError;
};

// --- configuration ----------------------------------------------------------

class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnknownKey : public ConfigError {
 public:
  UnknownKey(const std::string& key, const std::string& suggestion);
  const std::string& key() const noexcept { return key_; }
  const std::string& suggestion() const noexcept { return suggestion_; }

 private:
  std::string key_;
  std::string suggestion_;
};

class TypeMismatch : public ConfigError {
 public:
  TypeMismatch(const std::string& key, const std::string& expected, const std::string& got);
};

// --- compute graph ----------------------------------------------------------

class GraphError : public Error {
 public:
  using Error::Error;
};

class CycleDetected : public GraphError {
 public:
  using GraphError::GraphError;
};

class StageViolation : public GraphError {
 public:
  using GraphError::GraphError;
};

/// A kernel threw while the graph was executing. Carries the failing node.
class KernelError : public Error {
 public:
  KernelError(const std::string& node, const std::string& cause);
  const std::string& node() const noexcept { return node_; }

 private:
  std::string node_;
};

/// Thrown by a kernel when its input is degenerate (no data, zero spread,
/// ...). The executor records the reason and skips the node and everything
/// downstream of it instead of aborting the task.
class Skip : public Error {
 public:
  using Error::Error;
};

// Degenerate-input conditions. They derive from Skip so a chart hit by one
// is dropped with a diagnostic instead of failing the task.

class NoData : public Skip {
 public:
  using Skip::Skip;
};

class DegenerateSpread : public Skip {
 public:
  using Skip::Skip;
};

class TooFewColumns : public Skip {
 public:
  using Skip::Skip;
};

// --- render -----------------------------------------------------------------

class UnknownKind : public Error {
 public:
  using Error::Error;
};

}  // namespace eda
