#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "eda/frame.hpp"

namespace eda {

struct CsvOptions {
  char delimiter = ',';
  bool header = true;
  /// Compared case-insensitively after trimming surrounding spaces.
  std::vector<std::string> missing_tokens = {"", "NA", "N/A", "null", "NaN", "nan"};
  std::size_t chunk_rows = 65536;
  /// Minimum fraction of non-missing values that must parse as numbers for a
  /// column to be typed Numerical.
  double numeric_threshold = 0.95;
};

DataFrame read_csv(const std::string& path, const CsvOptions& options = {});

/// Parses CSV text already in memory; `source` is recorded on the handle.
DataFrame read_csv_text(std::string_view text, const CsvOptions& options = {},
                        std::string source = "inline");

/// Decimal or scientific float, optionally signed, or inf/infinity. NaN and
/// trailing garbage are rejected.
std::optional<double> parse_number(std::string_view text) noexcept;

bool is_missing_token(std::string_view text, const std::vector<std::string>& tokens) noexcept;

/// Numerical iff at least `threshold` of the non-missing values parse as
/// numbers. All-missing input is Categorical.
DType infer_dtype(const std::vector<std::string>& raw_values, const CsvOptions& options = {});

}  // namespace eda
