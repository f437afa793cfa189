#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eda {

enum class DType { Numerical, Categorical };

std::string_view to_string(DType t) noexcept;

/// One validity bit per row; 0 marks a missing cell.
class Bitmask {
 public:
  Bitmask() = default;
  explicit Bitmask(std::size_t size, bool value = true);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value) noexcept;
  void push_back(bool value);
  std::size_t count() const noexcept;

  friend bool operator==(const Bitmask&, const Bitmask&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// A contiguous horizontal slice of a column. Numerical chunks fill
/// `values`, categorical chunks fill `codes`; the other vector stays empty.
/// Missing cells hold 0 / -1 and must be ignored.
struct Chunk {
  std::vector<double> values;
  std::vector<std::int32_t> codes;
  Bitmask validity;

  std::size_t row_count() const noexcept { return validity.size(); }
  bool valid(std::size_t i) const noexcept { return validity.test(i); }
};

struct Column {
  std::string name;
  DType dtype = DType::Numerical;
  std::vector<Chunk> chunks;
  /// Interned labels for categorical columns, indexed by code.
  std::shared_ptr<const std::vector<std::string>> dictionary;

  std::size_t size() const noexcept;
  std::size_t missing_count() const noexcept;
  const std::string& label(std::int32_t code) const { return (*dictionary)[static_cast<std::size_t>(code)]; }
  std::size_t category_count() const noexcept { return dictionary ? dictionary->size() : 0; }
};

struct ChunkMeta {
  std::vector<std::size_t> chunk_row_counts;
  std::size_t total_rows = 0;

  std::size_t chunk_count() const noexcept { return chunk_row_counts.size(); }
  friend bool operator==(const ChunkMeta&, const ChunkMeta&) = default;
};

/// Immutable chunked columnar dataset. Chunk metadata is computed once at
/// construction, before any compute graph can reference the frame.
class DataFrame {
 public:
  /// Validates name uniqueness and that every column shares one chunk layout.
  DataFrame(std::vector<Column> columns, std::string source = "inline");

  const std::vector<Column>& columns() const noexcept { return columns_; }
  const Column& column(std::size_t i) const { return columns_.at(i); }
  const Column& column(std::string_view name) const;
  std::optional<std::size_t> find(std::string_view name) const noexcept;
  std::size_t index_of(std::string_view name) const;
  std::vector<std::string> names() const;

  const ChunkMeta& meta() const noexcept { return meta_; }
  std::size_t rows() const noexcept { return meta_.total_rows; }
  std::size_t width() const noexcept { return columns_.size(); }
  std::size_t chunk_count() const noexcept { return meta_.chunk_count(); }
  std::size_t chunk_offset(std::size_t chunk) const { return offsets_.at(chunk); }
  const std::string& source() const noexcept { return source_; }

 private:
  std::vector<Column> columns_;
  ChunkMeta meta_;
  std::vector<std::size_t> offsets_;
  std::string source_;
};

/// Precomputed chunk layout; cached on the handle.
const ChunkMeta& chunk_meta(const DataFrame& df) noexcept;

/// Same logical content, re-partitioned into chunks of `target_rows`.
DataFrame rechunk(const DataFrame& df, long long target_rows);

// --- in-memory construction -------------------------------------------------

using NumericCells = std::vector<std::optional<double>>;
using CategoricalCells = std::vector<std::optional<std::string>>;

struct ColumnInput {
  std::string name;
  std::variant<NumericCells, CategoricalCells> cells;
};

/// Builds a frame from fully materialized cells (nullopt = missing). NaN
/// numeric values are stored as missing.
DataFrame make_frame(const std::vector<ColumnInput>& inputs, std::size_t chunk_rows = 65536,
                     std::string source = "inline");

/// Flattens a numerical column; missing cells become nullopt.
NumericCells numeric_cells(const Column& column);
/// Flattens a categorical column to labels; missing cells become nullopt.
CategoricalCells categorical_cells(const Column& column);

}  // namespace eda
