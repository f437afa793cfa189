#include "eda/frame.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "eda/error.hpp"

namespace eda {

std::string_view to_string(DType t) noexcept {
  return t == DType::Numerical ? "numerical" : "categorical";
}

Bitmask::Bitmask(std::size_t size, bool value)
    : words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0), size_(size) {
  if (value && (size & 63)) words_.back() &= (std::uint64_t{1} << (size & 63)) - 1;
}

void Bitmask::set(std::size_t i, bool value) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (value)
    words_[i >> 6] |= bit;
  else
    words_[i >> 6] &= ~bit;
}

void Bitmask::push_back(bool value) {
  if ((size_ & 63) == 0) words_.push_back(0);
  ++size_;
  set(size_ - 1, value);
}

std::size_t Bitmask::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t Column::size() const noexcept {
  std::size_t n = 0;
  for (const auto& c : chunks) n += c.row_count();
  return n;
}

std::size_t Column::missing_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : chunks) n += c.row_count() - c.validity.count();
  return n;
}

DataFrame::DataFrame(std::vector<Column> columns, std::string source)
    : columns_(std::move(columns)), source_(std::move(source)) {
  std::unordered_set<std::string> seen;
  for (const auto& c : columns_) {
    if (c.name.empty()) throw DataError("column names must be non-empty");
    if (!seen.insert(c.name).second) throw DataError("duplicate column name '" + c.name + "'");
  }
  if (!columns_.empty()) {
    for (const auto& chunk : columns_.front().chunks) meta_.chunk_row_counts.push_back(chunk.row_count());
  }
  for (const auto& c : columns_) {
    if (c.chunks.size() != meta_.chunk_row_counts.size())
      throw DataError("column '" + c.name + "' has a different chunk layout");
    for (std::size_t i = 0; i < c.chunks.size(); ++i) {
      const auto& chunk = c.chunks[i];
      if (chunk.row_count() != meta_.chunk_row_counts[i])
        throw DataError("column '" + c.name + "' has a different chunk layout");
      const std::size_t payload = c.dtype == DType::Numerical ? chunk.values.size() : chunk.codes.size();
      if (payload != chunk.row_count()) throw DataError("column '" + c.name + "' chunk payload/validity mismatch");
    }
    if (c.dtype == DType::Categorical && !c.dictionary)
      throw DataError("categorical column '" + c.name + "' has no dictionary");
  }
  offsets_.reserve(meta_.chunk_row_counts.size());
  for (auto n : meta_.chunk_row_counts) {
    offsets_.push_back(meta_.total_rows);
    meta_.total_rows += n;
  }
}

std::optional<std::size_t> DataFrame::find(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].name == name) return i;
  return std::nullopt;
}

std::size_t DataFrame::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UnknownColumn(std::string(name), names());
}

const Column& DataFrame::column(std::string_view name) const { return columns_[index_of(name)]; }

std::vector<std::string> DataFrame::names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.name);
  return out;
}

const ChunkMeta& chunk_meta(const DataFrame& df) noexcept { return df.meta(); }

namespace {

std::vector<std::size_t> partition(std::size_t total, std::size_t target) {
  std::vector<std::size_t> sizes;
  for (std::size_t done = 0; done < total; done += target) sizes.push_back(std::min(target, total - done));
  if (sizes.empty()) sizes.push_back(0);
  return sizes;
}

}  // namespace

DataFrame rechunk(const DataFrame& df, long long target_rows) {
  if (target_rows < 1) throw InvalidChunkSize(target_rows);
  const auto sizes = partition(df.rows(), static_cast<std::size_t>(target_rows));

  std::vector<Column> out;
  out.reserve(df.width());
  for (const auto& src : df.columns()) {
    Column col{src.name, src.dtype, {}, src.dictionary};
    const bool numeric = src.dtype == DType::Numerical;
    std::size_t chunk_i = 0, row_i = 0;
    for (auto size : sizes) {
      Chunk chunk;
      chunk.validity = Bitmask(0);
      for (std::size_t k = 0; k < size; ++k) {
        while (row_i >= src.chunks[chunk_i].row_count()) {
          ++chunk_i;
          row_i = 0;
        }
        const auto& s = src.chunks[chunk_i];
        if (numeric)
          chunk.values.push_back(s.values[row_i]);
        else
          chunk.codes.push_back(s.codes[row_i]);
        chunk.validity.push_back(s.valid(row_i));
        ++row_i;
      }
      col.chunks.push_back(std::move(chunk));
    }
    out.push_back(std::move(col));
  }
  return DataFrame(std::move(out), df.source());
}

DataFrame make_frame(const std::vector<ColumnInput>& inputs, std::size_t chunk_rows, std::string source) {
  if (chunk_rows < 1) throw InvalidChunkSize(static_cast<long long>(chunk_rows));
  std::optional<std::size_t> rows;
  for (const auto& in : inputs) {
    const std::size_t n = std::visit([](const auto& v) { return v.size(); }, in.cells);
    if (rows && *rows != n) throw DataError("column '" + in.name + "' length differs from the others");
    rows = n;
  }
  const auto sizes = partition(rows.value_or(0), chunk_rows);

  std::vector<Column> cols;
  for (const auto& in : inputs) {
    Column col;
    col.name = in.name;
    if (const auto* num = std::get_if<NumericCells>(&in.cells)) {
      col.dtype = DType::Numerical;
      std::size_t at = 0;
      for (auto size : sizes) {
        Chunk chunk;
        chunk.validity = Bitmask(size, false);
        chunk.values.assign(size, 0.0);
        for (std::size_t k = 0; k < size; ++k, ++at) {
          const auto& cell = (*num)[at];
          if (cell && !std::isnan(*cell)) {
            chunk.values[k] = *cell;
            chunk.validity.set(k, true);
          }
        }
        col.chunks.push_back(std::move(chunk));
      }
    } else {
      const auto& cat = std::get<CategoricalCells>(in.cells);
      col.dtype = DType::Categorical;
      auto dict = std::make_shared<std::vector<std::string>>();
      std::unordered_map<std::string, std::int32_t> codes;
      std::size_t at = 0;
      for (auto size : sizes) {
        Chunk chunk;
        chunk.validity = Bitmask(size, false);
        chunk.codes.assign(size, -1);
        for (std::size_t k = 0; k < size; ++k, ++at) {
          const auto& cell = cat[at];
          if (!cell) continue;
          auto [it, inserted] = codes.try_emplace(*cell, static_cast<std::int32_t>(dict->size()));
          if (inserted) dict->push_back(*cell);
          chunk.codes[k] = it->second;
          chunk.validity.set(k, true);
        }
        col.chunks.push_back(std::move(chunk));
      }
      col.dictionary = std::move(dict);
    }
    cols.push_back(std::move(col));
  }
  return DataFrame(std::move(cols), std::move(source));
}

NumericCells numeric_cells(const Column& column) {
  NumericCells out;
  out.reserve(column.size());
  for (const auto& chunk : column.chunks)
    for (std::size_t i = 0; i < chunk.row_count(); ++i)
      out.push_back(chunk.valid(i) ? std::optional<double>(chunk.values[i]) : std::nullopt);
  return out;
}

CategoricalCells categorical_cells(const Column& column) {
  CategoricalCells out;
  out.reserve(column.size());
  for (const auto& chunk : column.chunks)
    for (std::size_t i = 0; i < chunk.row_count(); ++i)
      out.push_back(chunk.valid(i) ? std::optional<std::string>(column.label(chunk.codes[i])) : std::nullopt);
  return out;
}

}  // namespace eda
