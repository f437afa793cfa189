#include "eda/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <set>

#include "eda/error.hpp"

namespace eda {
namespace {

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ca = static_cast<unsigned char>(a[i]);
    const auto cb = static_cast<unsigned char>(b[i]);
    if (std::tolower(ca) != std::tolower(cb)) return false;
  }
  return true;
}

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

// RFC 4180 records: quoted fields may hold delimiters, quotes ("") and line
// breaks. A final line break terminates the last record.
std::vector<Record> split_records(std::string_view text, char delim) {
  std::vector<Record> records;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    Record rec;
    rec.line = line;
    std::string field;
    bool record_done = false;
    while (!record_done) {
      field.clear();
      if (i < n && text[i] == '"') {
        const std::size_t quote_line = line;
        ++i;
        bool closed = false;
        while (i < n) {
          const char c = text[i];
          if (c == '"') {
            if (i + 1 < n && text[i + 1] == '"') {
              field.push_back('"');
              i += 2;
              continue;
            }
            ++i;
            closed = true;
            break;
          }
          if (c == '\n') ++line;
          field.push_back(c);
          ++i;
        }
        if (!closed) throw ParseError(quote_line, "unterminated quoted field");
        if (i < n && text[i] != delim && text[i] != '\n' && text[i] != '\r')
          throw ParseError(line, "unexpected character after closing quote");
      } else {
        while (i < n && text[i] != delim && text[i] != '\n' && text[i] != '\r') field.push_back(text[i++]);
      }
      rec.fields.push_back(field);
      if (i >= n) {
        record_done = true;
      } else if (text[i] == delim) {
        ++i;
      } else {
        if (text[i] == '\r') ++i;
        if (i < n && text[i] == '\n') ++i;
        ++line;
        record_done = true;
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) noexcept {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::string_view body = text;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (iequals(body, "inf") || iequals(body, "infinity")) {
    const double inf = std::numeric_limits<double>::infinity();
    return negative ? -inf : inf;
  }
  if (body.empty() || !(std::isdigit(static_cast<unsigned char>(body.front())) || body.front() == '.'))
    return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value,
                                         std::chars_format::general);
  if (ptr != body.data() + body.size()) return std::nullopt;
  if (ec == std::errc::result_out_of_range) {
    // Overflow saturates to infinity, underflow to zero.
    const bool big = body.find_first_of("eE") != std::string_view::npos &&
                     body[body.find_first_of("eE") + 1] != '-';
    value = big ? std::numeric_limits<double>::infinity() : 0.0;
  } else if (ec != std::errc()) {
    return std::nullopt;
  }
  if (std::isnan(value)) return std::nullopt;
  return negative ? -value : value;
}

bool is_missing_token(std::string_view text, const std::vector<std::string>& tokens) noexcept {
  text = trim(text);
  return std::any_of(tokens.begin(), tokens.end(), [&](const std::string& t) { return iequals(text, trim(t)); });
}

DType infer_dtype(const std::vector<std::string>& raw_values, const CsvOptions& options) {
  std::size_t present = 0, numeric = 0;
  for (const auto& v : raw_values) {
    if (is_missing_token(v, options.missing_tokens)) continue;
    ++present;
    if (parse_number(v)) ++numeric;
  }
  if (present == 0) return DType::Categorical;
  return static_cast<double>(numeric) >= options.numeric_threshold * static_cast<double>(present)
             ? DType::Numerical
             : DType::Categorical;
}

DataFrame read_csv_text(std::string_view text, const CsvOptions& options, std::string source) {
  if (options.chunk_rows < 1) throw InvalidChunkSize(static_cast<long long>(options.chunk_rows));
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  auto records = split_records(text, options.delimiter);
  if (records.empty()) throw EmptyInput();

  std::vector<std::string> names;
  std::size_t first_data = 0;
  const std::size_t width = records.front().fields.size();
  if (options.header) {
    std::set<std::string> taken;
    for (std::size_t c = 0; c < width; ++c) {
      std::string name(trim(records.front().fields[c]));
      if (name.empty()) name = "column_" + std::to_string(c + 1);
      std::string unique = name;
      for (int k = 1; taken.count(unique); ++k) unique = name + "." + std::to_string(k);
      taken.insert(unique);
      names.push_back(unique);
    }
    first_data = 1;
  } else {
    for (std::size_t c = 0; c < width; ++c) names.push_back("column_" + std::to_string(c + 1));
  }

  std::vector<std::vector<std::string>> cells(width);
  for (std::size_t r = first_data; r < records.size(); ++r) {
    auto& rec = records[r];
    if (width > 1 && rec.fields.size() == 1 && rec.fields.front().empty()) continue;  // blank line
    if (rec.fields.size() != width)
      throw ParseError(rec.line, "expected " + std::to_string(width) + " fields, got " +
                                     std::to_string(rec.fields.size()));
    for (std::size_t c = 0; c < width; ++c) cells[c].push_back(std::move(rec.fields[c]));
  }
  if (width == 0 || cells.front().empty()) throw EmptyInput();

  std::vector<ColumnInput> inputs;
  inputs.reserve(width);
  for (std::size_t c = 0; c < width; ++c) {
    const auto& raw = cells[c];
    if (infer_dtype(raw, options) == DType::Numerical) {
      NumericCells col;
      col.reserve(raw.size());
      for (const auto& v : raw) {
        if (is_missing_token(v, options.missing_tokens))
          col.emplace_back(std::nullopt);
        else
          col.push_back(parse_number(v));  // stray non-numeric values become missing
      }
      inputs.push_back({names[c], std::move(col)});
    } else {
      CategoricalCells col;
      col.reserve(raw.size());
      for (const auto& v : raw) {
        if (is_missing_token(v, options.missing_tokens))
          col.emplace_back(std::nullopt);
        else
          col.emplace_back(std::string(trim(v)));
      }
      inputs.push_back({names[c], std::move(col)});
    }
  }
  return make_frame(inputs, options.chunk_rows, std::move(source));
}

DataFrame read_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_csv_text(buf.str(), options, path);
}

}  // namespace eda
