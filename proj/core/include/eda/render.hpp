#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eda/charts.hpp"
#include "eda/config.hpp"
#include "eda/insights.hpp"
#include "eda/intermediate.hpp"
#include "eda/tasks.hpp"

namespace eda::render {

struct Tick {
  double value = 0;
  std::string label;

  friend bool operator==(const Tick&, const Tick&) = default;
};

struct Axis {
  std::string label;
  std::string scale = "linear";  // "linear" or "band"
  double min = 0, max = 1;       // linear domain
  std::vector<Tick> ticks;
  std::vector<std::string> categories;  // band scale

  friend bool operator==(const Axis&, const Axis&) = default;
};

enum class SeriesType { Rect, Line, Step, Point, Hex, Heat, Box, Bar, Slice, Link };

std::string_view to_string(SeriesType t) noexcept;

/// Data arrays of one mark layer. Which arrays are used depends on the type:
/// Rect x/x2/y/y2; Line, Point x/y; Step x (edges)/y (one per bin); Hex
/// x/y/value with the cell radius in x2[0]/y2[0]; Heat x/y (band
/// indices)/value; Box x (band index) plus `boxes`; Bar x (band index)/y/y2;
/// Slice value/labels with space-separated colors; Link x/y/x2/y2.
struct Series {
  SeriesType type = SeriesType::Rect;
  std::string name;
  std::string color;
  std::vector<double> x, y, x2, y2, value;
  std::vector<std::string> labels;
  std::vector<BoxStats> boxes;
  double opacity = 1;

  friend bool operator==(const Series&, const Series&) = default;
};

struct TableRow {
  std::string label;
  std::string value;
  bool highlight = false;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

struct ColorScale {
  std::string kind;  // "diverging" or "sequential"
  double min = 0, max = 1;

  friend bool operator==(const ColorScale&, const ColorScale&) = default;
};

struct ChartSpec {
  ChartKind kind = ChartKind::Histogram;
  std::string title;
  std::optional<Axis> x_axis, y_axis;
  std::vector<Series> series;
  std::vector<TableRow> table;
  std::optional<ColorScale> color;
  bool stacked = false;  // bar series share the band instead of splitting it
  bool has_insight = false;
  std::vector<std::string> notes;  // subtitles
  int width = 600, height = 400;

  bool empty() const noexcept;
  friend bool operator==(const ChartSpec&, const ChartSpec&) = default;
};

/// Linear ticks on the 1/2/5 ladder; 5 to 8 of them, covering [lo, hi].
std::vector<Tick> nice_ticks(double lo, double hi);

/// Chart template of `kind` for the payload. Throws UnknownKind when the
/// payload does not belong to that chart.
ChartSpec to_chart_spec(const Intermediate& data, ChartKind kind, const ConfigTree& cfg,
                        std::span<const Insight> insights = {});
/// Template chosen from the payload alone (the payload's primary chart).
ChartSpec to_chart_spec(const Intermediate& data, const ConfigTree& cfg);
ChartSpec to_chart_spec(const Panel& panel, const ConfigTree& cfg);

struct SvgOptions {
  bool standalone = true;  // XML namespace declaration
};

std::string render_svg(const ChartSpec& spec, const SvgOptions& options = {});

/// Self-contained HTML document with the viewer bundle inlined.
std::string assemble_html(const TaskResult& result, const ConfigTree& cfg);
std::string assemble_html(const Report& report, const ConfigTree& cfg);
std::string assemble_html(const TaskResult& result, const ConfigTree& cfg, std::string_view viewer_bundle);
std::string assemble_html(const Report& report, const ConfigTree& cfg, std::string_view viewer_bundle);

/// The viewer script embedded at build time.
std::string_view viewer_bundle();

std::string export_json(const TaskResult& result);
std::string export_json(const Report& report);
/// Re-serializes parsed JSON text with the export's float and key rules.
std::string normalize_json(std::string_view json_text);

std::string escape_xml(std::string_view text);

}  // namespace eda::render
