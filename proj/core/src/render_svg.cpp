#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eda/render.hpp"
#include "render_util.hpp"

namespace eda::render {
namespace {

constexpr double kLeft = 64, kRight = 24, kTop = 40, kBottom = 56, kNoteHeight = 14;

struct Rgb {
  double r, g, b;
};

std::string hex_color(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(c.r)),
                static_cast<int>(std::lround(c.g)), static_cast<int>(std::lround(c.b)));
  return buf;
}

Rgb mix(const Rgb& a, const Rgb& b, double t) {
  return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

std::string scale_color(const ColorScale& scale, double v) {
  if (!std::isfinite(v)) return "#cccccc";
  const double span = scale.max - scale.min;
  double t = span > 0 ? (v - scale.min) / span : 0.5;
  t = std::clamp(t, 0.0, 1.0);
  if (scale.kind == "diverging") {
    constexpr Rgb blue{33, 102, 172}, white{247, 247, 247}, red{178, 24, 43};
    return hex_color(t < 0.5 ? mix(blue, white, t * 2) : mix(white, red, (t - 0.5) * 2));
  }
  constexpr Rgb light{247, 251, 255}, dark{8, 48, 107};
  return hex_color(mix(light, dark, t));
}

// Label every k-th band so at most 20 labels are drawn.
std::size_t label_stride(std::size_t n) { return std::max<std::size_t>(1, (n + 19) / 20); }

bool dark(const std::string& hex) {
  const auto channel = [&](int i) { return std::stoi(hex.substr(static_cast<std::size_t>(1 + 2 * i), 2), nullptr, 16); };
  return 0.299 * channel(0) + 0.587 * channel(1) + 0.114 * channel(2) < 128;
}

std::string truncate(const std::string& s, std::size_t n = 18) {
  if (s.size() <= n) return s;
  return s.substr(0, n - 3) + "...";
}

class Canvas {
 public:
  Canvas(const ChartSpec& spec) : spec_(spec) {
    w_ = spec.width;
    h_ = spec.height;
    if (!spec.table.empty()) h_ = std::max(h_, kTop + 20.0 * static_cast<double>(spec.table.size() + 1));
    const bool rotate = spec.x_axis && spec.x_axis->scale == "band" && spec.x_axis->categories.size() > 6;
    const bool band_y = spec.y_axis && spec.y_axis->scale == "band";
    x0_ = band_y ? 110 : kLeft;
    x1_ = w_ - kRight - (spec.color ? 56 : 0);
    y0_ = kTop + kNoteHeight * static_cast<double>(spec.notes.size());
    y1_ = h_ - kBottom - (rotate ? 40 : 0);
    if (x1_ <= x0_ + 10) x1_ = x0_ + 10;
    if (y1_ <= y0_ + 10) y1_ = y0_ + 10;
  }

  double sx(double v) const { return map(v, *spec_.x_axis, x0_, x1_); }
  double sy(double v) const { return map(v, *spec_.y_axis, y1_, y0_); }
  double band_w() const { return (x1_ - x0_) / std::max<double>(1, spec_.x_axis->categories.size()); }
  double band_h() const { return (y1_ - y0_) / std::max<double>(1, spec_.y_axis->categories.size()); }
  double bx(double i) const { return x0_ + (i + 0.5) * band_w(); }
  double by(double i) const { return y0_ + (i + 0.5) * band_h(); }
  // Position along x whatever the scale.
  double ax(double v) const { return spec_.x_axis->scale == "band" ? bx(v) : sx(v); }
  double ay(double v) const { return spec_.y_axis->scale == "band" ? by(v) : sy(v); }

  std::string render(bool standalone) {
    out_ << "<svg";
    if (standalone) out_ << " xmlns=\"http://www.w3.org/2000/svg\"";
    out_ << " class=\"eda-chart\" width=\"" << w_ << "\" height=\"" << px(h_) << "\" viewBox=\"0 0 " << w_ << ' '
         << px(h_) << "\" font-family=\"sans-serif\" font-size=\"11\">";
    out_ << "<title>" << escape_text(spec_.title) << "</title>";
    out_ << "<text class=\"title\" x=\"" << px(w_ / 2.0) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
         << escape_text(spec_.title) << "</text>";
    for (std::size_t i = 0; i < spec_.notes.size(); ++i)
      out_ << "<text class=\"note\" x=\"" << px(w_ / 2.0) << "\" y=\"" << px(34 + kNoteHeight * static_cast<double>(i))
           << "\" text-anchor=\"middle\" fill=\"#555\">" << escape_text(spec_.notes[i]) << "</text>";
    if (spec_.empty()) {
      out_ << "<text class=\"placeholder\" x=\"" << px(w_ / 2.0) << "\" y=\"" << px(h_ / 2.0)
           << "\" text-anchor=\"middle\" fill=\"#888\">no data</text>";
    } else if (!spec_.table.empty()) {
      table();
    } else {
      if (spec_.x_axis && spec_.y_axis) axes();
      std::size_t bar_series = 0, bar_index = 0;
      for (const auto& s : spec_.series) bar_series += s.type == SeriesType::Bar;
      for (const auto& s : spec_.series) {
        out_ << "<g class=\"series " << to_string(s.type) << "\">";
        draw(s, bar_index, bar_series);
        out_ << "</g>";
        if (s.type == SeriesType::Bar) ++bar_index;
      }
      legend();
      color_legend();
    }
    out_ << "</svg>";
    return out_.str();
  }

 private:
  static double map(double v, const Axis& a, double p0, double p1) {
    const double span = a.max - a.min;
    if (!(span > 0)) return (p0 + p1) / 2;
    return p0 + (v - a.min) / span * (p1 - p0);
  }

  void line(double xa, double ya, double xb, double yb, std::string_view stroke, std::string_view cls = {}) {
    out_ << "<line";
    if (!cls.empty()) out_ << " class=\"" << cls << '"';
    out_ << " x1=\"" << px(xa) << "\" y1=\"" << px(ya) << "\" x2=\"" << px(xb) << "\" y2=\"" << px(yb)
         << "\" stroke=\"" << stroke << "\"/>";
  }

  void rect(std::string_view cls, double x, double y, double w, double h, const std::string& fill, double opacity) {
    out_ << "<rect class=\"" << cls << "\" x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\"" << px(std::max(0.0, w))
         << "\" height=\"" << px(std::max(0.0, h)) << "\" fill=\"" << fill << '"';
    if (opacity < 1) out_ << " fill-opacity=\"" << fmt_fixed(opacity, 2) << '"';
    out_ << "/>";
  }

  void text(double x, double y, const std::string& s, std::string_view anchor, std::string_view extra = {}) {
    out_ << "<text x=\"" << px(x) << "\" y=\"" << px(y) << "\" text-anchor=\"" << anchor << '"';
    if (!extra.empty()) out_ << ' ' << extra;
    out_ << '>' << escape_text(s) << "</text>";
  }

  void axes() {
    const auto& xa = *spec_.x_axis;
    const auto& ya = *spec_.y_axis;
    out_ << "<g class=\"axis x\">";
    line(x0_, y1_, x1_, y1_, "#333");
    if (xa.scale == "band") {
      const bool rotate = xa.categories.size() > 6;
      const std::size_t every = label_stride(xa.categories.size());
      for (std::size_t i = 0; i < xa.categories.size(); ++i) {
        const double x = bx(static_cast<double>(i));
        line(x, y1_, x, y1_ + 4, "#333");
        if (i % every) continue;
        if (rotate) {
          const std::string t = "transform=\"rotate(-45 " + px(x) + ' ' + px(y1_ + 14) + ")\"";
          text(x, y1_ + 14, truncate(xa.categories[i]), "end", t);
        } else {
          text(x, y1_ + 16, truncate(xa.categories[i], 14), "middle");
        }
      }
    } else {
      for (const auto& t : xa.ticks) {
        const double x = sx(t.value);
        line(x, y0_, x, y1_, "#eee", "grid");
        line(x, y1_, x, y1_ + 4, "#333");
        text(x, y1_ + 16, t.label, "middle");
      }
    }
    text((x0_ + x1_) / 2, h_ - 8, xa.label, "middle", "class=\"label\"");
    out_ << "</g><g class=\"axis y\">";
    line(x0_, y0_, x0_, y1_, "#333");
    if (ya.scale == "band") {
      const std::size_t every = label_stride(ya.categories.size());
      for (std::size_t i = 0; i < ya.categories.size(); i += every)
        text(x0_ - 6, by(static_cast<double>(i)) + 4, truncate(ya.categories[i], 16), "end");
    } else {
      for (const auto& t : ya.ticks) {
        const double y = sy(t.value);
        line(x0_, y, x1_, y, "#eee", "grid");
        line(x0_ - 4, y, x0_, y, "#333");
        text(x0_ - 6, y + 4, t.label, "end");
      }
    }
    const std::string rot = "class=\"label\" transform=\"rotate(-90 14 " + px((y0_ + y1_) / 2) + ")\"";
    text(14, (y0_ + y1_) / 2, ya.label, "middle", rot);
    out_ << "</g>";
  }

  void draw(const Series& s, std::size_t bar_index, std::size_t bar_count) {
    switch (s.type) {
      case SeriesType::Rect:
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          const double xa = sx(s.x[i]), xb = sx(s.x2[i]), ya = sy(s.y2[i]), yb = sy(s.y[i]);
          rect("bar", xa, std::min(ya, yb), xb - xa, std::abs(yb - ya), s.color, s.opacity);
        }
        break;
      case SeriesType::Bar: {
        const double bw = band_w() * 0.8;
        const double w = spec_.stacked ? bw : bw / static_cast<double>(std::max<std::size_t>(1, bar_count));
        const double offset = spec_.stacked ? 0 : w * static_cast<double>(bar_index);
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          if (!std::isfinite(s.y2[i])) continue;
          const double left = bx(s.x[i]) - bw / 2 + offset;
          const double ya = sy(s.y2[i]), yb = sy(s.y[i]);
          rect("bar", left, std::min(ya, yb), w, std::abs(yb - ya), s.color, s.opacity);
        }
        break;
      }
      case SeriesType::Line: {
        bool open = false;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
            if (open) out_ << "\"/>";
            open = false;
            continue;
          }
          out_ << (open ? " " : "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"")
               << px(ax(s.x[i])) << ',' << px(ay(s.y[i]));
          open = true;
        }
        if (open) out_ << "\"/>";
        break;
      }
      case SeriesType::Step: {
        if (s.x.size() < 2) break;
        out_ << "<path fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" d=\"M" << px(sx(s.x[0])) << ' '
             << px(sy(0));
        for (std::size_t i = 0; i < s.y.size() && i + 1 < s.x.size(); ++i)
          out_ << " V" << px(sy(s.y[i])) << " H" << px(sx(s.x[i + 1]));
        out_ << " V" << px(sy(0)) << "\"/>";
        break;
      }
      case SeriesType::Point:
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
          out_ << "<circle cx=\"" << px(ax(s.x[i])) << "\" cy=\"" << px(ay(s.y[i])) << "\" r=\"2.5\" fill=\""
               << s.color << '"';
          if (s.opacity < 1) out_ << " fill-opacity=\"" << fmt_fixed(s.opacity, 2) << '"';
          out_ << "/>";
        }
        break;
      case SeriesType::Hex: {
        const auto& xa = *spec_.x_axis;
        const auto& ya = *spec_.y_axis;
        double rx = s.x2.empty() ? 0 : s.x2[0] / (xa.max - xa.min) * (x1_ - x0_);
        double ry = s.y2.empty() ? 0 : s.y2[0] / (ya.max - ya.min) * (y1_ - y0_);
        if (!(rx > 0) || !std::isfinite(rx)) rx = 6;
        if (!(ry > 0) || !std::isfinite(ry)) ry = 6;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          const double cx = sx(s.x[i]), cy = sy(s.y[i]);
          out_ << "<polygon class=\"hex\" fill=\"" << scale_color(*spec_.color, s.value[i]) << "\" points=\"";
          for (int k = 0; k < 6; ++k) {
            const double a = (30.0 + 60.0 * k) * std::numbers::pi / 180.0;
            out_ << (k ? " " : "") << px(cx + rx * std::cos(a)) << ',' << px(cy - ry * std::sin(a));
          }
          out_ << "\"><title>" << fmt_num(s.value[i]) << "</title></polygon>";
        }
        break;
      }
      case SeriesType::Heat: {
        const double cw = band_w(), ch = band_h();
        const bool labels = s.value.size() <= 144 && cw >= 24 && ch >= 12;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          const double left = x0_ + s.x[i] * cw, top = y0_ + s.y[i] * ch;
          const std::string fill = scale_color(*spec_.color, s.value[i]);
          rect("cell", left, top, cw, ch, fill, 1);
          if (labels) {
            const bool integral = spec_.color->kind == "sequential" && spec_.color->max > 1;
            text(left + cw / 2, top + ch / 2 + 4, integral ? fmt_num(s.value[i]) : fmt_fixed(s.value[i], 2),
                 "middle", dark(fill) ? "font-size=\"9\" fill=\"#fff\"" : "font-size=\"9\"");
          }
        }
        break;
      }
      case SeriesType::Box: {
        const double bw = band_w() * 0.5;
        for (std::size_t i = 0; i < s.boxes.size(); ++i) {
          const auto& b = s.boxes[i];
          const double c = bx(s.x[i]);
          line(c, sy(b.lower_whisker), c, sy(b.q1), "#333");
          line(c, sy(b.q3), c, sy(b.upper_whisker), "#333");
          line(c - bw / 4, sy(b.lower_whisker), c + bw / 4, sy(b.lower_whisker), "#333");
          line(c - bw / 4, sy(b.upper_whisker), c + bw / 4, sy(b.upper_whisker), "#333");
          rect("box", c - bw / 2, sy(b.q3), bw, sy(b.q1) - sy(b.q3), s.color, 0.6);
          line(c - bw / 2, sy(b.median), c + bw / 2, sy(b.median), "#222", "median");
        }
        break;
      }
      case SeriesType::Slice: {
        double total = 0;
        for (double v : s.value) total += std::max(0.0, v);
        const double cx = (x0_ + x1_) / 2, cy = (y0_ + y1_) / 2;
        const double r = std::max(10.0, std::min(x1_ - x0_, y1_ - y0_) / 2 - 10);
        std::vector<std::string> colors;
        std::istringstream cs(s.color);
        for (std::string c; cs >> c;) colors.push_back(c);
        double angle = -std::numbers::pi / 2;
        for (std::size_t i = 0; i < s.value.size() && total > 0; ++i) {
          const double frac = std::max(0.0, s.value[i]) / total;
          const std::string fill = colors.empty() ? palette(i) : colors[i % colors.size()];
          if (frac >= 1.0) {
            out_ << "<circle class=\"slice\" cx=\"" << px(cx) << "\" cy=\"" << px(cy) << "\" r=\"" << px(r)
                 << "\" fill=\"" << fill << "\"/>";
            break;
          }
          const double end = angle + frac * 2 * std::numbers::pi;
          out_ << "<path class=\"slice\" fill=\"" << fill << "\" d=\"M" << px(cx) << ' ' << px(cy) << " L"
               << px(cx + r * std::cos(angle)) << ' ' << px(cy + r * std::sin(angle)) << " A" << px(r) << ' ' << px(r)
               << " 0 " << (frac > 0.5 ? 1 : 0) << " 1 " << px(cx + r * std::cos(end)) << ' '
               << px(cy + r * std::sin(end)) << " Z\"><title>"
               << escape_text(i < s.labels.size() ? s.labels[i] : "") << ": " << fmt_num(s.value[i])
               << "</title></path>";
          angle = end;
        }
        break;
      }
      case SeriesType::Link:
        for (std::size_t i = 0; i < s.x.size(); ++i) line(bx(s.x[i]), sy(s.y[i]), bx(s.x2[i]), sy(s.y2[i]), s.color);
        break;
    }
  }

  void legend() {
    std::vector<std::pair<std::string, std::string>> entries;
    for (const auto& s : spec_.series) {
      if (s.type == SeriesType::Slice) {
        std::vector<std::string> colors;
        std::istringstream cs(s.color);
        for (std::string c; cs >> c;) colors.push_back(c);
        for (std::size_t i = 0; i < s.labels.size(); ++i)
          entries.emplace_back(s.labels[i], colors.empty() ? palette(i) : colors[i % colors.size()]);
      } else if (s.type != SeriesType::Box && s.type != SeriesType::Heat && s.type != SeriesType::Hex &&
                 s.type != SeriesType::Link && s.name != "outliers") {
        entries.emplace_back(s.name, s.color);
      }
    }
    const bool slices = std::any_of(spec_.series.begin(), spec_.series.end(),
                                    [](const Series& s) { return s.type == SeriesType::Slice; });
    if (entries.size() < 2 && !slices) return;
    out_ << "<g class=\"legend\">";
    double y = y0_ + 4;
    for (const auto& [name, color] : entries) {
      rect("swatch", x1_ - 110, y, 10, 10, color, 1);
      text(x1_ - 96, y + 9, truncate(name, 16), "start");
      y += 14;
    }
    out_ << "</g>";
  }

  void color_legend() {
    if (!spec_.color) return;
    const auto& c = *spec_.color;
    out_ << "<g class=\"color-legend\">";
    constexpr int steps = 5;
    const double h = (y1_ - y0_) / steps;
    for (int i = 0; i < steps; ++i) {
      const double v = c.max - (c.max - c.min) * (i + 0.5) / steps;
      rect("swatch", x1_ + 12, y0_ + h * i, 12, h, scale_color(c, v), 1);
    }
    text(x1_ + 28, y0_ + 8, fmt_num(c.max), "start");
    text(x1_ + 28, y1_, fmt_num(c.min), "start");
    out_ << "</g>";
  }

  void table() {
    out_ << "<g class=\"table\">";
    double y = y0_ + 8;
    for (const auto& row : spec_.table) {
      const std::string_view fill = row.highlight ? "fill=\"#e15759\"" : "";
      text(24, y, row.label, "start", fill);
      text(w_ / 2.0, y, row.value, "start", fill);
      y += 20;
    }
    out_ << "</g>";
  }

  const ChartSpec& spec_;
  std::ostringstream out_;
  int w_ = 600;
  double h_ = 400;
  double x0_ = 0, x1_ = 0, y0_ = 0, y1_ = 0;
};

}  // namespace

std::string_view to_string(SeriesType t) noexcept {
  switch (t) {
    case SeriesType::Rect: return "rect";
    case SeriesType::Line: return "line";
    case SeriesType::Step: return "step";
    case SeriesType::Point: return "point";
    case SeriesType::Hex: return "hex";
    case SeriesType::Heat: return "heat";
    case SeriesType::Box: return "box";
    case SeriesType::Bar: return "bar";
    case SeriesType::Slice: return "slice";
    case SeriesType::Link: return "link";
  }
  return "rect";
}

std::string escape_xml(std::string_view text) { return escape_text(text); }

std::string render_svg(const ChartSpec& spec, const SvgOptions& options) {
  return Canvas(spec).render(options.standalone);
}

}  // namespace eda::render
