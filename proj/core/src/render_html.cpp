#include <sstream>

#include "eda/render.hpp"
#include "json.hpp"
#include "render_util.hpp"

namespace eda::render::detail {
std::string_view viewer_bundle();
}

namespace eda::render {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kStyle = R"css(
body{font-family:-apple-system,"Segoe UI",Helvetica,Arial,sans-serif;margin:0;color:#222;background:#fafafa}
.eda-header{padding:16px 24px;background:#fff;border-bottom:1px solid #ddd}
.eda-header h1{margin:0;font-size:20px}
.eda-meta{margin:4px 0 0;color:#666;font-size:13px}
.eda-doc{padding:16px 24px}
.eda-toc a{margin-right:12px}
.eda-section{margin-bottom:32px}
.eda-tabset{background:#fff;border:1px solid #ddd;border-radius:4px;margin-bottom:16px}
.eda-tabs{display:flex;flex-wrap:wrap;border-bottom:1px solid #ddd}
.eda-tab{padding:8px 12px;color:#333;text-decoration:none;font-size:13px;border-bottom:2px solid transparent}
.eda-tab.active{border-bottom-color:#4e79a7;font-weight:600}
.eda-panel{padding:12px 16px}
.eda-panel h2,.eda-panel h3{font-size:15px;margin:0 0 8px}
.eda-badge{color:#e15759;font-weight:700;cursor:help;margin-left:4px}
.eda-table{border-collapse:collapse;font-size:13px}
.eda-table th{text-align:left;font-weight:400;color:#555;padding:2px 16px 2px 0}
.eda-table td{padding:2px 0}
.eda-table tr.highlight th,.eda-table tr.highlight td{color:#e15759;font-weight:600}
.eda-insights{font-size:13px;padding-left:18px}
.eda-insights .warning{color:#b8312f}
.eda-howto summary{cursor:pointer;color:#4e79a7;font-size:13px}
.eda-howto code{background:#f1f1f1;padding:1px 4px}
.eda-skip{color:#888;font-style:italic}
.eda-note{color:#666;font-size:13px}
)css";

std::string attr(std::string_view s) {
  std::string out = escape_text(s);
  std::string nl;
  for (char c : out) {
    if (c == '\n')
      nl += "&#10;";
    else
      nl += c;
  }
  return nl;
}

std::string tooltip(const Panel& p) {
  std::string t;
  for (std::size_t i = 0; i < p.insights.size(); ++i) t += (i ? "\n" : "") + p.insights[i].message;
  return t;
}

std::string badge(const Panel& p) {
  if (p.insights.empty()) return {};
  return "<span class=\"eda-badge\" title=\"" + attr(tooltip(p)) + "\">(!)</span>";
}

void panel_body(std::ostringstream& out, const Panel& p, const ConfigTree& cfg) {
  const ChartSpec spec = to_chart_spec(p, cfg);
  if (!p.data) {
    out << "<p class=\"eda-skip\">Not shown: " << escape_text(p.skip_reason.value_or("no data")) << "</p>";
  } else if (!spec.table.empty()) {
    out << "<table class=\"eda-table\">";
    for (const auto& row : spec.table)
      out << "<tr" << (row.highlight ? " class=\"highlight\"" : "") << "><th>" << escape_text(row.label)
          << "</th><td>" << escape_text(row.value) << "</td></tr>";
    out << "</table>";
  } else {
    out << render_svg(spec, {false});
  }
  if (!p.insights.empty()) {
    out << "<ul class=\"eda-insights\">";
    for (const auto& i : p.insights)
      out << "<li class=\"" << to_string(i.severity) << "\">" << escape_text(i.message) << "</li>";
    out << "</ul>";
  }
  if (!p.howto.empty()) {
    out << "<details class=\"eda-howto\"><summary title=\"How to customize this chart\">(?)</summary>"
           "<table class=\"eda-table\">";
    for (const auto& h : p.howto)
      out << "<tr><th>" << escape_text(h.key) << "</th><td>" << escape_text(h.value) << "</td><td><code>"
          << escape_text(h.snippet) << "</code></td></tr>";
    out << "</table></details>";
  }
}

void tabset(std::ostringstream& out, const std::vector<Panel>& panels, const ConfigTree& cfg,
            const std::string& heading = {}) {
  out << "<div class=\"eda-tabset\">";
  if (!heading.empty()) out << "<h3 class=\"eda-group\">" << escape_text(heading) << "</h3>";
  out << "<nav class=\"eda-tabs\" role=\"tablist\">";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto& p = panels[i];
    out << "<a class=\"eda-tab" << (i == 0 ? " active" : "") << "\" role=\"tab\" href=\"#" << attr(p.id)
        << "\" aria-controls=\"" << attr(p.id) << "\" aria-selected=\"" << (i == 0 ? "true" : "false") << "\">"
        << escape_text(chart_label(p.kind)) << badge(p) << "</a>";
  }
  out << "</nav>";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto& p = panels[i];
    out << "<section class=\"eda-panel" << (i == 0 ? " active" : "") << "\" id=\"" << attr(p.id)
        << "\" role=\"tabpanel\" data-kind=\"" << to_string(p.kind) << "\"><h2>" << escape_text(p.title) << badge(p)
        << "</h2>";
    panel_body(out, p, cfg);
    out << "</section>";
  }
  out << "</div>";
}

Json manifest_entry(const Panel& p, const std::string& group) {
  Json msgs = Json::array(), howto = Json::array();
  for (const auto& i : p.insights) msgs.push_back(i.message);
  for (const auto& h : p.howto) howto.push_back(Json{{"key", h.key}, {"value", h.value}, {"snippet", h.snippet}});
  Json j{{"id", p.id}, {"title", p.title}, {"tab", std::string(chart_label(p.kind))}, {"kind", std::string(to_string(p.kind))}};
  j["group"] = group;
  j["has_insight"] = !p.insights.empty();
  j["insights"] = msgs;
  j["howto"] = howto;
  return j;
}

// JSON inside a script element must not close the element.
std::string script_safe(std::string s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '<' && i + 1 < s.size() && (s[i + 1] == '/' || s[i + 1] == '!'))
      out += "\\u003c";
    else
      out += s[i];
  }
  return out;
}

void head(std::ostringstream& out, const std::string& title) {
  out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
         "<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\">\n<title>"
      << escape_text(title) << "</title>\n<style>" << kStyle << "</style>\n</head>\n<body>\n";
}

void header(std::ostringstream& out, const std::string& title, const DatasetInfo& d) {
  out << "<header class=\"eda-header\"><h1>" << escape_text(title) << "</h1><p class=\"eda-meta\">";
  if (!d.source.empty()) out << escape_text(d.source) << ": ";
  out << fmt_count(d.rows) << " rows, " << fmt_count(d.columns.size()) << " columns</p></header>\n";
}

void diagnostics(std::ostringstream& out, const std::vector<Diagnostic>& ds) {
  if (ds.empty()) return;
  out << "<details class=\"eda-diagnostics\"><summary>Skipped charts (" << ds.size() << ")</summary><ul>";
  for (const auto& d : ds) out << "<li>" << escape_text(d.panel) << ": " << escape_text(d.reason) << "</li>";
  out << "</ul></details>";
}

void tail(std::ostringstream& out, const Json& manifest, std::string_view bundle) {
  std::string m;
  m = manifest.dump();
  out << "\n<script type=\"application/json\" id=\"eda-manifest\">" << script_safe(std::move(m)) << "</script>\n";
  out << "<script>" << bundle << "</script>\n</body>\n</html>\n";
}

}  // namespace

std::string_view viewer_bundle() { return detail::viewer_bundle(); }

std::string assemble_html(const TaskResult& result, const ConfigTree& cfg, std::string_view bundle) {
  std::ostringstream out;
  head(out, "EDA: " + result.task);
  header(out, result.task, result.dataset);
  out << "<main class=\"eda-doc\">";
  tabset(out, result.panels, cfg);
  diagnostics(out, result.diagnostics);
  out << "</main>";
  Json panels = Json::array();
  for (const auto& p : result.panels) panels.push_back(manifest_entry(p, "group-1"));
  tail(out, Json{{"schema_version", "1"}, {"panels", panels}}, bundle);
  return out.str();
}

std::string assemble_html(const Report& report, const ConfigTree& cfg, std::string_view bundle) {
  std::ostringstream out;
  head(out, "EDA report");
  header(out, "EDA report", report.dataset);
  out << "<main class=\"eda-doc\"><nav class=\"eda-toc\">";
  for (std::size_t s = 0; s < report.sections.size(); ++s)
    out << "<a href=\"#section-" << s + 1 << "\">" << escape_text(report.sections[s].name) << "</a>";
  out << "</nav>";
  Json panels = Json::array();
  std::size_t group_no = 0;
  for (std::size_t s = 0; s < report.sections.size(); ++s) {
    const auto& section = report.sections[s];
    out << "<section class=\"eda-section\" id=\"section-" << s + 1 << "\"><h2>" << escape_text(section.name)
        << "</h2>";
    if (section.note) out << "<p class=\"eda-note\">" << escape_text(*section.note) << "</p>";
    for (const auto& g : section.groups) {
      const std::string gid = "group-" + std::to_string(++group_no);
      tabset(out, g.panels, cfg, g.title);
      for (const auto& p : g.panels) panels.push_back(manifest_entry(p, gid));
    }
    diagnostics(out, section.diagnostics);
    out << "</section>";
  }
  out << "</main>";
  tail(out, Json{{"schema_version", "1"}, {"panels", panels}}, bundle);
  return out.str();
}

std::string assemble_html(const TaskResult& result, const ConfigTree& cfg) {
  return assemble_html(result, cfg, viewer_bundle());
}

std::string assemble_html(const Report& report, const ConfigTree& cfg) {
  return assemble_html(report, cfg, viewer_bundle());
}

}  // namespace eda::render
