// Command-line front end: one subcommand per task family plus `report`.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "eda/config.hpp"
#include "eda/csv.hpp"
#include "eda/error.hpp"
#include "eda/render.hpp"
#include "eda/tasks.hpp"

namespace {

constexpr int kOk = 0, kUsage = 1, kData = 2, kKernel = 3;

struct Invocation {
  std::string subcommand;
  std::string data;
  std::vector<std::string> columns;
  std::vector<std::string> config;
  std::string config_file;
  std::string out;
  std::string json;
  std::string dump_graph;
  std::size_t workers = 1;
  long long chunk_rows = 65536;
  bool quiet = false;
};

std::size_t default_workers() {
  if (const char* env = std::getenv("EDA_WORKERS")) {
    try {
      const long long n = std::stoll(env);
      if (n >= 1) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
    std::cerr << "eda: ignoring invalid EDA_WORKERS=" << env << '\n';
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string default_output(const Invocation& inv) {
  std::string name = std::filesystem::path(inv.data).stem().string() + "." + inv.subcommand;
  for (const auto& c : inv.columns) name += "." + c;
  return name + ".html";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path);
}

eda::TaskFamily family_of(const std::string& sub) {
  if (sub == "correlation") return eda::TaskFamily::PlotCorrelation;
  if (sub == "missing") return eda::TaskFamily::PlotMissing;
  return eda::TaskFamily::Plot;
}

int run(const Invocation& inv) {
  eda::ConfigInput pairs;
  if (!inv.config_file.empty()) pairs = eda::parse_config_file(inv.config_file);
  for (const auto& c : inv.config) pairs.push_back(eda::parse_assignment(c));
  const eda::ConfigTree cfg = eda::build_config_mixed(pairs);

  if (inv.chunk_rows < 1) throw eda::InvalidChunkSize(inv.chunk_rows);
  eda::CsvOptions csv;
  csv.chunk_rows = static_cast<std::size_t>(inv.chunk_rows);
  const eda::DataFrame df = eda::read_csv(inv.data, csv);

  eda::RunOptions options;
  options.workers = inv.workers;
  if (!inv.quiet)
    options.on_progress = [](const eda::graph::Progress& p) {
      std::cerr << eda::graph::to_string(p.stage) << '/' << p.completed << '/' << p.total << '\n';
    };

  std::string html, json, graph;
  if (inv.subcommand == "report") {
    const auto report = eda::create_report(df, cfg, options);
    html = eda::render::assemble_html(report, cfg);
    if (!inv.json.empty()) json = eda::render::export_json(report);
    graph = report.graph.dump;
  } else {
    const auto result = eda::run_task(df, family_of(inv.subcommand), inv.columns, cfg, options);
    for (const auto& d : result.diagnostics) std::cerr << "eda: skipped " << d.panel << ": " << d.reason << '\n';
    html = eda::render::assemble_html(result, cfg);
    if (!inv.json.empty()) json = eda::render::export_json(result);
    graph = result.graph.dump;
  }

  write_file(inv.out.empty() ? default_output(inv) : inv.out, html);
  if (inv.json == "-")
    std::cout << json << std::flush;
  else if (!inv.json.empty())
    write_file(inv.json, json);
  if (!inv.dump_graph.empty()) write_file(inv.dump_graph, graph);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task-centric exploratory data analysis"};
  app.require_subcommand(1);
  Invocation inv;
  inv.workers = default_workers();

  const auto add_common = [&](CLI::App* sub, std::size_t max_columns) {
    sub->add_option("data", inv.data, "CSV file")->required();
    if (max_columns > 0)
      sub->add_option("columns", inv.columns, "Column names")->expected(0, static_cast<int>(max_columns));
    sub->add_option("--config", inv.config, "Set a config key, KEY=VALUE (repeatable)");
    sub->add_option("--config-file", inv.config_file, "File with one KEY=VALUE per line");
    sub->add_option("--out", inv.out, "HTML output path");
    sub->add_option("--json", inv.json, "JSON output path ('-' for stdout)");
    sub->add_option("--workers", inv.workers, "Worker threads (default: EDA_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--chunk-rows", inv.chunk_rows, "Rows per chunk");
    sub->add_option("--dump-graph", inv.dump_graph, "Write the compute graph to this file");
    sub->add_flag("--quiet", inv.quiet, "Suppress progress lines");
  };
  add_common(app.add_subcommand("plot", "Overview, univariate or bivariate plots"), 2);
  add_common(app.add_subcommand("correlation", "Correlation matrices, rankings and regression plots"), 2);
  add_common(app.add_subcommand("missing", "Missing value charts and the impact of dropping rows"), 2);
  add_common(app.add_subcommand("report", "Whole-dataset profile report"), 0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, std::cerr, std::cerr);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, std::cerr, std::cerr);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return kUsage;
  }
  inv.subcommand = app.get_subcommands().front()->get_name();

  try {
    return run(inv);
  } catch (const eda::ConfigError& e) {
    std::cerr << "eda: " << e.what() << '\n';
    return kUsage;
  } catch (const eda::DataError& e) {
    std::cerr << "eda: " << e.what() << '\n';
    return kData;
  } catch (const eda::KernelError& e) {
    std::cerr << "eda: " << e.what() << '\n';
    return kKernel;
  } catch (const std::exception& e) {
    std::cerr << "eda: " << e.what() << '\n';
    return kKernel;
  }
}
