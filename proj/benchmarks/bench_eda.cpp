#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>

#include "eda/analytics.hpp"
#include "eda/config.hpp"
#include "eda/render.hpp"
#include "eda/tasks.hpp"

namespace {

using namespace eda;

// n rows, `num` normal columns and `cat` categorical columns, 5% missing.
DataFrame synthetic(std::size_t rows, std::size_t num, std::size_t cat) {
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> normal(0, 1);
  std::uniform_real_distribution<double> unit(0, 1);
  std::vector<ColumnInput> inputs;
  for (std::size_t c = 0; c < num; ++c) {
    NumericCells cells(rows);
    for (auto& v : cells)
      if (unit(rng) >= 0.05) v = normal(rng) * static_cast<double>(c + 1) + static_cast<double>(c);
    inputs.push_back({"n" + std::to_string(c), std::move(cells)});
  }
  for (std::size_t c = 0; c < cat; ++c) {
    CategoricalCells cells(rows);
    for (auto& v : cells)
      if (unit(rng) >= 0.05) v = "k" + std::to_string(static_cast<int>(std::pow(unit(rng), 2) * 30));
    inputs.push_back({"c" + std::to_string(c), std::move(cells)});
  }
  return make_frame(inputs);
}

const DataFrame& desk_frame() {
  static const auto df = synthetic(100000, 10, 5);
  return df;
}

const ConfigTree& defaults() {
  static const auto cfg = build_config();
  return cfg;
}

void BM_ColumnStats(benchmark::State& state) {
  const auto df = synthetic(static_cast<std::size_t>(state.range(0)), 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(analytics::column_stats(df.column(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ColumnStats)->Arg(10000)->Arg(100000)->Arg(1000000);

void BM_Histogram(benchmark::State& state) {
  const auto df = synthetic(static_cast<std::size_t>(state.range(0)), 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(analytics::histogram(df.column(0), 50));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Histogram)->Arg(100000)->Arg(1000000);

void BM_CorrMatrix(benchmark::State& state, const char* method) {
  const auto& df = desk_frame();
  for (auto _ : state) benchmark::DoNotOptimize(analytics::corr_matrix(df, method));
}
BENCHMARK_CAPTURE(BM_CorrMatrix, pearson, "pearson")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CorrMatrix, spearman, "spearman")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CorrMatrix, kendall, "kendall")->Unit(benchmark::kMillisecond);

void BM_PlotNumerical(benchmark::State& state) {
  const auto& df = desk_frame();
  const RunOptions opts{static_cast<std::size_t>(state.range(0)), {}};
  for (auto _ : state) benchmark::DoNotOptimize(run_task(df, TaskFamily::Plot, {"n3"}, defaults(), opts));
}
BENCHMARK(BM_PlotNumerical)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PlotMissing(benchmark::State& state) {
  const auto& df = desk_frame();
  for (auto _ : state) benchmark::DoNotOptimize(run_task(df, TaskFamily::PlotMissing, {}, defaults()));
}
BENCHMARK(BM_PlotMissing)->Unit(benchmark::kMillisecond);

void BM_Report(benchmark::State& state) {
  const auto& df = desk_frame();
  const RunOptions opts{static_cast<std::size_t>(state.range(0)), {}};
  for (auto _ : state) benchmark::DoNotOptimize(create_report(df, defaults(), opts));
}
BENCHMARK(BM_Report)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_RenderReportHtml(benchmark::State& state) {
  const auto report = create_report(desk_frame(), defaults());
  for (auto _ : state) benchmark::DoNotOptimize(render::assemble_html(report, defaults()));
}
BENCHMARK(BM_RenderReportHtml)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
