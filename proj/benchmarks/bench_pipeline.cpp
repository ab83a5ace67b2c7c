// Microbenchmarks for the hot path at desk scale (296 tickers, two years
// of daily prices). Run with --benchmark_min_time=... to tighten noise.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>

#include "mstnet/community.hpp"
#include "mstnet/distance.hpp"
#include "mstnet/mst.hpp"
#include "mstnet/pipeline.hpp"
#include "mstnet/price_table.hpp"
#include "mstnet/returns.hpp"
#include "mstnet/synth.hpp"

namespace {

using namespace mstnet;

const PriceTable& desk_panel() {
  static const PriceTable table = [] {
    SynthSpec spec;
    spec.blocks = 8;
    spec.per_block = 37;  // 296 tickers
    spec.days = 504;
    spec.rho_in = 0.5;
    spec.seed = 42;
    return make_planted_panel(spec);
  }();
  return table;
}

const ReturnsMatrix& desk_returns() {
  static const ReturnsMatrix panel = log_returns(desk_panel());
  return panel;
}

const DistanceMatrix& desk_distances() {
  static const DistanceMatrix dm = pearson(desk_returns(), 1);
  return dm;
}

void bench_log_returns(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_returns(desk_panel()));
  }
}
BENCHMARK(bench_log_returns);

void bench_pearson(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pearson(desk_returns(), threads));
  }
}
BENCHMARK(bench_pearson)->Arg(1)->Arg(4);

void bench_build_mst(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_mst(desk_distances()));
  }
}
BENCHMARK(bench_build_mst);

void bench_louvain(benchmark::State& state) {
  const WeightedTree tree = build_mst(desk_distances());
  for (auto _ : state) {
    benchmark::DoNotOptimize(louvain(tree, 1.0, 0, true));
  }
}
BENCHMARK(bench_louvain);

void bench_run_pipeline(benchmark::State& state) {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "mstnet_bench";
  fs::create_directories(root);
  const PriceTable& table = desk_panel();
  {
    std::ofstream p(root / "prices.csv", std::ios::binary);
    write_prices_csv(p, table);
    std::ofstream s(root / "sectors.csv", std::ios::binary);
    write_sectors_csv(s, table);
  }
  RunConfig config;
  config.prices_path = (root / "prices.csv").string();
  config.sectors_path = (root / "sectors.csv").string();
  config.windows = {{table.dates.front(), table.dates.back(), "full"}};
  config.output_dir = (root / "out").string();
  config.formats = {"json", "csv"};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_pipeline(config));
  }
  std::error_code ec;
  fs::remove_all(root, ec);
}
BENCHMARK(bench_run_pipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
