#include <benchmark/benchmark.h>

#include "sagan/bbp.hpp"
#include "sagan/digits.hpp"
#include "sagan/normality.hpp"
#include "sagan/raster.hpp"
#include "sagan/search.hpp"

using namespace sagan;

static void BM_PiDecimal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(digits::decimal_digits(ConstantSpec::pi(), n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PiDecimal)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_PiBase11(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(digits::digits_in_base(ConstantSpec::pi(), 11, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PiBase11)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_BbpExtract(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bbp::digit_extract(bbp::pi_formula(), p, 8));
}
BENCHMARK(BM_BbpExtract)->Arg(1000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_ScanBlock(benchmark::State& state) {
  auto block = digits::digits_in_base(ConstantSpec::champernowne(10), 10, 1000000);
  const int n = static_cast<int>(state.range(0));
  auto matcher = search::compile(raster::rasterize_center(n), 10);
  for (auto _ : state) benchmark::DoNotOptimize(search::scan_block(block, matcher));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(block.size()));
}
BENCHMARK(BM_ScanBlock)->Arg(3)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_ScanBlockChunked(benchmark::State& state) {
  auto block = digits::digits_in_base(ConstantSpec::champernowne(10), 10, 1000000);
  auto matcher = search::compile(raster::rasterize_center(12), 10);
  for (auto _ : state)
    benchmark::DoNotOptimize(search::scan_block_chunked(block, matcher, static_cast<std::size_t>(state.range(0))));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(block.size()));
}
BENCHMARK(BM_ScanBlockChunked)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_KGramCounts(benchmark::State& state) {
  auto block = digits::digits_in_base(ConstantSpec::champernowne(10), 10, 1000000);
  for (auto _ : state) benchmark::DoNotOptimize(normality::kgram_counts(block, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_KGramCounts)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_Rasterize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(raster::rasterize_naive(n));
    benchmark::DoNotOptimize(raster::rasterize_center(n));
  }
}
BENCHMARK(BM_Rasterize)->Arg(64)->Arg(1024);
BENCHMARK_MAIN();
