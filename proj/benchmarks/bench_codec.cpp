#include <benchmark/benchmark.h>

#include "whisper/packlet.hpp"

using namespace whisper;

static void BM_BuildSignalingPacket(benchmark::State& state) {
  PackletConfig cfg;
  const int n_tx = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_signaling_packet(cfg, n_tx, 0, TxMode::Looping));
  }
}
BENCHMARK(BM_BuildSignalingPacket)->Arg(3)->Arg(14);

static void BM_ScanForPacklet(benchmark::State& state) {
  PackletConfig cfg;
  const auto stream = build_signaling_packet(cfg, 14, 0, TxMode::Looping);
  const std::size_t offset = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_for_packlet(stream, offset, cfg));
  }
}
BENCHMARK(BM_ScanForPacklet)->Arg(0)->Arg(37)->Arg(500);

static void BM_ComputeFcs(benchmark::State& state) {
  std::vector<std::uint8_t> payload(static_cast<std::size_t>(state.range(0)), 0xA5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_fcs(payload));
  }
}
BENCHMARK(BM_ComputeFcs)->Arg(1)->Arg(16)->Arg(128);

BENCHMARK_MAIN();
