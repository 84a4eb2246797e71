#include <benchmark/benchmark.h>

#include <vector>

#include "whisper/glossy.hpp"
#include "whisper/sim.hpp"
#include "whisper/topology.hpp"
#include "whisper/whisper.hpp"

using namespace whisper;

static void BM_WhisperSlot(benchmark::State& state) {
  Topology topo = make_flocklab_like_topology(TxPower::ZeroDbm);
  WhisperConfig cfg = WhisperConfig::standard();
  RadioTimingParams timing;
  std::uint64_t flood = 0;
  std::vector<SamplingState> sampling(static_cast<std::size_t>(topo.node_count()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_whisper_slot(topo, cfg, timing, {1}, sampling, {1, 0, flood++}));
  }
}
BENCHMARK(BM_WhisperSlot);

static void BM_GlossySlot(benchmark::State& state) {
  Topology topo = make_flocklab_like_topology(TxPower::ZeroDbm);
  GlossyConfig cfg = GlossyConfig::standard();
  RadioTimingParams timing;
  std::uint64_t flood = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_glossy_slot(topo, cfg, timing, {1}, {1, 0, flood++}));
  }
}
BENCHMARK(BM_GlossySlot);

BENCHMARK_MAIN();
