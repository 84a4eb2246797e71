#include <doctest.h>

#include <sstream>
#include <vector>

#include "whisper/experiment.hpp"
#include "whisper/report.hpp"
#include "whisper/sim.hpp"
#include "whisper/topology.hpp"

using namespace whisper;

TEST_CASE("event queue pops by time, then by insertion order") {
  EventQueue q;
  std::vector<int> order;
  q.schedule(200, EventKind::SlotBoundary, 0, [&] { order.push_back(2); });
  q.schedule(100, EventKind::SlotBoundary, 0, [&] { order.push_back(1); });
  q.schedule(200, EventKind::SlotBoundary, 0, [&] { order.push_back(3); });
  while (!q.empty()) q.pop().fn();
  CHECK(order == std::vector<int>{1, 2, 3});
}

TEST_CASE("scheduling into the past is a hard error") {
  EventQueue q;
  q.schedule(100, EventKind::SlotBoundary, 0, [] {});
  q.pop().fn();
  CHECK(q.now() == 100);
  CHECK_THROWS_AS(q.schedule(50, EventKind::SlotBoundary, 0, [] {}), std::logic_error);
}

namespace {

SlotTrace whisper_flood(std::uint64_t seed, std::uint64_t flood,
                        std::vector<SamplingState>& sampling) {
  Topology topo = make_flocklab_like_topology(TxPower::ZeroDbm);
  WhisperConfig cfg = WhisperConfig::standard();
  RadioTimingParams timing;
  return run_whisper_slot(topo, cfg, timing, {1}, sampling, {seed, 0, flood});
}

bool traces_equal(const SlotTrace& a, const SlotTrace& b) {
  if (a.timelines.size() != b.timelines.size()) return false;
  for (std::size_t i = 0; i < a.timelines.size(); ++i) {
    const auto& x = a.timelines[i].intervals();
    const auto& y = b.timelines[i].intervals();
    if (x.size() != y.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j].state != y[j].state || x[j].start != y[j].start || x[j].end != y[j].end) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("same seed reproduces the identical trace, different flood does not") {
  std::vector<SamplingState> s1(27), s2(27), s3(27);
  const SlotTrace a = whisper_flood(99, 0, s1);
  const SlotTrace b = whisper_flood(99, 0, s2);
  const SlotTrace c = whisper_flood(99, 1, s3);
  CHECK(traces_equal(a, b));
  CHECK_FALSE(traces_equal(a, c));
}

TEST_CASE("verdict conservation: every opportunity is accounted for exactly once") {
  std::vector<SamplingState> sampling(27);
  const SlotTrace trace = whisper_flood(123, 0, sampling);
  std::int64_t sum = 0;
  for (const auto& st : trace.stats) {
    sum += st.delivered + st.dropped_channel + st.dropped_corrupt + st.not_heard;
    CHECK(st.delivered >= 0);
    CHECK(st.dropped_channel >= 0);
    CHECK(st.dropped_corrupt >= 0);
    CHECK(st.not_heard >= 0);
  }
  CHECK(sum == trace.opportunities());
  CHECK(sum > 0);
}

TEST_CASE("bundled graph diameters sit in the reported bands") {
  Topology zero = make_flocklab_like_topology(TxPower::ZeroDbm);
  Topology low = make_flocklab_like_topology(TxPower::MinusTenDbm);
  std::vector<int> disconnected;
  const int d0 = zero.compute_diameter(1, 0.5, &disconnected);
  CHECK(disconnected.empty());
  CHECK(d0 >= 5);
  CHECK(d0 <= 6);
  const int d1 = low.compute_diameter(1, 0.5, &disconnected);
  CHECK(disconnected.empty());
  CHECK(d1 >= 3);
  CHECK(d1 <= 4);
  for (const auto& l : zero.links()) {
    CHECK(l.prr >= 0.85);
    CHECK(l.prr <= 0.99);
  }
}

TEST_CASE("topology io round trip and error handling") {
  Topology topo = make_line_topology(4, 0.9);
  std::stringstream buf;
  topo.save(buf);
  Topology loaded = Topology::load(buf);
  CHECK(loaded.node_count() == 4);
  CHECK(loaded.links().size() == topo.links().size());

  std::stringstream bad1("1 2 0.5\n");  // edge before header
  CHECK_THROWS(Topology::load(bad1));
  std::stringstream bad2("nodes 2\n1 1 0.5\n");  // self link
  CHECK_THROWS(Topology::load(bad2));
  std::stringstream bad3("nodes 2\n1 2 1.5\n");  // prr outside [0,1]
  CHECK_THROWS(Topology::load(bad3));
  std::stringstream bad4("nodes 2\n1 3 0.5\n");  // unknown node id
  CHECK_THROWS(Topology::load(bad4));
  CHECK_THROWS(Topology::load_file("/nonexistent/file.topo"));

  std::stringstream commented("# comment\nnodes 3\n1 2 0.9 250\n2 3 0.8\n");
  Topology t = Topology::load(commented);
  CHECK(t.links().size() == 2);
  CHECK(t.links()[0].propagation_delay == 250);
}

TEST_CASE("copied topologies rebuild adjacency independently") {
  Topology a = make_line_topology(3);
  (void)a.in_links();  // populate the cache
  Topology b = a;      // copy must not share cached pointers
  a.add_symmetric_link(1, 3, 0.5);
  CHECK(b.links().size() == 4);
  CHECK(a.links().size() == 6);
  CHECK(b.in_links()[0].size() == 1);
  CHECK(a.in_links()[0].size() == 2);
}

TEST_CASE("experiment runs are reproducible byte for byte") {
  ExperimentConfig cfg;
  cfg.scenario_name = "diss.fixed";
  cfg.protocol = Protocol::Whisper;
  cfg.topology = make_flocklab_like_topology(TxPower::ZeroDbm);
  cfg.senders = {1};
  cfg.n_floods = 30;
  cfg.n_repetitions = 2;
  cfg.no_signal_slots = 5;
  cfg.seed = 77;

  auto render = [&] {
    const MetricsReport report = run_experiment(cfg);
    std::stringstream out;
    write_summary_csv(out, {report}, {"0dbm"});
    write_per_node_csv(out, {report});
    write_hop_histogram_csv(out, report);
    return out.str();
  };
  const std::string first = render();
  const std::string second = render();
  CHECK(first == second);
  CHECK(first.find("diss.fixed,whisper,0dbm,") != std::string::npos);
}

TEST_CASE("reverse initialization seeds collection sampling from hop distance") {
  Topology topo = make_line_topology(5);
  WhisperConfig cfg = WhisperConfig::standard();
  cfg.clock = ClockProfile::ideal();
  RadioTimingParams timing;
  std::vector<SamplingState> sampling(5);
  reverse_initialization(topo, cfg, timing, 1, sampling, 42);
  // Node 5 sits 4 hops from the sink: first in the reversed flood order.
  // Nodes closer to the sink expect later (larger) counters.
  CHECK(sampling[4].c_min <= sampling[1].c_min);
  for (int idx = 1; idx < 5; ++idx) {
    CHECK(sampling[static_cast<std::size_t>(idx)].initialized);
    CHECK_FALSE(sampling[static_cast<std::size_t>(idx)].lazy_fallback);
  }
}
