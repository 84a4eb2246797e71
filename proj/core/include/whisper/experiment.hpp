#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "whisper/glossy.hpp"
#include "whisper/sim.hpp"
#include "whisper/topology.hpp"
#include "whisper/whisper.hpp"

namespace whisper {

enum class Protocol {
  Whisper,           // direction-aware sampling
  WhisperLazy,
  WhisperCompliant,  // buffered train, simultaneous stop
  Glossy,            // 4-byte preamble
  Glossy2b,
};

const char* protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name);  // throws on unknown

struct ExperimentConfig {
  std::string scenario_name = "custom";
  Protocol protocol = Protocol::Whisper;
  Topology topology;
  std::vector<int> senders;      // concurrent set, or rotation pool
  bool rotate_senders = false;   // one sender at a time, rotation_period floods each
  int rotation_period = 1000;
  bool collection = false;       // reliability measured at the sink only
  int sink_id = 1;
  int n_floods = 10000;
  int n_repetitions = 3;
  int no_signal_slots = 0;       // idle slots run after the floods, converged state
  std::uint64_t seed = 1;
  WhisperConfig whisper;
  GlossyConfig glossy;
  RadioTimingParams timing;
};

struct NodeMetrics {
  int node_id = 0;
  std::int64_t receiver_floods = 0;  // floods in which the node was a designated receiver
  std::int64_t received_floods = 0;
  double reliability = 0.0;          // received / receiver floods (0 if never a receiver)
  double radio_on_ms = 0.0;          // mean per flood, signaling slots
  double radio_on_idle_ms = 0.0;     // mean per idle slot (0 if none were run)
};

struct RepetitionMetrics {
  std::vector<NodeMetrics> nodes;  // sorted by node id
  double network_reliability = 0.0;   // mean over designated receivers
  double radio_on_ms = 0.0;           // mean over all nodes
  double radio_on_idle_ms = 0.0;
  double dropped_fraction = 0.0;      // (channel + corrupt) / heard opportunities
  // hop distance from the flood's sender set -> first decoded counter -> count
  std::map<int, std::map<int, std::int64_t>> first_counter_by_hop;
};

struct MetricsReport {
  ExperimentConfig config_echo;  // topology omitted from comparisons
  std::vector<RepetitionMetrics> repetitions;
  double network_reliability_mean = 0.0;
  double network_reliability_std = 0.0;
  double radio_on_ms_mean = 0.0;
  double radio_on_ms_std = 0.0;
  double radio_on_idle_ms_mean = 0.0;
  double radio_on_idle_ms_std = 0.0;
  double dropped_fraction_mean = 0.0;
  // Most frequent first counter per hop, pooled over repetitions.
  std::map<int, int> first_counter_mode_by_hop() const;
  // Per-node reliability and radio-on averaged over repetitions, sorted by id.
  std::vector<NodeMetrics> node_means() const;
};

MetricsReport run_experiment(const ExperimentConfig& cfg);

}  // namespace whisper
