#include "whisper/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace whisper {

const char* protocol_name(Protocol p) {
  switch (p) {
    case Protocol::Whisper: return "whisper";
    case Protocol::WhisperLazy: return "whisper-lazy";
    case Protocol::WhisperCompliant: return "whisper-compliant";
    case Protocol::Glossy: return "glossy";
    case Protocol::Glossy2b: return "glossy-2b";
  }
  return "?";
}

Protocol protocol_from_name(const std::string& name) {
  if (name == "whisper") return Protocol::Whisper;
  if (name == "whisper-lazy") return Protocol::WhisperLazy;
  if (name == "whisper-compliant") return Protocol::WhisperCompliant;
  if (name == "glossy") return Protocol::Glossy;
  if (name == "glossy-2b") return Protocol::Glossy2b;
  throw std::invalid_argument("unknown protocol: " + name);
}

namespace {

bool is_whisper(Protocol p) {
  return p == Protocol::Whisper || p == Protocol::WhisperLazy ||
         p == Protocol::WhisperCompliant;
}

// Hop distance from the nearest sender, for the first-counter histogram.
std::vector<int> hops_from_set(const Topology& topo, const std::vector<int>& senders) {
  std::vector<int> best(static_cast<std::size_t>(topo.node_count()), -1);
  for (int s : senders) {
    const auto d = topo.hops_from(s);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] >= 0 && (best[i] < 0 || d[i] < best[i])) best[i] = d[i];
    }
  }
  return best;
}

struct Accumulator {
  std::vector<std::int64_t> receiver_floods;
  std::vector<std::int64_t> received_floods;
  std::vector<double> radio_on_ns;       // summed over signaling slots
  std::vector<double> idle_radio_on_ns;  // summed over idle slots
  std::int64_t delivered = 0;
  std::int64_t dropped = 0;
  std::map<int, std::map<int, std::int64_t>> first_counter_by_hop;
};

}  // namespace

MetricsReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.n_floods < 1) throw std::invalid_argument("n_floods must be >= 1");
  if (cfg.n_repetitions < 1) throw std::invalid_argument("n_repetitions must be >= 1");
  if (cfg.senders.empty()) throw std::invalid_argument("sender set is empty");
  for (int s : cfg.senders) {
    if (cfg.topology.index_of(s) < 0) {
      throw std::invalid_argument("sender " + std::to_string(s) + " not in topology");
    }
  }
  const int n = cfg.topology.node_count();
  const int sink_idx = cfg.collection ? cfg.topology.index_of(cfg.sink_id) : -1;
  if (cfg.collection && sink_idx < 0) throw std::invalid_argument("sink not in topology");

  MetricsReport report;
  report.config_echo = cfg;

  for (int rep = 0; rep < cfg.n_repetitions; ++rep) {
    Accumulator acc;
    acc.receiver_floods.assign(static_cast<std::size_t>(n), 0);
    acc.received_floods.assign(static_cast<std::size_t>(n), 0);
    acc.radio_on_ns.assign(static_cast<std::size_t>(n), 0.0);
    acc.idle_radio_on_ns.assign(static_cast<std::size_t>(n), 0.0);

    std::vector<SamplingState> sampling(static_cast<std::size_t>(n));
    if (is_whisper(cfg.protocol) && cfg.collection) {
      reverse_initialization(cfg.topology, cfg.whisper, cfg.timing, cfg.sink_id, sampling,
                             cfg.seed + static_cast<std::uint64_t>(rep));
    }

    std::vector<int> flood_senders = cfg.senders;
    std::vector<int> hops = hops_from_set(cfg.topology, flood_senders);

    for (int flood = 0; flood < cfg.n_floods; ++flood) {
      if (cfg.rotate_senders) {
        const auto turn = static_cast<std::size_t>(flood / cfg.rotation_period) %
                          cfg.senders.size();
        std::vector<int> current{cfg.senders[turn]};
        if (current != flood_senders || flood == 0) {
          flood_senders = std::move(current);
          hops = hops_from_set(cfg.topology, flood_senders);
        }
      }
      const SlotSeed slot_seed{cfg.seed, static_cast<std::uint64_t>(rep),
                               static_cast<std::uint64_t>(flood)};
      SlotTrace trace = is_whisper(cfg.protocol)
                            ? run_whisper_slot(cfg.topology, cfg.whisper, cfg.timing,
                                               flood_senders, sampling, slot_seed)
                            : run_glossy_slot(cfg.topology, cfg.glossy, cfg.timing,
                                              flood_senders, slot_seed);

      for (int idx = 0; idx < n; ++idx) {
        const auto i = static_cast<std::size_t>(idx);
        const NodeSlotStats& st = trace.stats[i];
        acc.radio_on_ns[i] += static_cast<double>(trace.timelines[i].radio_on_ns());
        acc.delivered += st.delivered;
        acc.dropped += st.dropped_channel + st.dropped_corrupt;

        const bool is_sender =
            std::find(flood_senders.begin(), flood_senders.end(),
                      cfg.topology.id_of(idx)) != flood_senders.end();
        const bool is_receiver = cfg.collection ? idx == sink_idx : !is_sender;
        if (is_receiver) {
          acc.receiver_floods[i] += 1;
          if (st.received) acc.received_floods[i] += 1;
        }
        if (st.received && hops[i] > 0) {
          acc.first_counter_by_hop[hops[i]][st.first_counter] += 1;
        }
      }
    }

    // Idle slots run against the converged sampling state; the "radio-on
    // without signaling" column.
    for (int slot = 0; slot < cfg.no_signal_slots; ++slot) {
      const SlotSeed slot_seed{cfg.seed, static_cast<std::uint64_t>(rep),
                               (1ULL << 32) + static_cast<std::uint64_t>(slot)};
      std::vector<SamplingState> idle_sampling = sampling;  // idle slots teach nothing
      SlotTrace trace = is_whisper(cfg.protocol)
                            ? run_whisper_slot(cfg.topology, cfg.whisper, cfg.timing, {},
                                               idle_sampling, slot_seed)
                            : run_glossy_slot(cfg.topology, cfg.glossy, cfg.timing, {},
                                              slot_seed);
      for (int idx = 0; idx < n; ++idx) {
        acc.idle_radio_on_ns[static_cast<std::size_t>(idx)] +=
            static_cast<double>(trace.timelines[static_cast<std::size_t>(idx)].radio_on_ns());
      }
    }

    RepetitionMetrics rm;
    rm.first_counter_by_hop = std::move(acc.first_counter_by_hop);
    double reliability_sum = 0.0;
    int receiver_count = 0;
    double radio_on_sum = 0.0;
    double idle_sum = 0.0;
    for (int idx = 0; idx < n; ++idx) {
      const auto i = static_cast<std::size_t>(idx);
      NodeMetrics nm;
      nm.node_id = cfg.topology.id_of(idx);
      nm.receiver_floods = acc.receiver_floods[i];
      nm.received_floods = acc.received_floods[i];
      nm.reliability = acc.receiver_floods[i] > 0
                           ? static_cast<double>(acc.received_floods[i]) /
                                 static_cast<double>(acc.receiver_floods[i])
                           : 0.0;
      nm.radio_on_ms = acc.radio_on_ns[i] / static_cast<double>(cfg.n_floods) / 1e6;
      nm.radio_on_idle_ms =
          cfg.no_signal_slots > 0
              ? acc.idle_radio_on_ns[i] / static_cast<double>(cfg.no_signal_slots) / 1e6
              : 0.0;
      if (nm.receiver_floods > 0) {
        reliability_sum += nm.reliability;
        receiver_count += 1;
      }
      radio_on_sum += nm.radio_on_ms;
      idle_sum += nm.radio_on_idle_ms;
      rm.nodes.push_back(nm);
    }
    rm.network_reliability = receiver_count > 0 ? reliability_sum / receiver_count : 0.0;
    rm.radio_on_ms = radio_on_sum / n;
    rm.radio_on_idle_ms = idle_sum / n;
    const double heard = static_cast<double>(acc.delivered + acc.dropped);
    rm.dropped_fraction = heard > 0.0 ? static_cast<double>(acc.dropped) / heard : 0.0;
    report.repetitions.push_back(std::move(rm));
  }

  auto mean_std = [&](auto getter, double& mean, double& sd) {
    double sum = 0.0;
    for (const auto& r : report.repetitions) sum += getter(r);
    mean = sum / static_cast<double>(report.repetitions.size());
    double var = 0.0;
    for (const auto& r : report.repetitions) {
      const double d = getter(r) - mean;
      var += d * d;
    }
    sd = report.repetitions.size() > 1
             ? std::sqrt(var / static_cast<double>(report.repetitions.size() - 1))
             : 0.0;
  };
  mean_std([](const RepetitionMetrics& r) { return r.network_reliability; },
           report.network_reliability_mean, report.network_reliability_std);
  mean_std([](const RepetitionMetrics& r) { return r.radio_on_ms; }, report.radio_on_ms_mean,
           report.radio_on_ms_std);
  mean_std([](const RepetitionMetrics& r) { return r.radio_on_idle_ms; },
           report.radio_on_idle_ms_mean, report.radio_on_idle_ms_std);
  double dropped_sum = 0.0;
  for (const auto& r : report.repetitions) dropped_sum += r.dropped_fraction;
  report.dropped_fraction_mean = dropped_sum / static_cast<double>(report.repetitions.size());
  return report;
}

std::map<int, int> MetricsReport::first_counter_mode_by_hop() const {
  std::map<int, std::map<int, std::int64_t>> pooled;
  for (const auto& rep : repetitions) {
    for (const auto& [hop, hist] : rep.first_counter_by_hop) {
      for (const auto& [counter, count] : hist) pooled[hop][counter] += count;
    }
  }
  std::map<int, int> modes;
  for (const auto& [hop, hist] : pooled) {
    int best_counter = -1;
    std::int64_t best_count = -1;
    for (const auto& [counter, count] : hist) {
      if (count > best_count) {
        best_count = count;
        best_counter = counter;
      }
    }
    modes[hop] = best_counter;
  }
  return modes;
}

std::vector<NodeMetrics> MetricsReport::node_means() const {
  std::vector<NodeMetrics> out;
  if (repetitions.empty()) return out;
  const std::size_t n = repetitions.front().nodes.size();
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    NodeMetrics& nm = out[i];
    nm.node_id = repetitions.front().nodes[i].node_id;
    for (const auto& rep : repetitions) {
      nm.receiver_floods += rep.nodes[i].receiver_floods;
      nm.received_floods += rep.nodes[i].received_floods;
      nm.reliability += rep.nodes[i].reliability;
      nm.radio_on_ms += rep.nodes[i].radio_on_ms;
      nm.radio_on_idle_ms += rep.nodes[i].radio_on_idle_ms;
    }
    const auto reps = static_cast<double>(repetitions.size());
    nm.reliability /= reps;
    nm.radio_on_ms /= reps;
    nm.radio_on_idle_ms /= reps;
  }
  return out;
}

}  // namespace whisper
