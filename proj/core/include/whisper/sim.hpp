#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "whisper/glossy.hpp"
#include "whisper/radio.hpp"
#include "whisper/sampling.hpp"
#include "whisper/topology.hpp"
#include "whisper/units.hpp"
#include "whisper/whisper.hpp"

namespace whisper {

enum class EventKind : std::uint8_t {
  RadioStateChange,
  PackletBoundary,
  SlotBoundary,
  SamplingWindow,
  TxStop,
};

struct Event {
  ns_t time = 0;
  std::uint64_t sequence = 0;  // monotonic tiebreaker
  EventKind kind = EventKind::RadioStateChange;
  int node = -1;
  std::function<void()> fn;
};

// Min-heap ordered by (time, sequence); processing never goes backwards.
class EventQueue {
 public:
  void schedule(ns_t time, EventKind kind, int node, std::function<void()> fn);
  bool empty() const { return heap_.empty(); }
  Event pop();
  ns_t now() const { return now_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.sequence > b.sequence;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
  ns_t now_ = 0;
};

struct NodeSlotStats {
  bool received = false;       // at least one decodable packlet delivered
  int first_counter = -1;
  std::int64_t delivered = 0;
  std::int64_t dropped_channel = 0;
  std::int64_t dropped_corrupt = 0;
  std::int64_t not_heard = 0;
  std::int64_t tx_segments = 0;
};

struct SlotTrace {
  std::vector<RadioTimeline> timelines;  // by node index
  std::vector<NodeSlotStats> stats;
  ns_t t_star = 0;    // nominal flood start within the slot
  ns_t slot_end = 0;  // t_star + t_slot
  // In-range reception opportunities, for the conservation check:
  // delivered + dropped + not_heard summed over nodes.
  std::int64_t opportunities() const;
};

struct SlotSeed {
  std::uint64_t seed = 0;
  std::uint64_t repetition = 0;
  std::uint64_t flood = 0;
};

// One Whisper slot. `sampling` is indexed by node index and is read for the
// listening windows and updated with every verified reception; senders listed
// in `sender_ids` transmit at t_star instead of sampling. An empty sender set
// models a no-signaling slot.
SlotTrace run_whisper_slot(const Topology& topo, const WhisperConfig& cfg,
                           const RadioTimingParams& timing,
                           const std::vector<int>& sender_ids,
                           std::vector<SamplingState>& sampling, const SlotSeed& seed);

// One Glossy slot: every node wakes at t_star - t_guard and free-runs.
SlotTrace run_glossy_slot(const Topology& topo, const GlossyConfig& cfg,
                          const RadioTimingParams& timing,
                          const std::vector<int>& sender_ids, const SlotSeed& seed);

// Reverse initialization for collection: the sink floods `n_slots` times and
// every node derives its hop distance from the smallest counter it heard,
// then seeds its sampling state for the reversed traffic direction. Nodes
// that heard nothing fall back to lazy sampling.
void reverse_initialization(const Topology& topo, const WhisperConfig& cfg,
                            const RadioTimingParams& timing, int sink_id,
                            std::vector<SamplingState>& sampling, std::uint64_t seed,
                            int n_slots = 5);

}  // namespace whisper
