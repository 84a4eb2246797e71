#include "whisper/sim.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace whisper {

void EventQueue::schedule(ns_t time, EventKind kind, int node, std::function<void()> fn) {
  if (time < now_) throw std::logic_error("event scheduled in the past");
  heap_.push(Event{time, next_seq_++, kind, node, std::move(fn)});
}

Event EventQueue::pop() {
  Event e = heap_.top();
  heap_.pop();
  if (e.time < now_) throw std::logic_error("event queue went backwards");
  now_ = e.time;
  return e;
}

std::int64_t SlotTrace::opportunities() const {
  std::int64_t total = 0;
  for (const auto& s : stats) {
    total += s.delivered + s.dropped_channel + s.dropped_corrupt + s.not_heard;
  }
  return total;
}

namespace {

struct NodeRt {
  enum class Phase { Idle, Listening, Committed, Done };
  Phase phase = Phase::Idle;
  ns_t listen_on = 0;
  ns_t deadline = 0;
  bool heard_any = false;
  bool window_extended = false;
  ns_t last_eval_start = std::numeric_limits<ns_t>::min();
  Verdict last_outcome = Verdict::NotHeard;
  int tx_count = 0;
  RadioTimeline timeline;
  Rng rng;
};

// Shared per-slot machinery: event queue, the on-air segment record and the
// reception evaluation. Protocol behavior is injected via callbacks.
class SlotSim {
 public:
  SlotSim(const Topology& topo, const RadioTimingParams& timing, const PackletConfig& pkcfg,
          const SlotSeed& seed)
      : topo_(topo), timing_(timing), pkcfg_(pkcfg) {
    const int n = topo.node_count();
    rt_.resize(static_cast<std::size_t>(n));
    stats_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      rt_[static_cast<std::size_t>(i)].rng = Rng::from_key(
          seed.seed, seed.repetition, seed.flood, static_cast<std::uint64_t>(i) + 1);
    }
    in_link_.resize(static_cast<std::size_t>(n));
    for (const auto& l : topo.links()) {
      in_link_[static_cast<std::size_t>(topo.index_of(l.dst))].emplace(topo.index_of(l.src),
                                                                       &l);
    }
    group_tolerance_ = packlet_duration(pkcfg) / 2;
    preamble_slack_ = static_cast<ns_t>(pkcfg.preamble_len - 1) * byte_duration(pkcfg);
    sfd_offset_ = static_cast<ns_t>(pkcfg.preamble_len + 1) * byte_duration(pkcfg);
  }

  std::function<void(int node_idx, const Packlet&, const TxSegment& candidate)> on_delivered;
  std::function<void(int node_idx)> on_deadline;
  std::function<void(int node_idx, ns_t tx_end)> on_tx_done;

  NodeRt& rt(int idx) { return rt_[static_cast<std::size_t>(idx)]; }
  NodeSlotStats& stats(int idx) { return stats_[static_cast<std::size_t>(idx)]; }
  EventQueue& queue() { return q_; }

  void start_listening(int idx, ns_t on, ns_t deadline) {
    NodeRt& r = rt(idx);
    if (on >= deadline) {
      r.phase = NodeRt::Phase::Done;
      return;
    }
    r.phase = NodeRt::Phase::Listening;
    r.listen_on = on;
    r.deadline = deadline;
    q_.schedule(deadline, EventKind::SamplingWindow, idx, [this, idx] { deadline_due(idx); });
  }

  void extend_listening(int idx, ns_t new_deadline) {
    NodeRt& r = rt(idx);
    r.deadline = new_deadline;
    q_.schedule(new_deadline, EventKind::SamplingWindow, idx,
                [this, idx] { deadline_due(idx); });
  }

  void finish_listening(int idx, ns_t t) {
    NodeRt& r = rt(idx);
    if (t > r.listen_on) r.timeline.append(RadioState::Listening, r.listen_on, t);
    r.phase = NodeRt::Phase::Done;
  }

  // Registers a transmission starting at `start`. Segment boundaries follow
  // the byte durations of `segments`; everything from `truncate_at` onwards
  // (simultaneous stop) is cut, mid-segment at a byte boundary.
  void register_tx(int idx, ns_t start, const std::vector<std::vector<std::uint8_t>>& segments,
                   std::optional<ns_t> truncate_at) {
    const ns_t byte_ns = byte_duration(pkcfg_);
    ns_t t = start;
    ns_t tx_end = start;
    for (const auto& seg_bytes : segments) {
      std::vector<std::uint8_t> bytes = seg_bytes;
      ns_t end = t + static_cast<ns_t>(bytes.size()) * byte_ns;
      if (truncate_at) {
        if (t >= *truncate_at) break;
        if (end > *truncate_at) {
          const auto keep = static_cast<std::size_t>((*truncate_at - t) / byte_ns);
          if (keep == 0) break;
          bytes.resize(keep);
          end = t + static_cast<ns_t>(keep) * byte_ns;
        }
      }
      air_.push_back(TxSegment{idx, t, end, std::move(bytes)});
      const TxSegment* seg = &air_.back();
      q_.schedule(end, EventKind::PackletBoundary, idx, [this, seg] { eval_segment(seg); });
      stats(idx).tx_segments += 1;
      tx_end = end;
      t = end;
    }
    if (tx_end > start) {
      rt(idx).timeline.append(RadioState::Transmitting, start, tx_end);
      q_.schedule(tx_end, EventKind::TxStop, idx, [this, idx, tx_end] {
        if (on_tx_done) on_tx_done(idx, tx_end);
      });
    } else if (on_tx_done) {
      on_tx_done(idx, start);
    }
  }

  void run() {
    while (!q_.empty()) {
      Event e = q_.pop();
      e.fn();
    }
    for (std::size_t i = 0; i < rt_.size(); ++i) {
      if (rt_[i].phase == NodeRt::Phase::Listening) {
        throw std::logic_error("event queue starved with node still listening");
      }
    }
  }

  SlotTrace take_trace(ns_t t_star, ns_t slot_end) {
    SlotTrace trace;
    trace.t_star = t_star;
    trace.slot_end = slot_end;
    trace.timelines.reserve(rt_.size());
    for (auto& r : rt_) trace.timelines.push_back(std::move(r.timeline));
    trace.stats = std::move(stats_);
    return trace;
  }

 private:
  // The scheduled end of the sampling window. If the node locked onto a
  // packlet still on the air, hold the radio on until that packlet ends.
  void deadline_due(int idx) {
    NodeRt& r = rt(idx);
    if (r.phase != NodeRt::Phase::Listening || q_.now() < r.deadline) return;
    ns_t hold = r.deadline;
    for (const TxSegment& s : air_) {
      const auto it = in_link_[static_cast<std::size_t>(idx)].find(s.tx_node);
      if (it == in_link_[static_cast<std::size_t>(idx)].end()) continue;
      const ns_t eff_start = s.start + it->second->propagation_delay;
      const ns_t eff_end = s.end + it->second->propagation_delay;
      if (r.listen_on <= eff_start + preamble_slack_ &&
          eff_start + sfd_offset_ <= r.deadline && eff_end > hold) {
        hold = eff_end;
      }
    }
    if (hold > r.deadline) {
      extend_listening(idx, hold);
      return;
    }
    on_deadline(idx);
  }

  void count(NodeSlotStats& s, Verdict v) {
    switch (v) {
      case Verdict::Delivered: s.delivered += 1; break;
      case Verdict::DroppedChannel: s.dropped_channel += 1; break;
      case Verdict::DroppedCorrupt: s.dropped_corrupt += 1; break;
      case Verdict::NotHeard: s.not_heard += 1; break;
    }
  }

  void eval_segment(const TxSegment* seg) {
    const auto& out = topo_.out_links()[static_cast<std::size_t>(seg->tx_node)];
    for (const Link* l : out) {
      const int ridx = topo_.index_of(l->dst);
      NodeRt& r = rt(ridx);
      NodeSlotStats& st = stats(ridx);
      const ns_t eff_start = seg->start + l->propagation_delay;
      const ns_t eff_end = seg->end + l->propagation_delay;

      // Co-transmitted copies of an already-evaluated packlet share its
      // outcome; there is one verdict per (receiver, packlet interval).
      if (std::llabs(eff_start - r.last_eval_start) <= group_tolerance_) {
        count(st, r.last_outcome);
        continue;
      }
      // Lock-on needs the tail of the preamble and the SFD inside the window;
      // a reception in progress then runs to completion (deadline_due holds
      // the radio on until the locked packlet ends).
      const bool listening = r.phase == NodeRt::Phase::Listening &&
                             r.listen_on <= eff_start + preamble_slack_ &&
                             eff_start + sfd_offset_ <= r.deadline;
      if (!listening) {
        count(st, Verdict::NotHeard);
        continue;
      }

      TxSegment cand = *seg;
      cand.start = eff_start;
      cand.end = eff_end;
      std::vector<ConnectedTx> connected;
      for (const TxSegment& s : air_) {
        const auto it = in_link_[static_cast<std::size_t>(ridx)].find(s.tx_node);
        if (it == in_link_[static_cast<std::size_t>(ridx)].end()) continue;
        const Link* sl = it->second;
        const ns_t ss = s.start + sl->propagation_delay;
        const ns_t se = s.end + sl->propagation_delay;
        // Edge slop no longer than the CI window (jittered neighbors of an
        // adjacent grid position) is sub-symbol and cannot corrupt anything.
        const ns_t overlap = std::min(se, cand.end) - std::max(ss, cand.start);
        if (overlap > timing_.ci_window) {
          connected.push_back(ConnectedTx{&s, sl->prr, sl->propagation_delay});
        }
      }
      Verdict v = deliverable_transmissions(cand, connected, timing_, r.rng.next_double());
      Packlet pk;
      if (v == Verdict::Delivered) {
        auto res = scan_for_packlet(seg->bytes, 0, pkcfg_);
        if (res) {
          pk = std::move(res->packlet);
        } else {
          v = Verdict::DroppedCorrupt;  // undecodable, e.g. buffered length field
        }
      }
      r.last_eval_start = eff_start;
      r.last_outcome = v;
      r.heard_any = true;
      count(st, v);
      if (v == Verdict::Delivered) {
        st.received = true;
        if (st.first_counter < 0) st.first_counter = pk.counter_c;
        on_delivered(ridx, pk, cand);
      }
    }
  }

  const Topology& topo_;
  const RadioTimingParams& timing_;
  PackletConfig pkcfg_;
  EventQueue q_;
  std::deque<TxSegment> air_;
  std::vector<NodeRt> rt_;
  std::vector<NodeSlotStats> stats_;
  std::vector<std::unordered_map<int, const Link*>> in_link_;
  ns_t group_tolerance_ = 0;
  ns_t preamble_slack_ = 0;
  ns_t sfd_offset_ = 0;
};

std::vector<bool> sender_mask(const Topology& topo, const std::vector<int>& sender_ids) {
  std::vector<bool> mask(static_cast<std::size_t>(topo.node_count()), false);
  for (int id : sender_ids) {
    const int idx = topo.index_of(id);
    if (idx < 0) throw std::invalid_argument("sender id not in topology");
    mask[static_cast<std::size_t>(idx)] = true;
  }
  return mask;
}

}  // namespace

SlotTrace run_whisper_slot(const Topology& topo, const WhisperConfig& cfg,
                           const RadioTimingParams& timing,
                           const std::vector<int>& sender_ids,
                           std::vector<SamplingState>& sampling, const SlotSeed& seed) {
  if (sampling.size() != static_cast<std::size_t>(topo.node_count())) {
    throw std::invalid_argument("sampling state size mismatch");
  }
  const ns_t t_pkt = packlet_duration(cfg.packlet);
  compute_wait(t_pkt, timing.t_turn, timing.t_d);  // validates the cadence is feasible

  const ns_t t_star = cfg.t_guard;
  const ns_t slot_end = t_star + cfg.t_slot;
  const std::optional<ns_t> stop_time =
      cfg.stops_simultaneously() ? std::optional<ns_t>(slot_end) : std::nullopt;

  SlotSim sim(topo, timing, cfg.packlet, seed);
  const auto senders = sender_mask(topo, sender_ids);

  sim.on_delivered = [&](int idx, const Packlet& pk, const TxSegment& cand) {
    NodeRt& r = sim.rt(idx);
    sampling[static_cast<std::size_t>(idx)] =
        update_sampling(sampling[static_cast<std::size_t>(idx)], pk.counter_c, cfg.delta_c);
    const ns_t rx_start = std::max(cand.start, r.listen_on);
    if (rx_start > r.listen_on) {
      r.timeline.append(RadioState::Listening, r.listen_on, rx_start);
    }
    r.timeline.append(RadioState::Receiving, rx_start, cand.end);

    if (r.tx_count > 0) {
      // Already relayed: this is the tail of the flood passing by. Keep
      // sampling it and stay on until a packlet interval goes silent.
      r.listen_on = cand.end;
      const ns_t ext = std::min(slot_end, cand.end + t_pkt + t_pkt / 2);
      if (ext > r.deadline) sim.extend_listening(idx, ext);
      return;
    }

    const int start_c = relay_start_counter(pk.counter_c);
    if (start_c + cfg.n_tx - 1 > 255) {
      r.phase = NodeRt::Phase::Done;  // counter space exhausted, no relay
      return;
    }
    const ns_t tx_start =
        t_star + apply_clock_model(cfg.clock, static_cast<ns_t>(start_c) * t_pkt, r.rng);
    if ((stop_time && tx_start >= *stop_time) || tx_start - timing.t_turn < cand.end) {
      r.phase = NodeRt::Phase::Done;
      return;
    }
    if (tx_start - timing.t_turn > cand.end) {
      r.timeline.append(RadioState::Listening, cand.end, tx_start - timing.t_turn);
    }
    r.timeline.append(RadioState::TurnaroundRxTx, tx_start - timing.t_turn, tx_start);
    r.phase = NodeRt::Phase::Committed;
    sim.register_tx(idx, tx_start,
                    signaling_packet_segments(cfg.packlet, cfg.n_tx, start_c, cfg.tx_mode()),
                    stop_time);
  };

  sim.on_deadline = [&](int idx) {
    NodeRt& r = sim.rt(idx);
    if (r.tx_count > 0) {
      sim.finish_listening(idx, r.deadline);
      return;
    }
    if (r.heard_any && cfg.sampling == SamplingStrategy::DirectionAware &&
        !r.window_extended) {
      // Something was on the air: hold on until the expected end of packlet
      // c_max + N_tx + 1 before giving up on the slot.
      const SamplingState& st = sampling[static_cast<std::size_t>(idx)];
      const ns_t ext = std::min(
          slot_end, t_star + static_cast<ns_t>(st.c_max + cfg.n_tx + 2) * t_pkt);
      r.window_extended = true;
      if (ext > r.deadline) {
        sim.extend_listening(idx, ext);
        return;
      }
    }
    sim.finish_listening(idx, r.deadline);
  };

  sim.on_tx_done = [&](int idx, ns_t tx_end) {
    NodeRt& r = sim.rt(idx);
    r.tx_count += 1;
    if (senders[static_cast<std::size_t>(idx)] ||
        cfg.sampling != SamplingStrategy::DirectionAware) {
      r.phase = NodeRt::Phase::Done;
      return;
    }
    // Direction-aware forwarders turn back to receive and keep observing the
    // tail of the flood; the counters heard there feed the c_max estimate.
    const ns_t listen_on = tx_end + timing.t_turn;
    const ns_t until = std::min(slot_end, listen_on + t_pkt + t_pkt / 2);
    if (listen_on >= until) {
      r.phase = NodeRt::Phase::Done;
      return;
    }
    r.timeline.append(RadioState::TurnaroundTxRx, tx_end, listen_on);
    sim.start_listening(idx, listen_on, until);
  };

  for (int idx = 0; idx < topo.node_count(); ++idx) {
    NodeRt& r = sim.rt(idx);
    if (senders[static_cast<std::size_t>(idx)]) {
      r.phase = NodeRt::Phase::Committed;
      const ns_t sync = cfg.clock.sync_bound > 0
                            ? r.rng.uniform_ns(-cfg.clock.sync_bound, cfg.clock.sync_bound)
                            : 0;
      const ns_t tx_start = t_star + sync + apply_clock_model(cfg.clock, 0, r.rng);
      sim.register_tx(idx, tx_start,
                      signaling_packet_segments(cfg.packlet, cfg.n_tx, 0, cfg.tx_mode()),
                      stop_time);
    } else {
      const auto w = sampling_window(sampling[static_cast<std::size_t>(idx)], cfg.sampling,
                                     cfg.n_tx, t_pkt, cfg.t_guard, cfg.t_slot, t_star);
      const ns_t duration = std::min(w.t_sampling, cfg.slot_timeout);
      sim.start_listening(idx, w.t_start, w.t_start + duration);
    }
  }

  sim.run();
  return sim.take_trace(t_star, slot_end);
}

SlotTrace run_glossy_slot(const Topology& topo, const GlossyConfig& cfg,
                          const RadioTimingParams& timing,
                          const std::vector<int>& sender_ids, const SlotSeed& seed) {
  const ns_t t_pkt = packlet_duration(cfg.packet);
  const ns_t t_star = cfg.t_guard;
  const ns_t wake = t_star - cfg.t_guard;
  const ns_t deadline = wake + cfg.slot_timeout;

  SlotSim sim(topo, timing, cfg.packet, seed);
  const auto senders = sender_mask(topo, sender_ids);

  sim.on_delivered = [&](int idx, const Packlet& pk, const TxSegment& cand) {
    NodeRt& r = sim.rt(idx);
    if (pk.counter_c >= 255) return;  // relay counter saturated, keep listening
    const ns_t rx_start = std::max(cand.start, r.listen_on);
    if (rx_start > r.listen_on) {
      r.timeline.append(RadioState::Listening, r.listen_on, rx_start);
    }
    r.timeline.append(RadioState::Receiving, rx_start, cand.end);
    // Free-running resend: perceived end of reception plus software delay and
    // turnaround; timing errors accumulate hop by hop.
    const ns_t tx_start =
        cand.end +
        apply_clock_model(cfg.clock, timing.t_d + cfg.software_delay + timing.t_turn, r.rng);
    if (tx_start - timing.t_turn > cand.end) {
      r.timeline.append(RadioState::Listening, cand.end, tx_start - timing.t_turn);
    }
    r.timeline.append(RadioState::TurnaroundRxTx, tx_start - timing.t_turn, tx_start);
    r.phase = NodeRt::Phase::Committed;
    sim.register_tx(idx, tx_start,
                    {build_packlet(cfg.packet, static_cast<std::uint8_t>(pk.counter_c + 1))},
                    std::nullopt);
  };

  sim.on_tx_done = [&](int idx, ns_t tx_end) {
    NodeRt& r = sim.rt(idx);
    r.tx_count += 1;
    if (r.tx_count >= cfg.n_tx || tx_end + timing.t_turn >= deadline) {
      r.phase = NodeRt::Phase::Done;
      return;
    }
    r.timeline.append(RadioState::TurnaroundTxRx, tx_end, tx_end + timing.t_turn);
    sim.start_listening(idx, tx_end + timing.t_turn, deadline);
  };

  sim.on_deadline = [&](int idx) { sim.finish_listening(idx, sim.rt(idx).deadline); };

  for (int idx = 0; idx < topo.node_count(); ++idx) {
    NodeRt& r = sim.rt(idx);
    if (senders[static_cast<std::size_t>(idx)]) {
      r.phase = NodeRt::Phase::Committed;
      const ns_t sync = cfg.clock.sync_bound > 0
                            ? r.rng.uniform_ns(-cfg.clock.sync_bound, cfg.clock.sync_bound)
                            : 0;
      const ns_t tx_start = t_star + sync + apply_clock_model(cfg.clock, 0, r.rng);
      sim.register_tx(idx, tx_start, {build_packlet(cfg.packet, 0)}, std::nullopt);
    } else {
      sim.start_listening(idx, wake, deadline);
    }
  }

  sim.run();
  return sim.take_trace(t_star, t_star + cfg.slot_timeout);
}

void reverse_initialization(const Topology& topo, const WhisperConfig& cfg,
                            const RadioTimingParams& timing, int sink_id,
                            std::vector<SamplingState>& sampling, std::uint64_t seed,
                            int n_slots) {
  const int d_net = topo.compute_diameter(sink_id);
  std::vector<SamplingState> init_state(static_cast<std::size_t>(topo.node_count()));
  WhisperConfig init_cfg = cfg;
  init_cfg.sampling = SamplingStrategy::Lazy;  // nothing learned yet
  for (int s = 0; s < n_slots; ++s) {
    run_whisper_slot(topo, init_cfg, timing, {sink_id},  init_state,
                     SlotSeed{seed, 0xF00D, static_cast<std::uint64_t>(s)});
  }
  for (int idx = 0; idx < topo.node_count(); ++idx) {
    SamplingState& out = sampling[static_cast<std::size_t>(idx)];
    out.reset();
    if (idx == topo.index_of(sink_id)) continue;
    const SamplingState& learned = init_state[static_cast<std::size_t>(idx)];
    if (!learned.initialized) {
      out.lazy_fallback = true;  // heard nothing in any init slot
      continue;
    }
    const int hop_to_sink = hop_from_c_min(learned.c_min);
    const int position = std::max(0, d_net - hop_to_sink);
    // Reversed wake-up schedule: behave like a node `position` hops from the
    // (unknown) collection sender.
    out.initialized = true;
    out.c_min = std::max(0, 2 * (position - 1));
    out.c_max = std::max(out.c_min, 2 * position);
    out.c_avg = out.c_max;
    out.n_obs = 1;
  }
  // The sink itself listens for the whole collection flood window.
  const int sink_idx = topo.index_of(sink_id);
  SamplingState& sink_state = sampling[static_cast<std::size_t>(sink_idx)];
  sink_state.reset();
  sink_state.initialized = true;
  sink_state.c_min = 0;
  sink_state.c_max = 2 * d_net;
  sink_state.c_avg = sink_state.c_max;
  sink_state.n_obs = 1;
}

}  // namespace whisper
