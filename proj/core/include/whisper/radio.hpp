#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "whisper/rng.hpp"
#include "whisper/units.hpp"

namespace whisper {

struct RadioTimingParams {
  ns_t t_turn = us(192);    // RX/TX turnaround
  ns_t t_d = us(3);         // data delay: TX SFD edge -> perceived RX SFD edge
  ns_t ci_window = 500;     // max displacement for constructive interference
  long bitrate = 250000;

  bool valid() const { return t_turn > 0 && t_d >= 0 && ci_window > 0 && bitrate > 0; }
};

enum class RadioState : std::uint8_t {
  Off,
  Listening,
  Receiving,
  TurnaroundRxTx,
  Transmitting,
  TurnaroundTxRx,
};

const char* radio_state_name(RadioState s);

struct TimelineInterval {
  RadioState state;
  ns_t start = 0;
  ns_t end = 0;
};

// Ordered, non-overlapping radio activity of one node within a slot. Off time
// is implicit (the gaps); radio_on_ns sums everything recorded.
class RadioTimeline {
 public:
  void append(RadioState state, ns_t start, ns_t end);
  ns_t radio_on_ns() const;
  const std::vector<TimelineInterval>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }

  // Checks ordering, non-overlap, half-duplex, turnaround exactness and the
  // allowed state transitions. Returns an error description or nullopt.
  std::optional<std::string> validate(const RadioTimingParams& timing) const;

 private:
  std::vector<TimelineInterval> iv_;
};

struct ClockProfile {
  double ppm = 0.0;        // deterministic rate offset
  ns_t jitter_bound = 0;   // uniform +-j per scheduling event
  ns_t sync_bound = 0;     // uniform +-s start-time error of an initiator

  static ClockProfile ideal() { return {0.0, 0, 0}; }
  // Bounded alignment error of a DCO-compensated node: the compensation is
  // network-wide, so every node -- initiators included -- stays on the shared
  // grid inside the 0.5 us constructive-interference window.
  static ClockProfile flock_compensated() { return {0.0, 250, 0}; }
  // Software-timed resend path without a shared grid: initiators are mutually
  // synchronized only to sub-microsecond precision and each relay schedules
  // off the reception it just made, so initiator sync error and per-hop error
  // both accumulate along a free-running relay chain.
  static ClockProfile software_compensated() { return {0.0, 300, 800}; }
};

// nominal * (1 + ppm * 1e-6) + uniform jitter in [-j, +j], rounded to ns.
ns_t apply_clock_model(const ClockProfile& clock, ns_t nominal, Rng& rng);

ns_t rx_timestamp_of_sfd(ns_t tx_sfd_time, const RadioTimingParams& timing,
                         ns_t propagation_delay = 0);

// One packlet-sized unit on the air.
struct TxSegment {
  int tx_node = -1;
  ns_t start = 0;
  ns_t end = 0;
  std::vector<std::uint8_t> bytes;
};

enum class Verdict : std::uint8_t {
  Delivered,        // receivable and the PRR draw succeeded
  DroppedChannel,   // receivable but lost on the link(s)
  DroppedCorrupt,   // content mismatch or misalignment beyond the CI window
  NotHeard,         // no connected transmitter / receiver not listening
};

struct ConnectedTx {
  const TxSegment* segment = nullptr;
  double prr = 1.0;
  ns_t propagation_delay = 0;
};

// Reception rule for synchronous transmissions, evaluated for one candidate
// packlet interval at one listening receiver:
//  (a) all connected transmitters overlapping the candidate carry identical
//      bytes and start within ci_window of each other -> receivable, delivered
//      with probability 1 - prod(1 - prr_i) (independent-success combining);
//  (b) any content difference or larger misalignment corrupts the packlet,
//      which then fails its FCS and is dropped;
//  (c) nothing connected -> nothing heard.
// `u` is the uniform draw deciding the combined-PRR outcome.
Verdict deliverable_transmissions(const TxSegment& candidate,
                                  std::span<const ConnectedTx> connected,
                                  const RadioTimingParams& timing, double u);

}  // namespace whisper
