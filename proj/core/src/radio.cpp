#include "whisper/radio.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace whisper {

const char* radio_state_name(RadioState s) {
  switch (s) {
    case RadioState::Off: return "Off";
    case RadioState::Listening: return "Listening";
    case RadioState::Receiving: return "Receiving";
    case RadioState::TurnaroundRxTx: return "TurnaroundRxTx";
    case RadioState::Transmitting: return "Transmitting";
    case RadioState::TurnaroundTxRx: return "TurnaroundTxRx";
  }
  return "?";
}

void RadioTimeline::append(RadioState state, ns_t start, ns_t end) {
  if (end < start) throw std::invalid_argument("timeline interval ends before it starts");
  if (end == start) return;
  if (!iv_.empty() && start < iv_.back().end) {
    throw std::invalid_argument("timeline intervals overlap");
  }
  // Merge back-to-back intervals in the same state.
  if (!iv_.empty() && iv_.back().state == state && iv_.back().end == start) {
    iv_.back().end = end;
    return;
  }
  iv_.push_back({state, start, end});
}

ns_t RadioTimeline::radio_on_ns() const {
  ns_t total = 0;
  for (const auto& iv : iv_) {
    if (iv.state != RadioState::Off) total += iv.end - iv.start;
  }
  return total;
}

std::optional<std::string> RadioTimeline::validate(const RadioTimingParams& timing) const {
  auto allowed = [](RadioState from, RadioState to) {
    switch (from) {
      case RadioState::Off:
        return to == RadioState::Listening || to == RadioState::Transmitting;
      case RadioState::Listening:
        return to != RadioState::TurnaroundTxRx;
      case RadioState::Receiving:
        return to == RadioState::TurnaroundRxTx || to == RadioState::Listening ||
               to == RadioState::Off;
      case RadioState::TurnaroundRxTx:
        return to == RadioState::Transmitting || to == RadioState::Off;
      case RadioState::Transmitting:
        return to == RadioState::TurnaroundTxRx || to == RadioState::Listening ||
               to == RadioState::Off;
      case RadioState::TurnaroundTxRx:
        return to == RadioState::Listening || to == RadioState::Off;
    }
    return false;
  };
  for (std::size_t i = 0; i < iv_.size(); ++i) {
    const auto& iv = iv_[i];
    if (iv.end <= iv.start) return "empty or inverted interval";
    if (i > 0) {
      if (iv.start < iv_[i - 1].end) return "overlapping intervals (half-duplex violation)";
      const bool contiguous = iv.start == iv_[i - 1].end;
      // A gap is implicit Off time; only contiguous transitions are checked.
      if (contiguous && !allowed(iv_[i - 1].state, iv.state)) {
        std::ostringstream os;
        os << "illegal transition " << radio_state_name(iv_[i - 1].state) << " -> "
           << radio_state_name(iv.state);
        return os.str();
      }
    }
    if (iv.state == RadioState::TurnaroundRxTx) {
      if (iv.end - iv.start != timing.t_turn) return "RX/TX turnaround not exactly t_turn";
      if (i + 1 >= iv_.size() || iv_[i + 1].state != RadioState::Transmitting ||
          iv_[i + 1].start != iv.end) {
        return "RX/TX turnaround not followed immediately by Transmitting";
      }
    }
  }
  return std::nullopt;
}

ns_t apply_clock_model(const ClockProfile& clock, ns_t nominal, Rng& rng) {
  const double scaled = static_cast<double>(nominal) * (1.0 + clock.ppm * 1e-6);
  ns_t out = static_cast<ns_t>(std::llround(scaled));
  if (clock.jitter_bound > 0) {
    out += rng.uniform_ns(-clock.jitter_bound, clock.jitter_bound);
  }
  return out;
}

ns_t rx_timestamp_of_sfd(ns_t tx_sfd_time, const RadioTimingParams& timing,
                         ns_t propagation_delay) {
  return tx_sfd_time + timing.t_d + propagation_delay;
}

Verdict deliverable_transmissions(const TxSegment& candidate,
                                  std::span<const ConnectedTx> connected,
                                  const RadioTimingParams& timing, double u) {
  if (connected.empty()) return Verdict::NotHeard;
  const ns_t cand_start = candidate.start;
  double miss = 1.0;
  for (const auto& tx : connected) {
    const ns_t start = tx.segment->start + tx.propagation_delay;
    const ns_t shift = start > cand_start ? start - cand_start : cand_start - start;
    if (shift > timing.ci_window || tx.segment->bytes != candidate.bytes) {
      return Verdict::DroppedCorrupt;
    }
    miss *= 1.0 - tx.prr;
  }
  return u < 1.0 - miss ? Verdict::Delivered : Verdict::DroppedChannel;
}

}  // namespace whisper
