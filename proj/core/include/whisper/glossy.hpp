#pragma once

#include "whisper/packlet.hpp"
#include "whisper/radio.hpp"
#include "whisper/units.hpp"

namespace whisper {

// Baseline gap-ful flooding: receive, turn around, retransmit with an
// incremented relay counter, until the node has transmitted n_tx times.
struct GlossyConfig {
  PackletConfig packet;       // 1-byte relay_counter payload
  int n_tx = 3;
  ns_t software_delay = us(23);
  ns_t t_guard = us(130);
  ns_t slot_timeout = ms(5);  // radio off if nothing was ever received
  ClockProfile clock = ClockProfile::software_compensated();

  static GlossyConfig standard();     // 4-byte preamble
  static GlossyConfig two_byte_preamble();
};

// Ideal-chain accounting for an interior relay that completes all n_tx
// transmissions: 2*n_tx packet activities with a turnaround between each
// (software delay and data delay excluded, as in the minimum-cost estimate).
ns_t glossy_ideal_chain_radio_on(const GlossyConfig& cfg, const RadioTimingParams& timing);

// Marginal radio-on cost of raising n_tx by one: one more reception, one more
// transmission, one RX/TX turnaround and the software delay.
ns_t glossy_per_ntx_increment(const GlossyConfig& cfg, const RadioTimingParams& timing);

}  // namespace whisper
