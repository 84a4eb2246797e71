#pragma once

#include "whisper/packlet.hpp"
#include "whisper/radio.hpp"
#include "whisper/sampling.hpp"
#include "whisper/units.hpp"

namespace whisper {

enum class WhisperVariant {
  Standard,   // TXFIFO looping, 2-byte preamble by default
  Compliant,  // buffered mode, 4-byte preamble, simultaneous stop
};

struct WhisperConfig {
  PackletConfig packlet;
  int n_tx = 3;
  ns_t t_guard = us(130);
  ns_t t_slot = ms(5);
  ns_t slot_timeout = ms(5);  // lazy-sampling radio-off timeout
  SamplingStrategy sampling = SamplingStrategy::DirectionAware;
  int delta_c = 2;
  WhisperVariant variant = WhisperVariant::Standard;
  bool simultaneous_stop = false;  // forced on for the compliant variant
  ClockProfile clock = ClockProfile::flock_compensated();

  static WhisperConfig standard();
  static WhisperConfig lazy();
  static WhisperConfig compliant();  // 4-byte preamble, N_tx = 14, buffered

  TxMode tx_mode() const {
    return variant == WhisperVariant::Compliant ? TxMode::Buffered : TxMode::Looping;
  }
  bool stops_simultaneously() const {
    return simultaneous_stop || variant == WhisperVariant::Compliant;
  }
};

// A node that received counter c relays from c + 2: the next packlet passes
// while its radio turns around.
constexpr int relay_start_counter(int c_received) { return c_received + 2; }

// Inversion of the ideal-progression rule c = 2 (h - 1): hop distance learned
// from the smallest counter ever received.
constexpr int hop_from_c_min(int c_min) { return c_min / 2 + 1; }

// Adding one packlet to the train costs exactly one packlet of radio-on time.
ns_t whisper_per_ntx_increment(const PackletConfig& cfg);

}  // namespace whisper
