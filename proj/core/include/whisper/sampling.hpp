#pragma once

#include "whisper/units.hpp"

namespace whisper {

enum class SamplingStrategy { Lazy, DirectionAware };

// Per-node learned counter bounds for direction-aware sampling.
struct SamplingState {
  int c_min = 0;
  int c_max = 0;
  double c_avg = 0.0;      // exact running mean of all received counters
  long n_obs = 0;
  bool initialized = false;
  bool lazy_fallback = false;  // set when reverse initialization heard nothing

  void reset() { *this = SamplingState{}; }  // topology epoch reset
};

// Slot length needed for a flood to cross the network: the flood advances two
// packlets per hop and the last hop still transmits its full train.
ns_t compute_t_slot(int d_net, int n_tx, ns_t t_packlet);

// Wait after the RX/TX turnaround that puts the relay's first SFD back on the
// packlet cadence, compensating the data delay. Throws on configurations where
// the packlet is too short for the turnaround.
ns_t compute_wait(ns_t t_packlet, ns_t t_turn, ns_t t_d);

// Update the learned bounds with a freshly FCS-verified counter. First
// observation initializes c_min = c_max = c_avg = c_new; afterwards c_min
// tracks the minimum ever seen and c_max follows ceil(c_avg) unless the
// outlier rule (c_new >= c_avg + delta_c) forces c_max = c_new.
SamplingState update_sampling(SamplingState state, int c_new, int delta_c);

struct SamplingWindow {
  ns_t t_start = 0;      // absolute listen-on time
  ns_t t_sampling = 0;   // listen duration
};

// Where and how long to listen around the expected flood, relative to the
// time t_star_start at which the sender is expected to start transmitting.
// Lazy listens for the whole slot; direction-aware shifts the window to the
// first expected counter and sizes it from c_max. The window never extends
// past the slot end.
SamplingWindow sampling_window(const SamplingState& state, SamplingStrategy strategy,
                               int n_tx, ns_t t_packlet, ns_t t_guard, ns_t t_slot,
                               ns_t t_star_start);

}  // namespace whisper
