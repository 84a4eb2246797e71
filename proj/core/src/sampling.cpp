#include "whisper/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace whisper {

ns_t compute_t_slot(int d_net, int n_tx, ns_t t_packlet) {
  if (d_net < 1 || n_tx < 1 || t_packlet <= 0) {
    throw std::invalid_argument("compute_t_slot: d_net and n_tx must be >= 1");
  }
  return (2LL * d_net + n_tx) * t_packlet;
}

ns_t compute_wait(ns_t t_packlet, ns_t t_turn, ns_t t_d) {
  const ns_t wait = t_packlet - t_turn - t_d;
  if (wait <= 0) throw std::invalid_argument("packlet too short for turnaround");
  return wait;
}

SamplingState update_sampling(SamplingState state, int c_new, int delta_c) {
  if (!state.initialized) {
    state.c_min = state.c_max = c_new;
    state.c_avg = c_new;
    state.n_obs = 1;
    state.initialized = true;
    return state;
  }
  const bool outlier = c_new >= state.c_avg + delta_c;
  state.c_min = std::min(state.c_min, c_new);
  state.n_obs += 1;
  state.c_avg += (c_new - state.c_avg) / static_cast<double>(state.n_obs);
  state.c_max = outlier ? c_new : static_cast<int>(std::ceil(state.c_avg));
  return state;
}

SamplingWindow sampling_window(const SamplingState& state, SamplingStrategy strategy,
                               int n_tx, ns_t t_packlet, ns_t t_guard, ns_t t_slot,
                               ns_t t_star_start) {
  SamplingWindow w;
  const bool direction_aware = strategy == SamplingStrategy::DirectionAware &&
                               state.initialized && !state.lazy_fallback;
  if (!direction_aware) {
    // Lazy, or direction-aware before the very first packlet (c_min treated
    // as 0, sampling spans the slot).
    w.t_start = t_star_start - t_guard;
    w.t_sampling = t_guard + t_slot;
  } else {
    w.t_start = t_star_start - t_guard +
                static_cast<ns_t>(std::max(0, state.c_min - 1)) * t_packlet;
    w.t_sampling = t_guard + static_cast<ns_t>(std::max(n_tx, state.c_max)) * t_packlet;
  }
  const ns_t slot_end = t_star_start + t_slot;
  if (w.t_start + w.t_sampling > slot_end) {
    w.t_sampling = std::max<ns_t>(0, slot_end - w.t_start);
  }
  return w;
}

}  // namespace whisper
