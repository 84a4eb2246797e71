#include "whisper/glossy.hpp"

namespace whisper {

GlossyConfig GlossyConfig::standard() {
  GlossyConfig cfg;
  cfg.packet.preamble_len = 4;
  return cfg;
}

GlossyConfig GlossyConfig::two_byte_preamble() {
  GlossyConfig cfg;
  cfg.packet.preamble_len = 2;
  return cfg;
}

ns_t glossy_ideal_chain_radio_on(const GlossyConfig& cfg, const RadioTimingParams& timing) {
  const ns_t t_pkt = packlet_duration(cfg.packet);
  const auto n = static_cast<ns_t>(cfg.n_tx);
  return 2 * n * t_pkt + (2 * n - 1) * timing.t_turn;
}

ns_t glossy_per_ntx_increment(const GlossyConfig& cfg, const RadioTimingParams& timing) {
  return 2 * packlet_duration(cfg.packet) + timing.t_turn + cfg.software_delay;
}

}  // namespace whisper
