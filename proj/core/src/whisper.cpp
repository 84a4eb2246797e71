#include "whisper/whisper.hpp"

namespace whisper {

WhisperConfig WhisperConfig::standard() {
  WhisperConfig cfg;
  cfg.packlet.preamble_len = 2;
  cfg.n_tx = 3;
  cfg.sampling = SamplingStrategy::DirectionAware;
  cfg.variant = WhisperVariant::Standard;
  return cfg;
}

WhisperConfig WhisperConfig::lazy() {
  WhisperConfig cfg = standard();
  cfg.sampling = SamplingStrategy::Lazy;
  return cfg;
}

WhisperConfig WhisperConfig::compliant() {
  WhisperConfig cfg;
  cfg.packlet.preamble_len = 4;
  cfg.n_tx = 14;
  cfg.sampling = SamplingStrategy::Lazy;
  cfg.variant = WhisperVariant::Compliant;
  cfg.simultaneous_stop = true;
  return cfg;
}

ns_t whisper_per_ntx_increment(const PackletConfig& cfg) { return packlet_duration(cfg); }

}  // namespace whisper
