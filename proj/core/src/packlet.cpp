#include "whisper/packlet.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

namespace whisper {

namespace {

constexpr std::uint16_t kPoly = 0x8408;  // x^16+x^12+x^5+1, reflected

std::array<std::uint16_t, 256> make_fcs_table() {
  std::array<std::uint16_t, 256> t{};
  for (int b = 0; b < 256; ++b) {
    std::uint16_t crc = static_cast<std::uint16_t>(b);
    for (int i = 0; i < 8; ++i) {
      crc = (crc & 1) ? static_cast<std::uint16_t>((crc >> 1) ^ kPoly)
                      : static_cast<std::uint16_t>(crc >> 1);
    }
    t[static_cast<std::size_t>(b)] = crc;
  }
  return t;
}

const std::array<std::uint16_t, 256> kFcsTable = make_fcs_table();

void check_config(const PackletConfig& cfg) {
  if (!cfg.valid()) throw std::invalid_argument("invalid packlet config");
}

// Reads 8 bits MSB-first starting at an arbitrary bit offset.
std::optional<std::uint8_t> byte_at_bit(std::span<const std::uint8_t> s, std::size_t bit) {
  if (bit + 8 > s.size() * 8) return std::nullopt;
  const std::size_t i = bit / 8;
  const unsigned sh = static_cast<unsigned>(bit % 8);
  if (sh == 0) return s[i];
  return static_cast<std::uint8_t>((s[i] << sh) | (s[i + 1] >> (8 - sh)));
}

}  // namespace

std::uint16_t compute_fcs(std::span<const std::uint8_t> payload) {
  if (payload.empty()) throw std::invalid_argument("compute_fcs: empty payload");
  std::uint16_t crc = 0;
  for (std::uint8_t b : payload) {
    crc = static_cast<std::uint16_t>((crc >> 8) ^ kFcsTable[(crc ^ b) & 0xFF]);
  }
  return crc;
}

std::vector<std::uint8_t> build_packlet(const PackletConfig& cfg, std::uint8_t counter,
                                        std::optional<std::uint8_t> length_override,
                                        std::uint8_t fill) {
  check_config(cfg);
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(cfg.packlet_size_bytes()));
  out.insert(out.end(), static_cast<std::size_t>(cfg.preamble_len), 0x00);
  out.push_back(cfg.sfd);
  out.push_back(length_override.value_or(static_cast<std::uint8_t>(cfg.payload_len + 2)));
  std::vector<std::uint8_t> payload;
  payload.push_back(counter);
  payload.insert(payload.end(), static_cast<std::size_t>(cfg.payload_len - 1), fill);
  out.insert(out.end(), payload.begin(), payload.end());
  const std::uint16_t fcs = compute_fcs(payload);
  out.push_back(static_cast<std::uint8_t>(fcs >> 8));
  out.push_back(static_cast<std::uint8_t>(fcs & 0xFF));
  return out;
}

std::vector<std::vector<std::uint8_t>> signaling_packet_segments(const PackletConfig& cfg,
                                                                 int n_tx, int start_counter,
                                                                 TxMode mode,
                                                                 std::uint8_t fill) {
  check_config(cfg);
  if (n_tx < 1) throw std::invalid_argument("n_tx must be >= 1");
  if (start_counter < 0 || start_counter + n_tx > 256) {
    throw std::out_of_range("packlet counter would overflow past 255");
  }
  std::vector<std::vector<std::uint8_t>> segs;
  segs.reserve(static_cast<std::size_t>(n_tx) + (mode == TxMode::Buffered ? 1u : 0u));
  for (int k = 0; k < n_tx; ++k) {
    std::optional<std::uint8_t> len_override;
    if (mode == TxMode::Buffered && k == 0) {
      // First length field announces the rest of the frame: own payload+FCS,
      // the n_tx-1 embedded packlets, and the trailing hardware footer.
      const int remaining =
          cfg.payload_len + 2 + (n_tx - 1) * cfg.packlet_size_bytes() + 2;
      if (remaining > 255) throw std::out_of_range("buffered frame length exceeds 255");
      len_override = static_cast<std::uint8_t>(remaining);
    }
    segs.push_back(
        build_packlet(cfg, static_cast<std::uint8_t>(start_counter + k), len_override, fill));
  }
  if (mode == TxMode::Buffered) {
    // Hardware-set trailing footer. Computed over the whole serialized stream
    // so far; it never verifies as a packlet FCS at any receiver.
    std::vector<std::uint8_t> all;
    for (const auto& s : segs) all.insert(all.end(), s.begin(), s.end());
    const std::uint16_t fcs = compute_fcs(all);
    segs.push_back({static_cast<std::uint8_t>(fcs >> 8), static_cast<std::uint8_t>(fcs & 0xFF)});
  }
  return segs;
}

std::vector<std::uint8_t> build_signaling_packet(const PackletConfig& cfg, int n_tx,
                                                 int start_counter, TxMode mode,
                                                 std::uint8_t fill) {
  std::vector<std::uint8_t> out;
  for (const auto& seg : signaling_packet_segments(cfg, n_tx, start_counter, mode, fill)) {
    out.insert(out.end(), seg.begin(), seg.end());
  }
  return out;
}

std::optional<ScanResult> scan_for_packlet(std::span<const std::uint8_t> stream,
                                           std::size_t start_bit_offset,
                                           const PackletConfig& cfg) {
  const std::size_t total_bits = stream.size() * 8;
  // Smallest decodable unit: 1 preamble byte, SFD, length, 1 payload, FCS.
  if (total_bits < 6 * 8) return std::nullopt;
  for (std::size_t b = start_bit_offset; b + 6 * 8 <= total_bits; ++b) {
    const auto pre = byte_at_bit(stream, b);
    if (!pre || *pre != 0x00) continue;
    const auto sfd = byte_at_bit(stream, b + 8);
    if (!sfd || *sfd != cfg.sfd) continue;
    const auto len = byte_at_bit(stream, b + 16);
    if (!len || *len < 3) continue;
    const std::size_t frame_bits = static_cast<std::size_t>(*len) * 8;
    if (b + 24 + frame_bits > total_bits) continue;
    std::vector<std::uint8_t> payload;
    payload.reserve(*len - 2u);
    bool ok = true;
    for (int i = 0; i < *len - 2; ++i) {
      const auto byte = byte_at_bit(stream, b + 24 + static_cast<std::size_t>(i) * 8);
      if (!byte) { ok = false; break; }
      payload.push_back(*byte);
    }
    if (!ok) continue;
    const auto hi = byte_at_bit(stream, b + 24 + (static_cast<std::size_t>(*len) - 2) * 8);
    const auto lo = byte_at_bit(stream, b + 24 + (static_cast<std::size_t>(*len) - 1) * 8);
    if (!hi || !lo) continue;
    const std::uint16_t got = static_cast<std::uint16_t>((*hi << 8) | *lo);
    if (got != compute_fcs(payload)) continue;  // FCS mismatch: dropped, keep scanning
    Packlet p;
    p.counter_c = payload[0];
    p.length_field = *len;
    p.fcs = got;
    p.payload = std::move(payload);
    return ScanResult{std::move(p), b + 24 + frame_bits};
  }
  return std::nullopt;
}

ns_t byte_duration(const PackletConfig& cfg) {
  const ns_t num = 8LL * 1000000000LL;
  if (num % cfg.bitrate != 0) throw std::invalid_argument("bitrate not ns-exact");
  return num / cfg.bitrate;
}

ns_t packlet_duration(const PackletConfig& cfg) {
  check_config(cfg);
  return static_cast<ns_t>(cfg.packlet_size_bytes()) * byte_duration(cfg);
}

std::string hex_dump(std::span<const std::uint8_t> stream, const PackletConfig& cfg) {
  std::string out;
  const std::size_t per_line = static_cast<std::size_t>(cfg.packlet_size_bytes());
  char buf[4];
  for (std::size_t i = 0; i < stream.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%02x", stream[i]);
    out += buf;
    if ((i + 1) % per_line == 0 || i + 1 == stream.size()) {
      out += '\n';
    } else {
      out += ' ';
    }
  }
  return out;
}

}  // namespace whisper
