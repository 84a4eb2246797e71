#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "whisper/units.hpp"

namespace whisper {

// Transmit-buffer serialization mode.
//  - Looping: the radio ignores length fields and loops the buffer; every
//    packlet carries the short per-packlet length field.
//  - Buffered: the first length field announces the whole remaining frame and
//    the hardware appends a trailing 2-byte footer.
enum class TxMode { Looping, Buffered };

struct PackletConfig {
  int preamble_len = 2;       // bytes, 1..8 (standard-compliant radios use 4)
  std::uint8_t sfd = 0xA7;
  int payload_len = 1;        // bytes, >= 1; first payload byte is the counter c
  long bitrate = 250000;      // bits/s

  int packlet_size_bytes() const { return preamble_len + 1 + 1 + payload_len + 2; }
  bool valid() const {
    return preamble_len >= 1 && preamble_len <= 8 && payload_len >= 1 && bitrate > 0;
  }
};

struct Packlet {
  std::uint8_t counter_c = 0;
  std::uint8_t length_field = 0;
  std::uint16_t fcs = 0;
  std::vector<std::uint8_t> payload;  // counter byte followed by filler bytes
};

struct ScanResult {
  Packlet packlet;
  std::size_t next_bit_offset = 0;  // first bit after the decoded packlet
};

// 16-bit ITU-T CRC as used for the IEEE 802.15.4 FCS: generator
// x^16 + x^12 + x^5 + 1, initial value 0, LSB-first bit ordering.
// Table-driven; tests cross-check it against a bitwise long-division oracle.
std::uint16_t compute_fcs(std::span<const std::uint8_t> payload);

// Serialize one packlet. The length field defaults to payload_len + 2 and can
// be overridden (used for the first packlet in buffered mode). Payload filler
// bytes beyond the counter are `fill`.
std::vector<std::uint8_t> build_packlet(const PackletConfig& cfg, std::uint8_t counter,
                                        std::optional<std::uint8_t> length_override = {},
                                        std::uint8_t fill = 0x00);

// The full signaling packet: n_tx packlets back-to-back with counters
// start_counter .. start_counter + n_tx - 1. Buffered mode sets the first
// length field to the remaining frame length and appends the 2-byte
// hardware footer placeholder.
std::vector<std::uint8_t> build_signaling_packet(const PackletConfig& cfg, int n_tx,
                                                 int start_counter, TxMode mode,
                                                 std::uint8_t fill = 0x00);

// Same content split per on-air unit: n_tx packlet byte blocks, plus the
// trailing footer block in buffered mode. Concatenation equals
// build_signaling_packet.
std::vector<std::vector<std::uint8_t>> signaling_packet_segments(const PackletConfig& cfg,
                                                                 int n_tx, int start_counter,
                                                                 TxMode mode,
                                                                 std::uint8_t fill = 0x00);

// Bit-granular receiver lock-on: find the first decodable packlet whose
// preamble (>= 1 preamble byte) + SFD begins at or after start_bit_offset and
// whose FCS verifies. Candidates failing the FCS are skipped, which models a
// dropped packlet; a scan starting mid-packlet locks onto the next boundary.
std::optional<ScanResult> scan_for_packlet(std::span<const std::uint8_t> stream,
                                           std::size_t start_bit_offset,
                                           const PackletConfig& cfg);

// On-air duration of one packlet, exact in integer nanoseconds.
ns_t packlet_duration(const PackletConfig& cfg);

ns_t byte_duration(const PackletConfig& cfg);

// Golden-vector helper: lowercase hex, space-separated bytes, one packlet per
// line (trailing bytes that do not fill a packlet go on a final line).
std::string hex_dump(std::span<const std::uint8_t> stream, const PackletConfig& cfg);

}  // namespace whisper
