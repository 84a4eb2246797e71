#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "whisper/packlet.hpp"
#include "whisper/rng.hpp"

using namespace whisper;

namespace {

// Independent long-division oracle for the 16-bit FCS: generator
// x^16 + x^12 + x^5 + 1, LSB-first, initial value 0.
std::uint16_t fcs_oracle(std::span<const std::uint8_t> data) {
  std::uint16_t crc = 0;
  for (std::uint8_t byte : data) {
    crc ^= byte;
    for (int i = 0; i < 8; ++i) {
      crc = (crc & 1) ? static_cast<std::uint16_t>((crc >> 1) ^ 0x8408)
                      : static_cast<std::uint16_t>(crc >> 1);
    }
  }
  return crc;
}

}  // namespace

TEST_CASE("fcs table implementation matches the bitwise oracle") {
  Rng rng = Rng::from_key(42);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t len = 1 + rng.next_u64() % 16;
    std::vector<std::uint8_t> payload(len);
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng.next_u64());
    CHECK(compute_fcs(payload) == fcs_oracle(payload));
  }
}

TEST_CASE("packlet layout golden vector") {
  PackletConfig cfg;  // 2-byte preamble, sfd 0xA7, 1-byte payload
  const auto bytes = build_packlet(cfg, 5);
  REQUIRE(bytes.size() == 7);
  CHECK(bytes[0] == 0x00);
  CHECK(bytes[1] == 0x00);
  CHECK(bytes[2] == 0xA7);
  CHECK(bytes[3] == 0x03);  // length = payload + fcs
  CHECK(bytes[4] == 0x05);  // counter
  const std::uint16_t fcs = fcs_oracle(std::vector<std::uint8_t>{0x05});
  CHECK(bytes[5] == static_cast<std::uint8_t>(fcs >> 8));
  CHECK(bytes[6] == static_cast<std::uint8_t>(fcs & 0xFF));
}

TEST_CASE("signaling packet is n_tx packlets back to back with rising counters") {
  PackletConfig cfg;
  const auto stream = build_signaling_packet(cfg, 3, 0, TxMode::Looping);
  CHECK(stream.size() == 21);
  for (int k = 0; k < 3; ++k) {
    auto res = scan_for_packlet(stream, static_cast<std::size_t>(k) * 7 * 8, cfg);
    REQUIRE(res.has_value());
    CHECK(res->packlet.counter_c == k);
    CHECK(res->packlet.length_field == 3);
  }
}

TEST_CASE("counter overflow past 255 is rejected") {
  PackletConfig cfg;
  CHECK_THROWS_AS(build_signaling_packet(cfg, 3, 254, TxMode::Looping), std::out_of_range);
  CHECK_NOTHROW(build_signaling_packet(cfg, 3, 253, TxMode::Looping));
}

TEST_CASE("buffered mode: first length field covers the rest, footer appended") {
  PackletConfig cfg;
  cfg.preamble_len = 4;
  const int n_tx = 14;
  const auto segs = signaling_packet_segments(cfg, n_tx, 1, TxMode::Buffered);
  REQUIRE(segs.size() == static_cast<std::size_t>(n_tx) + 1);
  // First packlet: length announces own payload+fcs, 13 embedded packlets and
  // the 2-byte footer.
  const int expected_len = 1 + 2 + 13 * cfg.packlet_size_bytes() + 2;
  CHECK(segs[0][5] == static_cast<std::uint8_t>(expected_len));
  // A receiver locking onto the first packlet cannot verify it (the length
  // field points far past the first FCS), so the scan yields the second one.
  const auto stream = build_signaling_packet(cfg, n_tx, 1, TxMode::Buffered);
  const auto res = scan_for_packlet(stream, 0, cfg);
  REQUIRE(res.has_value());
  CHECK(res->packlet.counter_c == 2);
  // Trailing footer block is exactly 2 bytes.
  CHECK(segs.back().size() == 2);
}

TEST_CASE("round trip: every counter in a looping train decodes in order") {
  PackletConfig cfg;
  const auto stream = build_signaling_packet(cfg, 8, 10, TxMode::Looping);
  std::size_t off = 0;
  for (int k = 0; k < 8; ++k) {
    const auto res = scan_for_packlet(stream, off, cfg);
    REQUIRE(res.has_value());
    CHECK(res->packlet.counter_c == 10 + k);
    off = res->next_bit_offset;
  }
  CHECK_FALSE(scan_for_packlet(stream, off, cfg).has_value());
}

TEST_CASE("offset robustness: any mid-stream bit offset locks onto a valid packlet") {
  PackletConfig cfg;
  const auto stream = build_signaling_packet(cfg, 5, 0, TxMode::Looping);
  const std::size_t packlet_bits = 7 * 8;
  for (std::size_t bit = 0; bit < 4 * packlet_bits; ++bit) {
    const auto res = scan_for_packlet(stream, bit, cfg);
    REQUIRE(res.has_value());
    // A wake-up inside packlet k can still catch packlet k while at least one
    // full preamble byte plus the SFD remain; afterwards it locks onto k+1.
    const std::size_t k = bit / packlet_bits;
    const std::size_t within = bit % packlet_bits;
    const std::size_t expected =
        within <= 8 * static_cast<std::size_t>(cfg.preamble_len - 1) ? k : k + 1;
    CHECK(res->packlet.counter_c == expected);
  }
}

TEST_CASE("a corrupted counter byte fails its fcs and the scan skips ahead") {
  PackletConfig cfg;
  auto stream = build_signaling_packet(cfg, 3, 0, TxMode::Looping);
  stream[4] ^= 0x01;  // counter byte of packlet c=0
  const auto res = scan_for_packlet(stream, 0, cfg);
  REQUIRE(res.has_value());
  CHECK(res->packlet.counter_c == 1);
}

TEST_CASE("single bit flips after the sfd are never accepted as the first packlet") {
  PackletConfig cfg;
  const auto clean = build_signaling_packet(cfg, 1, 7, TxMode::Looping);
  for (std::size_t byte = 3; byte < clean.size(); ++byte) {
    for (int bit = 0; bit < 8; ++bit) {
      auto bad = clean;
      bad[byte] ^= static_cast<std::uint8_t>(1u << bit);
      const auto res = scan_for_packlet(bad, 0, cfg);
      CHECK_FALSE(res.has_value());
    }
  }
}

TEST_CASE("durations are exact at 250 kbit/s") {
  PackletConfig cfg;
  CHECK(byte_duration(cfg) == 32000);
  CHECK(packlet_duration(cfg) == us(224));
  cfg.preamble_len = 4;
  CHECK(packlet_duration(cfg) == us(288));
}

TEST_CASE("hex dump is one packlet per line, lowercase, space separated") {
  PackletConfig cfg;
  const auto stream = build_signaling_packet(cfg, 2, 0, TxMode::Looping);
  const std::string dump = hex_dump(stream, cfg);
  CHECK(dump.substr(0, 14) == "00 00 a7 03 00");
  CHECK(std::count(dump.begin(), dump.end(), '\n') == 2);
}
