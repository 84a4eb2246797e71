#include <doctest.h>

#include <cmath>
#include <vector>

#include "whisper/packlet.hpp"
#include "whisper/radio.hpp"
#include "whisper/rng.hpp"

using namespace whisper;

TEST_CASE("timeline rejects overlap and inverted intervals, merges same-state") {
  RadioTimeline tl;
  tl.append(RadioState::Listening, 0, 100);
  CHECK_THROWS(tl.append(RadioState::Receiving, 50, 200));
  CHECK_THROWS(tl.append(RadioState::Receiving, 300, 250));
  tl.append(RadioState::Listening, 100, 150);  // merges
  CHECK(tl.intervals().size() == 1);
  CHECK(tl.intervals()[0].end == 150);
  CHECK(tl.radio_on_ns() == 150);
}

TEST_CASE("timeline validation catches illegal transitions and bad turnarounds") {
  RadioTimingParams timing;
  {
    RadioTimeline tl;
    tl.append(RadioState::Listening, 0, us(100));
    tl.append(RadioState::Receiving, us(100), us(300));
    tl.append(RadioState::TurnaroundRxTx, us(300), us(300) + timing.t_turn);
    tl.append(RadioState::Transmitting, us(300) + timing.t_turn, us(1000));
    CHECK_FALSE(tl.validate(timing).has_value());
  }
  {
    RadioTimeline tl;  // turnaround with the wrong duration
    tl.append(RadioState::Receiving, 0, us(100));
    tl.append(RadioState::TurnaroundRxTx, us(100), us(150));
    tl.append(RadioState::Transmitting, us(150), us(500));
    CHECK(tl.validate(timing).has_value());
  }
  {
    RadioTimeline tl;  // a turnaround back to receive cannot follow listening
    tl.append(RadioState::Listening, 0, us(100));
    tl.append(RadioState::TurnaroundTxRx, us(100), us(200));
    CHECK(tl.validate(timing).has_value());
  }
}

TEST_CASE("reception verdicts: alignment, content and connectivity") {
  RadioTimingParams timing;
  PackletConfig cfg;
  const auto bytes_a = build_packlet(cfg, 4);
  const auto bytes_b = build_packlet(cfg, 5);

  TxSegment cand{1, 10000, 10000 + packlet_duration(cfg), bytes_a};
  SUBCASE("nothing connected") {
    CHECK(deliverable_transmissions(cand, {}, timing, 0.0) == Verdict::NotHeard);
  }
  SUBCASE("identical and aligned delivers under the draw") {
    TxSegment other{2, 10000 + 400, cand.end + 400, bytes_a};
    std::vector<ConnectedTx> conn{{&cand, 0.9, 0}, {&other, 0.9, 0}};
    CHECK(deliverable_transmissions(cand, conn, timing, 0.5) == Verdict::Delivered);
    CHECK(deliverable_transmissions(cand, conn, timing, 0.999) == Verdict::DroppedChannel);
  }
  SUBCASE("misalignment beyond the interference window corrupts") {
    TxSegment other{2, 10000 + 501, cand.end + 501, bytes_a};
    std::vector<ConnectedTx> conn{{&cand, 1.0, 0}, {&other, 1.0, 0}};
    CHECK(deliverable_transmissions(cand, conn, timing, 0.0) == Verdict::DroppedCorrupt);
  }
  SUBCASE("content mismatch corrupts even when aligned") {
    TxSegment other{2, 10000, cand.end, bytes_b};
    std::vector<ConnectedTx> conn{{&cand, 1.0, 0}, {&other, 1.0, 0}};
    CHECK(deliverable_transmissions(cand, conn, timing, 0.0) == Verdict::DroppedCorrupt);
  }
}

TEST_CASE("two independent prr 0.5 links combine to 0.75 delivery") {
  RadioTimingParams timing;
  PackletConfig cfg;
  const auto bytes = build_packlet(cfg, 0);
  TxSegment a{1, 0, packlet_duration(cfg), bytes};
  TxSegment b{2, 100, packlet_duration(cfg) + 100, bytes};
  std::vector<ConnectedTx> conn{{&a, 0.5, 0}, {&b, 0.5, 0}};
  Rng rng = Rng::from_key(7);
  const int trials = 100000;
  int delivered = 0;
  for (int i = 0; i < trials; ++i) {
    if (deliverable_transmissions(a, conn, timing, rng.next_double()) == Verdict::Delivered) {
      ++delivered;
    }
  }
  const double rate = static_cast<double>(delivered) / trials;
  CHECK(std::abs(rate - 0.75) < 0.01);
}

TEST_CASE("clock model: ideal is exact, jitter stays within its bound") {
  Rng rng = Rng::from_key(3);
  CHECK(apply_clock_model(ClockProfile::ideal(), us(448), rng) == us(448));
  const ClockProfile prof = ClockProfile::flock_compensated();
  for (int i = 0; i < 1000; ++i) {
    const ns_t v = apply_clock_model(prof, us(448), rng);
    CHECK(std::llabs(v - us(448)) <= prof.jitter_bound);
  }
  ClockProfile drift{100.0, 0, 0};  // +100 ppm
  CHECK(apply_clock_model(drift, ms(10), rng) == ms(10) + 1000);
}

TEST_CASE("receiver-side sfd timestamp includes data and propagation delay") {
  RadioTimingParams timing;
  CHECK(rx_timestamp_of_sfd(1000, timing) == 1000 + us(3));
  CHECK(rx_timestamp_of_sfd(1000, timing, 250) == 1000 + us(3) + 250);
}
