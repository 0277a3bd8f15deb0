#include <doctest.h>

#include <cstdint>

#include <sstream>

#include "vlcp/packet.hpp"

using namespace vlcp;

TEST_CASE("packetize pads to byte frames") {
  SUBCASE("420-bit CPM payload becomes 53 data frames") {
    BitVec payload(420);
    CHECK(packetize(payload).n_frame() == 53);
  }
  SUBCASE("byte-aligned payload passes through") {
    BitVec payload;
    payload.append_uint(0xA5, 8);
    const TxPacket p = packetize(payload);
    REQUIRE(p.n_frame() == 1);
    CHECK(p.data_frames[0] == 0xA5);
  }
  SUBCASE("9-bit payload pads the second frame with zeros") {
    BitVec payload;
    payload.append_uint(0x1FF, 9);
    const TxPacket p = packetize(payload);
    REQUIRE(p.n_frame() == 2);
    CHECK(p.data_frames[0] == 0xFF);
    CHECK(p.data_frames[1] == 0x80);
    CHECK(p.payload_bits == 9);
  }
}

TEST_CASE("frame_to_ledbar tracking and data mapping") {
  SUBCASE("byte 0x00 on an even symbol") {
    const LedBarState bar = frame_to_ledbar(0x00, 0);
    CHECK(bar.block(0));
    CHECK(bar.block(11));
    CHECK_FALSE(bar.block(1));
    CHECK_FALSE(bar.block(10));
    for (int b = 2; b <= 9; ++b) CHECK_FALSE(bar.block(b));
  }
  SUBCASE("byte 0xFF on an odd symbol") {
    const LedBarState bar = frame_to_ledbar(0xFF, 1);
    CHECK(bar.block(1));
    CHECK(bar.block(10));
    CHECK_FALSE(bar.block(0));
    CHECK_FALSE(bar.block(11));
    for (int b = 2; b <= 9; ++b) CHECK(bar.block(b));
  }
  SUBCASE("byte 0xA5 expands MSB-first onto blocks 2..9") {
    const LedBarState bar = frame_to_ledbar(0xA5, 0);
    const bool expect[8] = {true, false, true, false, false, true, false, true};
    for (int j = 0; j < 8; ++j) CHECK(bar.block(2 + j) == expect[j]);
  }
}

TEST_CASE("block coherence: all 8 LEDs in a block share one value") {
  for (int byte = 0; byte < 256; ++byte) {
    const LedBarState bar = frame_to_ledbar(static_cast<std::uint8_t>(byte), byte);
    for (int b = 0; b < kBlockCount; ++b) {
      for (int i = 0; i < kLedsPerBlock; ++i) {
        CHECK(bar.led(b * kLedsPerBlock + i) == bar.block(b));
      }
    }
  }
}

TEST_CASE("byte recovery inverts the mapping for all 256 values") {
  for (int byte = 0; byte < 256; ++byte) {
    for (std::uint64_t sym : {0ULL, 1ULL}) {
      const LedBarState bar = frame_to_ledbar(static_cast<std::uint8_t>(byte), sym);
      CHECK(byte_from_ledbar(bar) == byte);
      CHECK(parity_from_ledbar(bar) == static_cast<int>(sym % 2));
    }
  }
}

TEST_CASE("schedule timing") {
  BitVec payload(424);
  TxPacket packet = packetize(payload);
  REQUIRE(packet.n_frame() == 53);

  SUBCASE("53 data frames at 500 Hz span 106 ms") {
    const TxSchedule s = schedule(packet, 500.0, 0);
    CHECK(s.period_us == 2000);
    const TimeUs data_span =
        static_cast<TimeUs>(packet.n_frame()) * s.period_us;
    CHECK(data_span == 106000);
    CHECK(s.first_data_time == (packet.idle_gap + 1) * s.period_us);
  }
  SUBCASE("single frame at 100 Hz spans 10 ms") {
    BitVec one_byte;
    one_byte.append_uint(0x42, 8);
    const TxSchedule s = schedule(packetize(one_byte), 100.0, 0);
    CHECK(s.period_us == 10000);
  }
  SUBCASE("timestamps strictly increase with a constant step") {
    for (double rate : {50.0, 125.0, 250.0, 400.0, 500.0}) {
      const TxSchedule s = schedule(packet, rate, 12345);
      for (std::size_t i = 1; i < s.frames.size(); ++i) {
        CHECK(s.frames[i].t - s.frames[i - 1].t == s.period_us);
      }
      CHECK(s.frames.front().t == 12345);
    }
  }
}

TEST_CASE("tracking blocks toggle every frame and ends stay complementary") {
  BitVec payload(53 * 8);
  const TxSchedule s = schedule(packetize(payload), 500.0, 0);
  for (std::size_t i = 0; i < s.frames.size(); ++i) {
    const LedBarState& bar = s.frames[i].bar;
    CHECK(bar.block(0) != bar.block(1));
    CHECK(bar.block(10) != bar.block(11));
    CHECK(bar.block(0) == bar.block(11));
    if (i > 0) {
      const LedBarState& prev = s.frames[i - 1].bar;
      for (int b : {0, 1, 10, 11}) CHECK(bar.block(b) != prev.block(b));
    }
  }
}

TEST_CASE("frame dump round trips") {
  BitVec payload;
  payload.append_uint(0xDEADBEEFCAFEF00DULL, 64);
  const TxSchedule s = schedule(packetize(payload), 500.0, 0);

  std::stringstream ss;
  write_frame_dump(ss, s);
  const auto frames = parse_frame_dump(ss);
  REQUIRE(frames.size() == s.frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    CHECK(frames[i].t == s.frames[i].t);
    CHECK(frames[i].bar == s.frames[i].bar);
  }
}

TEST_CASE("state_at selects the frame active at each instant") {
  BitVec payload;
  payload.append_uint(0xAB, 8);
  const TxSchedule s = schedule(packetize(payload), 500.0, 0);
  CHECK(s.state_at(-1) == nullptr);
  CHECK(s.state_at(s.end_time()) == nullptr);
  CHECK(*s.state_at(0) == s.frames[0].bar);
  CHECK(*s.state_at(1999) == s.frames[0].bar);
  CHECK(*s.state_at(2000) == s.frames[1].bar);
}
