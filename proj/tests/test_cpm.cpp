#include <doctest.h>

#include <random>

#include "vlcp/cpm.hpp"

using namespace vlcp;

namespace {

std::mt19937_64& test_rng() {
  static std::mt19937_64 rng(20240811);
  return rng;
}

CollectivePerceptionMessage random_message(std::size_t n_objects) {
  auto& rng = test_rng();
  CollectivePerceptionMessage msg;
  msg.header.psid = static_cast<std::uint16_t>(rng());
  msg.header.generation_time_us = rng();
  msg.pdu.protocol_version = static_cast<std::uint8_t>(rng());
  msg.pdu.message_id = static_cast<std::uint8_t>(rng());
  msg.pdu.station_id = static_cast<std::uint32_t>(rng());
  msg.management.latitude = static_cast<std::int32_t>(rng() % 1800000001ULL) - 900000000;
  msg.management.longitude =
      static_cast<std::int32_t>(rng() % 3600000001ULL) - 1800000000;
  msg.management.reference_time_ms = static_cast<std::uint16_t>(rng());
  msg.objects.resize(n_objects);
  for (auto& o : msg.objects) {
    o.x_dm = static_cast<std::int16_t>(rng());
    o.y_dm = static_cast<std::int16_t>(rng());
    o.vx_cmps = static_cast<std::int16_t>(static_cast<int>(rng() % 32768) - 16384);
    o.vy_cmps = static_cast<std::int16_t>(static_cast<int>(rng() % 32768) - 16384);
    o.delta_t_ms = static_cast<std::uint16_t>(rng() % 4096);
  }
  return msg;
}

}  // namespace

TEST_CASE("size law 272 + 74n") {
  CHECK(cpm_size_bits(0) == 272);
  CHECK(cpm_size_bits(2) == 420);
  for (std::size_t n = 0; n <= 255; ++n) {
    CHECK(cpm_size_bits(n) == 272 + 74 * n);
  }
  // n=2 padded to a byte boundary: 424 bits = 53 bytes, one byte per LED frame
  CHECK((cpm_size_bits(2) + 7) / 8 == 53);
}

TEST_CASE("ETSI reference size 1560 + 280(m+n)") {
  CHECK(etsi_cpm_size_bits(0, 0) == 1560);
  CHECK(etsi_cpm_size_bits(1, 1) == 2120);
  CHECK(etsi_cpm_size_bits(2, 0) == 2120);  // symmetric in m+n
  CHECK(etsi_cpm_size_bits(1, 1) / 8 == 265);
}

TEST_CASE("encoded length matches the size law") {
  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{2},
                        std::size_t{5}, std::size_t{16}}) {
    auto msg = random_message(n);
    CHECK(encode_cpm(msg, kDefaultMacKey).size() == cpm_size_bits(n));
  }
}

TEST_CASE("encode/decode round trip") {
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = test_rng()() % 8;
    const auto msg = random_message(n);
    const BitVec bits = encode_cpm(msg, kDefaultMacKey);
    const auto decoded = decode_cpm(bits, kDefaultMacKey);
    CHECK(same_content(decoded, msg));
    CHECK(decoded.objects.size() == n);
  }
}

TEST_CASE("field extremes survive the round trip exactly") {
  CollectivePerceptionMessage msg;
  msg.header.psid = 0xFFFF;
  msg.header.generation_time_us = ~std::uint64_t{0};
  msg.pdu.protocol_version = 0xFF;
  msg.pdu.message_id = 0xFF;
  msg.pdu.station_id = 0xFFFFFFFF;
  msg.management.latitude = kLatitudeMax;
  msg.management.longitude = -kLongitudeMax;
  msg.management.reference_time_ms = 0xFFFF;
  PerceivedObject lo{-32768, -32768, kVelocityMin, kVelocityMin, 0};
  PerceivedObject hi{32767, 32767, kVelocityMax, kVelocityMax, kDeltaTMax};
  msg.objects = {lo, hi};
  const auto decoded = decode_cpm(encode_cpm(msg, kDefaultMacKey), kDefaultMacKey);
  CHECK(same_content(decoded, msg));

  msg.management.latitude = -kLatitudeMax;
  msg.management.longitude = kLongitudeMax;
  msg.objects = {};
  CHECK(same_content(decode_cpm(encode_cpm(msg, kDefaultMacKey), kDefaultMacKey), msg));
}

TEST_CASE("out-of-range fields raise range errors naming the field") {
  auto msg = random_message(1);
  msg.management.latitude = kLatitudeMax + 1;
  CHECK_THROWS_WITH_AS(encode_cpm(msg, kDefaultMacKey),
                       doctest::Contains("latitude"), RangeError);

  msg = random_message(1);
  msg.management.longitude = -kLongitudeMax - 1;
  CHECK_THROWS_WITH_AS(encode_cpm(msg, kDefaultMacKey),
                       doctest::Contains("longitude"), RangeError);

  msg = random_message(1);
  msg.objects[0].vx_cmps = 16384;
  CHECK_THROWS_WITH_AS(encode_cpm(msg, kDefaultMacKey), doctest::Contains("vx"),
                       RangeError);

  msg = random_message(1);
  msg.objects[0].delta_t_ms = 4096;
  CHECK_THROWS_WITH_AS(encode_cpm(msg, kDefaultMacKey),
                       doctest::Contains("delta_t"), RangeError);
}

TEST_CASE("framing errors are distinct from authentication errors") {
  const auto msg = random_message(2);
  BitVec bits = encode_cpm(msg, kDefaultMacKey);
  REQUIRE(bits.size() == 420);

  // 419 bits: not of the form 272 + 74n
  CHECK_THROWS_AS(decode_cpm(bits.prefix(419), kDefaultMacKey), FramingError);
  BitVec short_bits = bits.prefix(271);
  CHECK_THROWS_AS(decode_cpm(short_bits, kDefaultMacKey), FramingError);

  // single-bit flips keep the framing but break authentication
  std::mt19937_64 rng(99);
  for (int i = 0; i < 32; ++i) {
    BitVec tampered = bits;
    tampered.flip_bit(rng() % tampered.size());
    CHECK_THROWS_AS(decode_cpm(tampered, kDefaultMacKey), AuthError);
  }

  // wrong key also fails authentication
  MacKey other = kDefaultMacKey;
  other[0] ^= 1;
  CHECK_THROWS_AS(decode_cpm(bits, other), AuthError);
}

TEST_CASE("reference time derivation") {
  CHECK(reference_time_from_generation(0) == 0);
  CHECK(reference_time_from_generation(1000) == 1);
  CHECK(reference_time_from_generation(65536000ULL) == 0);    // wraps at 2^16 ms
  CHECK(reference_time_from_generation(65537000ULL) == 1);
  CHECK(reference_time_from_generation(999) == 0);  // sub-millisecond truncates
}
