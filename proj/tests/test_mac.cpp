#include <doctest.h>

#include <stdexcept>

#include <random>

#include "vlcp/mac.hpp"

using namespace vlcp;

// Golden vectors computed with an independent HMAC-SHA256 implementation
// (Python hmac/hashlib), truncated to the leading 8 bytes.
TEST_CASE("known-answer vectors") {
  CHECK(compute_mac(BitVec{}, MacKey{}) == 0xb613679a0814d9ecULL);

  BitVec payload;
  payload.append_uint(0xA5, 8);
  CHECK(compute_mac(payload, kDefaultMacKey) == 0xc98e44b5f4a993b5ULL);
}

TEST_CASE("deterministic for identical inputs") {
  BitVec payload;
  payload.append_uint(0xDEADBEEF, 32);
  CHECK(compute_mac(payload, kDefaultMacKey) == compute_mac(payload, kDefaultMacKey));
}

TEST_CASE("single key bit flips change the tag") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    BitVec payload;
    for (int i = 0; i < 4; ++i) payload.append_uint(rng(), 64);
    MacKey key;
    for (auto& b : key) b = static_cast<std::uint8_t>(rng());

    MacKey flipped = key;
    const int bit = static_cast<int>(rng() % 128);
    flipped[static_cast<std::size_t>(bit / 8)] ^=
        static_cast<std::uint8_t>(1u << (bit % 8));
    CHECK(compute_mac(payload, key) != compute_mac(payload, flipped));
  }
}

TEST_CASE("payload is zero-padded to a byte boundary before hashing") {
  // 4 data bits followed by 4 zero bits hash identically to the padded nibble
  BitVec nibble;
  nibble.append_uint(0xC, 4);
  BitVec padded;
  padded.append_uint(0xC0, 8);
  CHECK(compute_mac(nibble, kDefaultMacKey) == compute_mac(padded, kDefaultMacKey));
}

TEST_CASE("key hex parsing round trips") {
  const std::string hex = "000102030405060708090a0b0c0d0e0f";
  CHECK(parse_key_hex(hex) == kDefaultMacKey);
  CHECK(key_to_hex(kDefaultMacKey) == hex);
  CHECK_THROWS_AS(parse_key_hex("abcd"), std::invalid_argument);
}
