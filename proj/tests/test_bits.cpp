#include <doctest.h>

#include <random>
#include <stdexcept>

#include "vlcp/bits.hpp"

using namespace vlcp;

TEST_CASE("msb-first field packing") {
  BitVec b;
  b.append_uint(0xA5, 8);
  CHECK(b.size() == 8);
  CHECK(b.bit(0) == 1);  // MSB first
  CHECK(b.bit(1) == 0);
  CHECK(b.bit(7) == 1);
  CHECK(b.to_hex() == "a5");
}

TEST_CASE("byte padding zero-fills the tail") {
  BitVec b;
  b.append_uint(0x1FF, 9);  // 1 1111 1111
  auto bytes = b.to_bytes();
  REQUIRE(bytes.size() == 2);
  CHECK(bytes[0] == 0xFF);
  CHECK(bytes[1] == 0x80);
}

TEST_CASE("signed two's complement round trip at field boundaries") {
  for (int width : {12, 15, 16, 32}) {
    const std::int64_t lo = -(std::int64_t{1} << (width - 1));
    const std::int64_t hi = (std::int64_t{1} << (width - 1)) - 1;
    for (std::int64_t v : {lo, lo + 1, std::int64_t{-1}, std::int64_t{0},
                           std::int64_t{1}, hi - 1, hi}) {
      BitVec b;
      b.append_int(v, width);
      BitReader r(b);
      CHECK(r.read_int(width) == v);
    }
  }
}

TEST_CASE("random field sequences round trip") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    BitVec b;
    std::vector<std::pair<std::uint64_t, int>> fields;
    for (int i = 0; i < 20; ++i) {
      const int width = 1 + static_cast<int>(rng() % 64);
      const std::uint64_t mask =
          width == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
      const std::uint64_t v = rng() & mask;
      fields.emplace_back(v, width);
      b.append_uint(v, width);
    }
    BitReader r(b);
    for (auto [v, width] : fields) CHECK(r.read_uint(width) == v);

    // hex round trip preserves every bit
    BitVec back = BitVec::from_hex(b.to_hex(), static_cast<std::ptrdiff_t>(b.size()));
    CHECK(back == b);
  }
}

TEST_CASE("reader refuses to run past the end") {
  BitVec b;
  b.append_uint(0, 8);
  BitReader r(b);
  r.read_uint(8);
  CHECK_THROWS_AS(r.read_uint(1), std::out_of_range);
}
