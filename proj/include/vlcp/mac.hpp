#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "vlcp/bits.hpp"

namespace vlcp {

/// Pre-shared 128-bit session key.
using MacKey = std::array<std::uint8_t, 16>;

/// Fixed key used by the experiment harness and CLI defaults.
inline constexpr MacKey kDefaultMacKey = {0x00, 0x01, 0x02, 0x03, 0x04, 0x05,
                                          0x06, 0x07, 0x08, 0x09, 0x0a, 0x0b,
                                          0x0c, 0x0d, 0x0e, 0x0f};

/// 64-bit message tag: HMAC-SHA256 over the payload (zero-padded to a byte
/// boundary), truncated to the leading 8 bytes, interpreted big-endian.
std::uint64_t compute_mac(const BitVec& payload, const MacKey& key);

/// Parses a 32-hex-digit key.
MacKey parse_key_hex(const std::string& hex);

std::string key_to_hex(const MacKey& key);

}  // namespace vlcp
