#include "vlcp/bits.hpp"

#include <cassert>
#include <stdexcept>

namespace vlcp {

void BitVec::append_uint(std::uint64_t value, int width) {
  assert(width >= 0 && width <= 64);
  for (int i = width - 1; i >= 0; --i) {
    bits_.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
  }
}

void BitVec::append_int(std::int64_t value, int width) {
  assert(width >= 1 && width <= 64);
  const std::uint64_t mask =
      width == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
  append_uint(static_cast<std::uint64_t>(value) & mask, width);
}

void BitVec::append(const BitVec& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitVec BitVec::prefix(std::size_t nbits) const {
  assert(nbits <= bits_.size());
  BitVec out;
  out.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(nbits));
  return out;
}

std::vector<std::uint8_t> BitVec::to_bytes() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

std::string BitVec::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : to_bytes()) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

BitVec BitVec::from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
  assert(nbits <= bytes.size() * 8);
  BitVec out;
  out.bits_.reserve(nbits);
  for (std::size_t i = 0; i < nbits; ++i) {
    out.bits_.push_back((bytes[i / 8] >> (7 - i % 8)) & 1u);
  }
  return out;
}

namespace {
int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument("invalid hex digit");
}
}  // namespace

BitVec BitVec::from_hex(const std::string& hex, std::ptrdiff_t nbits) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex string");
  std::vector<std::uint8_t> bytes;
  bytes.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    bytes.push_back(static_cast<std::uint8_t>((hex_nibble(hex[i]) << 4) | hex_nibble(hex[i + 1])));
  }
  const std::size_t want =
      nbits < 0 ? bytes.size() * 8 : static_cast<std::size_t>(nbits);
  if (want > bytes.size() * 8) throw std::invalid_argument("hex shorter than requested bits");
  return from_bytes(bytes, want);
}

std::uint64_t BitReader::read_uint(int width) {
  assert(width >= 0 && width <= 64);
  if (remaining() < static_cast<std::size_t>(width)) {
    throw std::out_of_range("bit read past end");
  }
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) {
    v = (v << 1) | bits_->bit(pos_++);
  }
  return v;
}

std::int64_t BitReader::read_int(int width) {
  std::uint64_t v = read_uint(width);
  if (width < 64 && (v & (std::uint64_t{1} << (width - 1)))) {
    v |= ~((std::uint64_t{1} << width) - 1);  // sign extend
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace vlcp
