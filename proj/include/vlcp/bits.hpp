#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vlcp {

/// Variable-length bit string with MSB-first field packing.
///
/// Fields appended with append_uint/append_int occupy exactly `width` bits,
/// most significant bit first, with no alignment between fields. Byte
/// serialization pads the tail with zero bits and is big-endian within each
/// field by construction.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t nbits) : bits_(nbits, 0) {}

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  int bit(std::size_t i) const { return bits_[i]; }
  void set_bit(std::size_t i, int v) { bits_[i] = static_cast<std::uint8_t>(v & 1); }
  void flip_bit(std::size_t i) { bits_[i] ^= 1; }

  void push_back(int bit) { bits_.push_back(static_cast<std::uint8_t>(bit & 1)); }

  /// Appends the low `width` bits of `value`, MSB first. width in [0, 64].
  void append_uint(std::uint64_t value, int width);

  /// Appends a signed value as `width`-bit two's complement, MSB first.
  void append_int(std::int64_t value, int width);

  void append(const BitVec& other);

  /// First `nbits` bits as a new vector.
  BitVec prefix(std::size_t nbits) const;

  /// Packs to bytes, zero-padded to a byte boundary.
  std::vector<std::uint8_t> to_bytes() const;

  /// Lower-case hex of to_bytes().
  std::string to_hex() const;

  static BitVec from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits);
  /// nbits < 0 keeps all 8 * nbytes bits.
  static BitVec from_hex(const std::string& hex, std::ptrdiff_t nbits = -1);

  bool operator==(const BitVec& other) const = default;

 private:
  std::vector<std::uint8_t> bits_;  // one entry per bit, values 0/1
};

/// Sequential MSB-first reader over a BitVec.
class BitReader {
 public:
  explicit BitReader(const BitVec& bits) : bits_(&bits) {}

  std::size_t remaining() const { return bits_->size() - pos_; }

  /// Reads `width` bits as an unsigned value. width in [0, 64].
  std::uint64_t read_uint(int width);

  /// Reads `width` bits as two's complement and sign-extends.
  std::int64_t read_int(int width);

 private:
  const BitVec* bits_;
  std::size_t pos_ = 0;
};

}  // namespace vlcp
