#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vlcp/bits.hpp"
#include "vlcp/mac.hpp"

namespace vlcp {

/// Field value outside its declared range; `field` names the offender.
class RangeError : public std::invalid_argument {
 public:
  RangeError(std::string field, const std::string& detail)
      : std::invalid_argument(field + ": " + detail), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Bit length not of the form 272 + 74n.
class FramingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// MAC trailer does not verify against the message body.
class AuthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CpmHeader {
  std::uint16_t psid = 0;
  std::uint64_t generation_time_us = 0;  // microseconds since configured epoch

  bool operator==(const CpmHeader&) const = default;
};

struct ItsPduHeader {
  std::uint8_t protocol_version = 0;
  std::uint8_t message_id = 0;
  std::uint32_t station_id = 0;

  bool operator==(const ItsPduHeader&) const = default;
};

struct ManagementContainer {
  std::int32_t latitude = 0;            // units of 0.1 microdegree
  std::int32_t longitude = 0;           // units of 0.1 microdegree
  std::uint16_t reference_time_ms = 0;  // low 16 bits of generation time in ms

  bool operator==(const ManagementContainer&) const = default;
};

struct PerceivedObject {
  std::int16_t x_dm = 0;        // 0.1 m east of reference position
  std::int16_t y_dm = 0;        // 0.1 m north of reference position
  std::int16_t vx_cmps = 0;     // 0.01 m/s, 15-bit field
  std::int16_t vy_cmps = 0;     // 0.01 m/s, 15-bit field
  std::uint16_t delta_t_ms = 0; // sensing-to-generation age, 12-bit field

  bool operator==(const PerceivedObject&) const = default;
};

struct CollectivePerceptionMessage {
  CpmHeader header;
  ItsPduHeader pdu;
  ManagementContainer management;
  std::vector<PerceivedObject> objects;
  std::uint64_t mac = 0;  // recomputed on encode, verified on decode

  bool operator==(const CollectivePerceptionMessage&) const = default;
};

inline constexpr int kCpmFixedBits = 272;
inline constexpr int kCpmObjectBits = 74;
inline constexpr int kMacBits = 64;
inline constexpr int kMaxObjects = 255;

inline constexpr std::int32_t kLatitudeMax = 900000000;    // 0.1 udeg units
inline constexpr std::int32_t kLongitudeMax = 1800000000;  // 0.1 udeg units
inline constexpr std::int16_t kVelocityMin = -16384;       // 15-bit field
inline constexpr std::int16_t kVelocityMax = 16383;
inline constexpr std::uint16_t kDeltaTMax = 4095;          // 12-bit field

/// 272 + 74n.
std::size_t cpm_size_bits(std::size_t n_objects);

/// ETSI reference size, 1560 + 280(m+n).
std::size_t etsi_cpm_size_bits(std::size_t n_objects, std::size_t m_sensors);

/// Low 16 bits of the generation time expressed in milliseconds.
std::uint16_t reference_time_from_generation(std::uint64_t generation_time_us);

/// Packs the message in wire order and appends the 64-bit MAC computed over
/// all preceding bits. The msg.mac field is ignored. Throws RangeError.
BitVec encode_cpm(const CollectivePerceptionMessage& msg, const MacKey& key);

/// Inverse of encode_cpm. Throws FramingError on a bad length and AuthError
/// on MAC mismatch. The returned message carries the verified tag.
CollectivePerceptionMessage decode_cpm(const BitVec& bits, const MacKey& key);

/// Range-checks every field the wire format narrows; throws RangeError.
void validate(const CollectivePerceptionMessage& msg);

/// Field-wise equality ignoring the mac trailer (encode recomputes it).
bool same_content(const CollectivePerceptionMessage& a,
                  const CollectivePerceptionMessage& b);

}  // namespace vlcp
