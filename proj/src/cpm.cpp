#include "vlcp/cpm.hpp"

namespace vlcp {

std::size_t cpm_size_bits(std::size_t n_objects) {
  return static_cast<std::size_t>(kCpmFixedBits) + kCpmObjectBits * n_objects;
}

std::size_t etsi_cpm_size_bits(std::size_t n_objects, std::size_t m_sensors) {
  return 1560 + 280 * (n_objects + m_sensors);
}

std::uint16_t reference_time_from_generation(std::uint64_t generation_time_us) {
  return static_cast<std::uint16_t>((generation_time_us / 1000) & 0xFFFF);
}

void validate(const CollectivePerceptionMessage& msg) {
  const auto& m = msg.management;
  if (m.latitude > kLatitudeMax || m.latitude < -kLatitudeMax) {
    throw RangeError("latitude", "must be within +/-900000000 (0.1 udeg)");
  }
  if (m.longitude > kLongitudeMax || m.longitude < -kLongitudeMax) {
    throw RangeError("longitude", "must be within +/-1800000000 (0.1 udeg)");
  }
  if (msg.objects.size() > static_cast<std::size_t>(kMaxObjects)) {
    throw RangeError("objects", "at most 255 perceived objects per message");
  }
  for (std::size_t i = 0; i < msg.objects.size(); ++i) {
    const auto& o = msg.objects[i];
    const std::string at = "objects[" + std::to_string(i) + "].";
    if (o.vx_cmps < kVelocityMin || o.vx_cmps > kVelocityMax) {
      throw RangeError(at + "vx", "must fit a signed 15-bit field");
    }
    if (o.vy_cmps < kVelocityMin || o.vy_cmps > kVelocityMax) {
      throw RangeError(at + "vy", "must fit a signed 15-bit field");
    }
    if (o.delta_t_ms > kDeltaTMax) {
      throw RangeError(at + "delta_t", "must fit an unsigned 12-bit field");
    }
  }
}

bool same_content(const CollectivePerceptionMessage& a,
                  const CollectivePerceptionMessage& b) {
  return a.header == b.header && a.pdu == b.pdu && a.management == b.management &&
         a.objects == b.objects;
}

namespace {

BitVec pack_body(const CollectivePerceptionMessage& msg) {
  BitVec bits;
  // HeaderInfo
  bits.append_uint(msg.header.psid, 16);
  bits.append_uint(msg.header.generation_time_us, 64);
  // ITS PDU header
  bits.append_uint(msg.pdu.protocol_version, 8);
  bits.append_uint(msg.pdu.message_id, 8);
  bits.append_uint(msg.pdu.station_id, 32);
  // Management container
  bits.append_int(msg.management.latitude, 32);
  bits.append_int(msg.management.longitude, 32);
  bits.append_uint(msg.management.reference_time_ms, 16);
  // Perceived objects
  for (const auto& o : msg.objects) {
    bits.append_int(o.x_dm, 16);
    bits.append_int(o.y_dm, 16);
    bits.append_int(o.vx_cmps, 15);
    bits.append_int(o.vy_cmps, 15);
    bits.append_uint(o.delta_t_ms, 12);
  }
  return bits;
}

}  // namespace

BitVec encode_cpm(const CollectivePerceptionMessage& msg, const MacKey& key) {
  validate(msg);
  BitVec bits = pack_body(msg);
  bits.append_uint(compute_mac(bits, key), kMacBits);
  return bits;
}

CollectivePerceptionMessage decode_cpm(const BitVec& bits, const MacKey& key) {
  const std::size_t len = bits.size();
  if (len < static_cast<std::size_t>(kCpmFixedBits) ||
      (len - kCpmFixedBits) % kCpmObjectBits != 0) {
    throw FramingError("bit length " + std::to_string(len) +
                       " is not of the form 272 + 74n");
  }
  const std::size_t n = (len - kCpmFixedBits) / kCpmObjectBits;
  if (n > static_cast<std::size_t>(kMaxObjects)) {
    throw FramingError("object count " + std::to_string(n) + " exceeds 255");
  }

  const BitVec body = bits.prefix(len - kMacBits);
  BitReader r(bits);

  CollectivePerceptionMessage msg;
  msg.header.psid = static_cast<std::uint16_t>(r.read_uint(16));
  msg.header.generation_time_us = r.read_uint(64);
  msg.pdu.protocol_version = static_cast<std::uint8_t>(r.read_uint(8));
  msg.pdu.message_id = static_cast<std::uint8_t>(r.read_uint(8));
  msg.pdu.station_id = static_cast<std::uint32_t>(r.read_uint(32));
  msg.management.latitude = static_cast<std::int32_t>(r.read_int(32));
  msg.management.longitude = static_cast<std::int32_t>(r.read_int(32));
  msg.management.reference_time_ms = static_cast<std::uint16_t>(r.read_uint(16));
  msg.objects.resize(n);
  for (auto& o : msg.objects) {
    o.x_dm = static_cast<std::int16_t>(r.read_int(16));
    o.y_dm = static_cast<std::int16_t>(r.read_int(16));
    o.vx_cmps = static_cast<std::int16_t>(r.read_int(15));
    o.vy_cmps = static_cast<std::int16_t>(r.read_int(15));
    o.delta_t_ms = static_cast<std::uint16_t>(r.read_uint(12));
  }
  msg.mac = r.read_uint(kMacBits);

  if (compute_mac(body, key) != msg.mac) {
    throw AuthError("MAC verification failed");
  }
  return msg;
}

}  // namespace vlcp
