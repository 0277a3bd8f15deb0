#include "vlcp/packet.hpp"

#include <cassert>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vlcp {

TxPacket packetize(const BitVec& payload) {
  assert(!payload.empty());
  TxPacket packet;
  packet.payload_bits = payload.size();
  packet.data_frames = payload.to_bytes();  // zero-pads the final byte
  return packet;
}

const LedBarState* TxSchedule::state_at(TimeUs t) const {
  if (frames.empty() || t < frames.front().t || t >= end_time()) return nullptr;
  const auto idx = static_cast<std::size_t>((t - frames.front().t) / period_us);
  return &frames[std::min(idx, frames.size() - 1)].bar;
}

TxSchedule schedule(const TxPacket& packet, double frame_rate_tx_hz,
                    TimeUs start_time, std::uint64_t first_symbol_index) {
  assert(frame_rate_tx_hz > 0);
  TxSchedule sched;
  sched.frame_rate_tx = frame_rate_tx_hz;
  sched.period_us = static_cast<TimeUs>(std::llround(kUsPerSec / frame_rate_tx_hz));
  sched.start_time = start_time;
  sched.frames.reserve(packet.total_frames());

  std::uint64_t sym = first_symbol_index;
  TimeUs t = start_time;
  auto emit = [&](std::uint8_t byte, FrameKind kind) {
    TxFrame f;
    f.t = t;
    f.symbol_index = sym;
    f.data_byte = byte;
    f.kind = kind;
    f.bar = frame_to_ledbar(byte, sym);
    sched.frames.push_back(f);
    t += sched.period_us;
    ++sym;
  };

  for (int i = 0; i < packet.idle_gap; ++i) emit(0x00, FrameKind::Idle);
  emit(packet.sync_frame, FrameKind::Sync);
  sched.first_data_time = t;
  for (std::uint8_t b : packet.data_frames) emit(b, FrameKind::Data);
  for (int i = 0; i < packet.trailing_idle; ++i) emit(0x00, FrameKind::Idle);
  return sched;
}

void write_frame_dump(std::ostream& os, const TxSchedule& sched) {
  for (const TxFrame& f : sched.frames) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", us_to_seconds(f.t));
    os << buf << ' ';
    for (int i = 0; i < kLedCount; ++i) os << (f.bar.led(i) ? '1' : '0');
    os << '\n';
  }
}

std::vector<TxFrame> parse_frame_dump(std::istream& is) {
  std::vector<TxFrame> frames;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double t_s = 0;
    std::string bits;
    if (!(ls >> t_s >> bits) || bits.size() != kLedCount) {
      throw std::runtime_error("malformed frame dump line: " + line);
    }
    TxFrame f;
    f.t = seconds_to_us(t_s);
    // Frame dumps are block-coherent by construction; rebuild block-wise.
    for (int b = 0; b < kBlockCount; ++b) {
      f.bar.set_block(b, bits[static_cast<std::size_t>(b) * kLedsPerBlock] == '1');
    }
    f.data_byte = byte_from_ledbar(f.bar);
    frames.push_back(f);
  }
  return frames;
}

}  // namespace vlcp
