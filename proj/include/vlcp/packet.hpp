#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "vlcp/bits.hpp"
#include "vlcp/ledbar.hpp"

namespace vlcp {

/// All scheduling and capture timestamps are integer microseconds. The paper
/// rates (50..500 Hz tx, 100..1000 fps) all have exact microsecond periods,
/// which keeps clock arithmetic exact and runs reproducible.
using TimeUs = std::int64_t;

inline constexpr double kUsPerSec = 1e6;

inline TimeUs seconds_to_us(double s) {
  return static_cast<TimeUs>(s * kUsPerSec + (s >= 0 ? 0.5 : -0.5));
}
inline double us_to_seconds(TimeUs t) { return static_cast<double>(t) / kUsPerSec; }

/// One packet on the wire: idle frames, a sync delimiter, then data bytes.
struct TxPacket {
  std::vector<std::uint8_t> data_frames;  // payload, one byte per LED frame
  std::uint8_t sync_frame = 0xFF;
  int idle_gap = 3;       // idle (0x00) frames preceding sync, >= 2
  int trailing_idle = 2;  // idle frames after data so the receiver can close
                          // the final symbol
  std::size_t payload_bits = 0;  // original length before byte padding

  std::size_t n_frame() const { return data_frames.size(); }
  std::size_t total_frames() const {
    return static_cast<std::size_t>(idle_gap) + 1 + data_frames.size() +
           static_cast<std::size_t>(trailing_idle);
  }
};

/// Zero-pads the payload to a byte multiple and splits it MSB-first into
/// one-byte frames.
TxPacket packetize(const BitVec& payload);

enum class FrameKind { Idle, Sync, Data };

struct TxFrame {
  TimeUs t = 0;                   // frame start; bar holds state for one period
  std::uint64_t symbol_index = 0; // drives the tracking-block phase
  std::uint8_t data_byte = 0;
  FrameKind kind = FrameKind::Idle;
  LedBarState bar;
};

/// Timed LED-bar frame sequence at exact 1/frame_rate_tx spacing.
struct TxSchedule {
  double frame_rate_tx = 500.0;
  TimeUs period_us = 2000;
  TimeUs start_time = 0;       // first (idle) frame
  TimeUs first_data_time = 0;  // transmission timestamp for latency accounting
  std::vector<TxFrame> frames;

  TimeUs end_time() const {
    return frames.empty() ? start_time : frames.back().t + period_us;
  }

  /// Bar state active at time t, or nullptr outside [start, end).
  const LedBarState* state_at(TimeUs t) const;
};

/// Emits idle frames, the sync frame, data frames, and trailing idle at exact
/// 1/frame_rate_tx spacing. first_symbol_index lets back-to-back packets keep
/// the tracking blocks toggling continuously.
TxSchedule schedule(const TxPacket& packet, double frame_rate_tx_hz,
                    TimeUs start_time, std::uint64_t first_symbol_index = 0);

/// One line per frame: timestamp in seconds, then 96 characters of 0/1.
void write_frame_dump(std::ostream& os, const TxSchedule& sched);
std::vector<TxFrame> parse_frame_dump(std::istream& is);

}  // namespace vlcp
