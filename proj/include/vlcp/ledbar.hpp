#pragma once

#include <array>
#include <cstdint>

namespace vlcp {

inline constexpr int kLedCount = 96;
inline constexpr int kBlockCount = 12;
inline constexpr int kLedsPerBlock = 8;
inline constexpr int kDataBlockFirst = 2;  // blocks 2..9 carry data
inline constexpr int kDataBlockCount = 8;

/// One transmitted frame of the 1x96 bar. LEDs are driven in 12 blocks of 8;
/// all LEDs within a block share one on/off value (block-level OOK).
class LedBarState {
 public:
  LedBarState() { leds_.fill(false); }

  bool led(int i) const { return leds_[static_cast<std::size_t>(i)]; }
  bool block(int b) const { return leds_[static_cast<std::size_t>(b) * kLedsPerBlock]; }

  void set_block(int b, bool on) {
    for (int i = 0; i < kLedsPerBlock; ++i) {
      leds_[static_cast<std::size_t>(b) * kLedsPerBlock + i] = on;
    }
  }

  bool operator==(const LedBarState&) const = default;

 private:
  std::array<bool, kLedCount> leds_;
};

inline bool is_tracking_block(int b) { return b <= 1 || b >= kBlockCount - 2; }

/// Maps one data byte onto the bar. Blocks 0,1,10,11 are tracking blocks:
/// blocks 0 and 11 are ON on even symbol indices, blocks 1 and 10 are their
/// complement, so each end always shows one ON and one OFF reference and
/// every tracking block toggles each frame. Data bit 7 drives block 2, data
/// bit 0 drives block 9.
LedBarState frame_to_ledbar(std::uint8_t data_byte, std::uint64_t symbol_index);

/// Inverse of the data mapping (tracking blocks ignored).
std::uint8_t byte_from_ledbar(const LedBarState& bar);

/// 0 when blocks {0,11} are ON (even symbol), 1 otherwise.
int parity_from_ledbar(const LedBarState& bar);

}  // namespace vlcp
