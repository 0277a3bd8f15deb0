#include "vlcp/ledbar.hpp"

namespace vlcp {

LedBarState frame_to_ledbar(std::uint8_t data_byte, std::uint64_t symbol_index) {
  LedBarState bar;
  const bool even = (symbol_index % 2) == 0;
  bar.set_block(0, even);
  bar.set_block(1, !even);
  bar.set_block(kBlockCount - 2, !even);
  bar.set_block(kBlockCount - 1, even);
  for (int j = 0; j < kDataBlockCount; ++j) {
    const bool on = (data_byte >> (7 - j)) & 1;
    bar.set_block(kDataBlockFirst + j, on);
  }
  return bar;
}

std::uint8_t byte_from_ledbar(const LedBarState& bar) {
  std::uint8_t v = 0;
  for (int j = 0; j < kDataBlockCount; ++j) {
    v = static_cast<std::uint8_t>((v << 1) | (bar.block(kDataBlockFirst + j) ? 1 : 0));
  }
  return v;
}

int parity_from_ledbar(const LedBarState& bar) {
  return bar.block(0) ? 0 : 1;
}

}  // namespace vlcp
