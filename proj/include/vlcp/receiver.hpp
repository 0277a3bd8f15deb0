#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "vlcp/bits.hpp"
#include "vlcp/camera.hpp"
#include "vlcp/ledbar.hpp"
#include "vlcp/packet.hpp"

namespace vlcp {

/// Tracked image window around the bar. x0/y0/width/height describe the
/// expanded search box (tight extent plus a 20% margin); the bar_* fields
/// keep the tight extent in continuous pixel coordinates so the demodulator
/// can place block windows without margin-rounding drift.
struct RegionOfInterest {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;
  bool valid = false;

  double bar_x0 = 0.0;  // inclusive..exclusive column bounds of the bar
  double bar_x1 = 0.0;
  double bar_y0 = 0.0;
  double bar_y1 = 0.0;
};

inline constexpr double kRoiMargin = 0.2;  // total fractional expansion

struct DetectParams {
  int diff_threshold = 16;   // minimum |frame difference| in gray levels
  int cluster_gap = 4;       // columns of silence splitting clusters
  int min_cluster_mass = 4;  // thresholded pixels for a real cluster
  int min_width = 12;        // pixels
  double min_aspect = 2.5;   // bar width / height lower bound
};

/// Frame-differencing acquisition. Static sources cancel; the antiphase
/// tracking blocks flip every transmitted frame, so a visible bar always
/// leaves two end clusters in the difference image. Returns an invalid ROI
/// when no bar-shaped candidate exists (a normal outcome).
RegionOfInterest detect_bar(const CameraFrame& prev, const CameraFrame& curr,
                            const DetectParams& params = {});

/// Re-locates the bar inside the current ROI and re-derives the box. Returns
/// an invalid ROI when the end clusters are not visible in this frame pair
/// (the caller keeps the previous box and counts consecutive losses).
RegionOfInterest track_roi(const RegionOfInterest& roi, const CameraFrame& prev,
                           const CameraFrame& curr,
                           const DetectParams& params = {});

struct DemodParams {
  double contrast_floor = 4.0;  // minimum on_ref - off_ref, gray levels
  double window_inset = 0.2;    // fraction trimmed from each block window side
};

/// One demodulated camera frame.
struct DemodFrame {
  std::uint8_t byte_value = 0;
  std::array<float, kBlockCount> confidence{};  // per-block margin, clamped [0,1]
  float min_confidence = 0.f;                   // min over the 8 data blocks
  TimeUs capture_time = 0;
  int symbol_parity = 0;  // 0 when blocks {0,11} are the bright pair
  bool reliable = false;  // contrast above the floor
};

/// Thresholding demodulator. Splits the tight bar extent into 12 equal block
/// windows (trimmed by window_inset per side), references the threshold to
/// the bright/dark tracking-window pairs, and slices each data block mean.
DemodFrame demod_frame(const CameraFrame& frame, const RegionOfInterest& roi,
                       const DemodParams& params = {});

struct RxPacket {
  BitVec payload_bits;
  TimeUs first_frame_time = 0;     // first capture of the first data symbol
  TimeUs demod_complete_time = 0;  // capture that closed the final symbol
  int frame_count = 0;
};

struct AssembleParams {
  int n_frame = 53;             // data frames per packet
  int captures_per_symbol = 2;  // nominal fps / tx rate
};

/// Regroups the ~2 captures per symbol into bytes using the tracking-block
/// parity as the symbol clock, locks onto the idle->sync delimiter, then
/// collects n_frame data bytes. A parity run longer than
/// captures_per_symbol + 1 is a symbol-clock slip: the partial packet is
/// discarded and the search restarts.
class SymbolAssembler {
 public:
  explicit SymbolAssembler(const AssembleParams& params = {});

  std::optional<RxPacket> push(const DemodFrame& frame);
  void reset();

 private:
  std::optional<RxPacket> handle_symbol(const DemodFrame& symbol, TimeUs run_start,
                                        TimeUs close_time);

  AssembleParams params_;
  // current parity run
  int run_parity_ = -1;
  int run_length_ = 0;
  DemodFrame run_best_;
  TimeUs run_start_time_ = 0;
  // sync / collection state
  bool collecting_ = false;
  bool idle_seen_ = false;
  std::vector<std::uint8_t> bytes_;
  TimeUs first_frame_time_ = 0;
};

/// Batch form of SymbolAssembler over a recorded stream (ordered by
/// capture_time). Returns the first completed packet, if any.
std::optional<RxPacket> assemble_packet(const std::vector<DemodFrame>& stream,
                                        const AssembleParams& params = {});

struct ReceiverParams {
  DetectParams detect;
  DemodParams demod;
  AssembleParams assemble;
  int roi_loss_limit = 4;  // consecutive tracking losses before re-acquisition
};

/// Camera-side state machine: acquire by differencing, track the ROI,
/// demodulate each frame, assemble packets. One instance per capture stream.
class Receiver {
 public:
  explicit Receiver(const ReceiverParams& params = {});

  /// Feeds the next capture (in time order); returns a packet when one
  /// completes.
  std::optional<RxPacket> push(const CameraFrame& frame);

  const RegionOfInterest& roi() const { return roi_; }

  /// Demod trace hook (CSV export, debugging).
  void set_trace(std::function<void(const DemodFrame&)> fn) { trace_ = std::move(fn); }

 private:
  ReceiverParams params_;
  std::optional<CameraFrame> prev_;
  RegionOfInterest roi_;
  int lost_ = 0;
  SymbolAssembler assembler_;
  std::function<void(const DemodFrame&)> trace_;
};

/// Demod trace CSV: capture_time, byte, parity, reliable, 12 confidences.
void write_demod_trace_header(std::ostream& os);
void write_demod_trace_row(std::ostream& os, const DemodFrame& frame);

}  // namespace vlcp
