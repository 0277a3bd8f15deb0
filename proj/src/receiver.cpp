#include "vlcp/receiver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>

namespace vlcp {

namespace {

struct Cluster {
  int c0 = 0;
  int c1 = 0;
  int mass = 0;
};

struct BarExtent {
  int c0 = 0, c1 = 0;  // columns, inclusive, rect-local
  int r0 = 0, r1 = 0;  // rows, inclusive, rect-local
};

// Locates the bar inside rect (x0,y0,w,h) by thresholding |curr - prev|.
// The threshold adapts to the observed noise floor so frame noise does not
// masquerade as blinking LEDs.
std::optional<BarExtent> find_bar_extent(const CameraFrame& prev,
                                         const CameraFrame& curr, int x0, int y0,
                                         int w, int h, const DetectParams& p) {
  using IntArray = Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const IntArray diff = (curr.pixels.block(y0, x0, h, w).cast<int>() -
                         prev.pixels.block(y0, x0, h, w).cast<int>())
                            .abs();

  // Noise floor from the median of |diff|; for half-normal data the median
  // is 0.6745 sigma. The bar occupies a small fraction of the rect, so the
  // median tracks the noise, not the signal.
  int thr = p.diff_threshold;
  {
    std::vector<int> sample;
    sample.reserve(static_cast<std::size_t>(w) * h / 9 + 8);
    for (int r = 0; r < h; r += 3) {
      for (int c = 0; c < w; c += 3) sample.push_back(diff(r, c));
    }
    if (sample.size() >= 16) {
      auto q = sample.begin() + static_cast<std::ptrdiff_t>(sample.size() / 2);
      std::nth_element(sample.begin(), q, sample.end());
      const double sigma_hat = static_cast<double>(*q) / 0.6745;
      thr = std::max(thr, static_cast<int>(std::ceil(3.5 * sigma_hat)));
    }
  }

  const IntArray hits = (diff >= thr).cast<int>();
  const Eigen::VectorXi col_hits = hits.colwise().sum().matrix().transpose();

  // Column clusters separated by more than cluster_gap empty columns.
  std::vector<Cluster> clusters;
  int run_start = -1, run_mass = 0, silent = 0, run_end = -1;
  auto close_run = [&]() {
    if (run_start >= 0 && run_mass >= p.min_cluster_mass) {
      clusters.push_back({run_start, run_end, run_mass});
    }
    run_start = -1;
    run_mass = 0;
  };
  for (int c = 0; c < w; ++c) {
    if (col_hits[c] > 0) {
      if (run_start < 0) run_start = c;
      run_end = c;
      run_mass += col_hits[c];
      silent = 0;
    } else if (run_start >= 0 && ++silent > p.cluster_gap) {
      close_run();
    }
  }
  close_run();
  if (clusters.empty()) return std::nullopt;

  BarExtent ext;
  ext.c0 = clusters.front().c0;
  ext.c1 = clusters.back().c1;

  // Row extent over the bar columns; require two hits to ignore strays.
  const Eigen::VectorXi row_hits =
      hits.middleCols(ext.c0, ext.c1 - ext.c0 + 1).rowwise().sum();
  int r0 = -1, r1 = -1;
  for (int r = 0; r < h; ++r) {
    if (row_hits[r] >= 2) {
      if (r0 < 0) r0 = r;
      r1 = r;
    }
  }
  if (r0 < 0) return std::nullopt;
  ext.r0 = r0;
  ext.r1 = r1;

  const int width = ext.c1 - ext.c0 + 1;
  const int height = ext.r1 - ext.r0 + 1;
  if (width < p.min_width) return std::nullopt;
  if (static_cast<double>(width) < p.min_aspect * height) return std::nullopt;
  return ext;
}

RegionOfInterest roi_from_extent(const BarExtent& ext, int x0, int y0,
                                 int img_w, int img_h) {
  RegionOfInterest roi;
  roi.bar_x0 = x0 + ext.c0 - 0.5;
  roi.bar_x1 = x0 + ext.c1 + 0.5;
  roi.bar_y0 = y0 + ext.r0 - 0.5;
  roi.bar_y1 = y0 + ext.r1 + 0.5;

  const double mx = kRoiMargin / 2 * (roi.bar_x1 - roi.bar_x0) + 2.0;
  const double my = kRoiMargin / 2 * (roi.bar_y1 - roi.bar_y0) + 2.0;
  const int ex0 = std::max(0, static_cast<int>(std::floor(roi.bar_x0 - mx)));
  const int ex1 = std::min(img_w, static_cast<int>(std::ceil(roi.bar_x1 + mx)));
  const int ey0 = std::max(0, static_cast<int>(std::floor(roi.bar_y0 - my)));
  const int ey1 = std::min(img_h, static_cast<int>(std::ceil(roi.bar_y1 + my)));
  roi.x0 = ex0;
  roi.y0 = ey0;
  roi.width = ex1 - ex0;
  roi.height = ey1 - ey0;
  roi.valid = roi.width > 0 && roi.height > 0;
  return roi;
}

}  // namespace

RegionOfInterest detect_bar(const CameraFrame& prev, const CameraFrame& curr,
                            const DetectParams& params) {
  const int w = curr.width(), h = curr.height();
  if (prev.width() != w || prev.height() != h) return {};
  auto ext = find_bar_extent(prev, curr, 0, 0, w, h, params);
  if (!ext) return {};
  return roi_from_extent(*ext, 0, 0, w, h);
}

RegionOfInterest track_roi(const RegionOfInterest& roi, const CameraFrame& prev,
                           const CameraFrame& curr, const DetectParams& params) {
  if (!roi.valid) return {};
  const int w = curr.width(), h = curr.height();
  const int x0 = std::clamp(roi.x0, 0, w - 1);
  const int y0 = std::clamp(roi.y0, 0, h - 1);
  const int rw = std::min(roi.width, w - x0);
  const int rh = std::min(roi.height, h - y0);
  if (rw <= 0 || rh <= 0) return {};
  auto ext = find_bar_extent(prev, curr, x0, y0, rw, rh, params);
  if (!ext) return {};
  return roi_from_extent(*ext, x0, y0, w, h);
}

namespace {

float window_mean(const CameraFrame& frame, int c0, int c1, int r0, int r1) {
  return frame.pixels.block(r0, c0, r1 - r0 + 1, c1 - c0 + 1).cast<float>().mean();
}

}  // namespace

DemodFrame demod_frame(const CameraFrame& frame, const RegionOfInterest& roi,
                       const DemodParams& params) {
  DemodFrame out;
  out.capture_time = frame.capture_time;
  if (!roi.valid) return out;

  const int w = frame.width(), h = frame.height();
  const int r0 = std::clamp(static_cast<int>(std::lround(roi.bar_y0 + 0.5)), 0, h - 1);
  const int r1 = std::clamp(static_cast<int>(std::lround(roi.bar_y1 - 0.5)), r0, h - 1);

  const double bar_w = roi.bar_x1 - roi.bar_x0;
  const double bw = bar_w / kBlockCount;
  std::array<float, kBlockCount> mean{};
  for (int b = 0; b < kBlockCount; ++b) {
    const double left = roi.bar_x0 + b * bw + params.window_inset * bw;
    const double right = roi.bar_x0 + (b + 1) * bw - params.window_inset * bw;
    int c0 = static_cast<int>(std::lround(left));
    int c1 = static_cast<int>(std::lround(right)) - 1;
    if (c1 < c0) c0 = c1 = static_cast<int>(std::lround((left + right) / 2 - 0.5));
    c0 = std::clamp(c0, 0, w - 1);
    c1 = std::clamp(c1, c0, w - 1);
    mean[static_cast<std::size_t>(b)] = window_mean(frame, c0, c1, r0, r1);
  }

  const float pair_a = (mean[0] + mean[kBlockCount - 1]) / 2.f;  // blocks 0, 11
  const float pair_b = (mean[1] + mean[kBlockCount - 2]) / 2.f;  // blocks 1, 10
  const float on_ref = std::max(pair_a, pair_b);
  const float off_ref = std::min(pair_a, pair_b);
  const float contrast = on_ref - off_ref;
  const float threshold = (on_ref + off_ref) / 2.f;
  const float half_gap = contrast / 2.f;

  out.symbol_parity = pair_a >= pair_b ? 0 : 1;
  out.reliable = contrast >= static_cast<float>(params.contrast_floor);

  std::uint8_t byte = 0;
  float min_conf = 1.f;
  for (int b = 0; b < kBlockCount; ++b) {
    const float margin = std::abs(mean[static_cast<std::size_t>(b)] - threshold);
    const float conf =
        half_gap > 0.f ? std::clamp(margin / half_gap, 0.f, 1.f) : 0.f;
    out.confidence[static_cast<std::size_t>(b)] = conf;
    if (b >= kDataBlockFirst && b < kDataBlockFirst + kDataBlockCount) {
      const bool bit = mean[static_cast<std::size_t>(b)] > threshold;
      byte = static_cast<std::uint8_t>((byte << 1) | (bit ? 1 : 0));
      min_conf = std::min(min_conf, conf);
    }
  }
  out.byte_value = byte;
  out.min_confidence = min_conf;
  return out;
}

SymbolAssembler::SymbolAssembler(const AssembleParams& params) : params_(params) {}

void SymbolAssembler::reset() {
  run_parity_ = -1;
  run_length_ = 0;
  collecting_ = false;
  idle_seen_ = false;
  bytes_.clear();
}

std::optional<RxPacket> SymbolAssembler::handle_symbol(const DemodFrame& symbol,
                                                       TimeUs run_start,
                                                       TimeUs close_time) {
  const std::uint8_t byte = symbol.byte_value;
  if (collecting_) {
    if (bytes_.empty()) first_frame_time_ = run_start;
    bytes_.push_back(byte);
    if (static_cast<int>(bytes_.size()) == params_.n_frame) {
      RxPacket pkt;
      pkt.payload_bits = BitVec::from_bytes(bytes_, bytes_.size() * 8);
      pkt.first_frame_time = first_frame_time_;
      pkt.demod_complete_time = close_time;
      pkt.frame_count = params_.n_frame;
      collecting_ = false;
      idle_seen_ = false;
      bytes_.clear();
      return pkt;
    }
    return std::nullopt;
  }
  if (idle_seen_ && byte == 0xFF) {
    collecting_ = true;
    bytes_.clear();
    idle_seen_ = false;
    return std::nullopt;
  }
  idle_seen_ = byte == 0x00;
  return std::nullopt;
}

std::optional<RxPacket> SymbolAssembler::push(const DemodFrame& frame) {
  if (!frame.reliable) return std::nullopt;

  if (run_parity_ == frame.symbol_parity) {
    ++run_length_;
    if (run_length_ > params_.captures_per_symbol + 1) {
      // Symbol-clock slip: the parity stopped alternating (e.g. dropped
      // frames hid a toggle). Discard any partial packet and resynchronize.
      collecting_ = false;
      idle_seen_ = false;
      bytes_.clear();
      return std::nullopt;
    }
    if (frame.min_confidence > run_best_.min_confidence) run_best_ = frame;
    return std::nullopt;
  }

  std::optional<RxPacket> out;
  if (run_parity_ >= 0) {
    // The previous run is a finished symbol, closed by this capture.
    out = handle_symbol(run_best_, run_start_time_, frame.capture_time);
  }
  run_parity_ = frame.symbol_parity;
  run_length_ = 1;
  run_best_ = frame;
  run_start_time_ = frame.capture_time;
  return out;
}

std::optional<RxPacket> assemble_packet(const std::vector<DemodFrame>& stream,
                                        const AssembleParams& params) {
  SymbolAssembler assembler(params);
  for (const DemodFrame& f : stream) {
    if (auto pkt = assembler.push(f)) return pkt;
  }
  return std::nullopt;
}

Receiver::Receiver(const ReceiverParams& params)
    : params_(params), assembler_(params.assemble) {}

std::optional<RxPacket> Receiver::push(const CameraFrame& frame) {
  std::optional<RxPacket> out;
  if (prev_) {
    if (roi_.valid) {
      RegionOfInterest updated = track_roi(roi_, *prev_, frame, params_.detect);
      if (updated.valid) {
        roi_ = updated;
        lost_ = 0;
      } else if (++lost_ > params_.roi_loss_limit) {
        // Tracking signals gone; fall back to full-image acquisition.
        roi_ = RegionOfInterest{};
        assembler_.reset();
        lost_ = 0;
      }
    }
    if (!roi_.valid) {
      roi_ = detect_bar(*prev_, frame, params_.detect);
      if (roi_.valid) lost_ = 0;
    }
  }

  if (roi_.valid) {
    DemodFrame d = demod_frame(frame, roi_, params_.demod);
    if (trace_) trace_(d);
    out = assembler_.push(d);
  }
  prev_ = frame;
  return out;
}

void write_demod_trace_header(std::ostream& os) {
  os << "capture_time_s,byte,parity,reliable";
  for (int b = 0; b < kBlockCount; ++b) os << ",conf" << b;
  os << '\n';
}

void write_demod_trace_row(std::ostream& os, const DemodFrame& f) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", us_to_seconds(f.capture_time));
  os << buf << ',' << static_cast<int>(f.byte_value) << ',' << f.symbol_parity
     << ',' << (f.reliable ? 1 : 0);
  for (int b = 0; b < kBlockCount; ++b) {
    std::snprintf(buf, sizeof(buf), ",%.4f",
                  static_cast<double>(f.confidence[static_cast<std::size_t>(b)]));
    os << buf;
  }
  os << '\n';
}

}  // namespace vlcp
