#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "vlcp/packet.hpp"

namespace vlcp {

/// 8-bit grayscale image, row-major so image rows are contiguous.
using PixelArray =
    Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using FloatImage =
    Eigen::Array<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct CameraModel {
  int width = 600;
  int height = 320;
  double pixel_pitch = 10e-6;      // meters
  double focal_length = 100e-3;    // meters (12.5 mm indoor, 100 mm outdoor)
  double f_number = 16.0;
  double exposure = 1.0 / 2000;    // seconds
  double frame_rate_cam = 1000.0;  // fps

  TimeUs period_us() const {
    return static_cast<TimeUs>(kUsPerSec / frame_rate_cam + 0.5);
  }
};

struct CameraFrame {
  PixelArray pixels;  // (height, width)
  TimeUs capture_time = 0;

  int width() const { return static_cast<int>(pixels.cols()); }
  int height() const { return static_cast<int>(pixels.rows()); }
};

/// Binary PGM (P5), maxval 255.
void write_pgm(std::ostream& os, const CameraFrame& frame);
void write_pgm_file(const std::string& path, const CameraFrame& frame);

}  // namespace vlcp
