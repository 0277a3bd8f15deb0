#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "vlcp/camera.hpp"
#include "vlcp/ledbar.hpp"
#include "vlcp/packet.hpp"
#include "vlcp/scene.hpp"

namespace vlcp {

/// Image-plane footprint of one LED: a separable Gaussian spot. The spot
/// width combines the optical point spread with the LED die's projected
/// extent, so a resolved emitter keeps constant surface brightness while its
/// image shrinks with distance.
struct LedFootprint {
  int led_index = 0;
  double cx = 0.0;       // pixel coordinates, pixel centers at integers
  double cy = 0.0;
  double sigma_x = 0.7;  // pixels
  double sigma_y = 0.7;
  double amplitude = 0.0;  // peak contribution in gray levels
};

/// Image-plane spacing of adjacent LEDs in pixels:
/// focal_length * led_pitch / distance / pixel_pitch.
double led_spacing_px(const SceneState& scene, const CameraModel& camera);

/// Projected horizontal center of the bar in pixel coordinates.
double bar_center_px(const SceneState& scene, const CameraModel& camera);

/// Pinhole projection of all 96 LEDs. LEDs whose 4-sigma support misses the
/// image are culled; a bar fully outside the view yields an empty list.
std::vector<LedFootprint> project_bar(const SceneState& scene,
                                      const CameraModel& camera);

// --- deterministic noise -----------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Standard normal variate from a counter. Counter-based generation keeps
/// every pixel's draw a pure function of (seed, capture time, pixel), so
/// frames are bit-identical however rendering is ordered or parallelized,
/// and noise scales linearly with sigma for matched-seed comparisons.
inline double hash_normal(std::uint64_t key) {
  const std::uint64_t h1 = splitmix64(key);
  const std::uint64_t h2 = splitmix64(h1 ^ 0xa3c59ac2b217101bULL);
  const double u1 = (static_cast<double>(h1 >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
  const double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;          // [0,1)
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline constexpr int kNoiseTile = 16;  // tile edge for the correlated term

/// Per-pixel additive noise: sigma * (sqrt(1-corr) * iid + sqrt(corr) * tile),
/// where the tile term is shared by each 16x16 pixel tile of a frame. The
/// correlated share models daylight shimmer that does not average out over a
/// demodulation window.
class NoiseField {
 public:
  NoiseField(const SceneState& scene, TimeUs t)
      : sigma_(scene.noise_sigma),
        w_iid_(std::sqrt(1.0 - scene.noise_corr)),
        w_tile_(std::sqrt(scene.noise_corr)),
        frame_key_(splitmix64(splitmix64(scene.rng_seed) ^
                              static_cast<std::uint64_t>(t))) {}

  double sigma() const { return sigma_; }

  double iid(int x, int y, int width) const {
    const std::uint64_t idx =
        static_cast<std::uint64_t>(y) * static_cast<std::uint64_t>(width) +
        static_cast<std::uint64_t>(x);
    return hash_normal(frame_key_ + idx);
  }

  double tile(int tile_x, int tile_y, int tiles_per_row) const {
    const std::uint64_t idx =
        static_cast<std::uint64_t>(tile_y) * static_cast<std::uint64_t>(tiles_per_row) +
        static_cast<std::uint64_t>(tile_x);
    return hash_normal((frame_key_ ^ 0x517cc1b727220a95ULL) + idx);
  }

  double weight_iid() const { return w_iid_; }
  double weight_tile() const { return w_tile_; }

 private:
  double sigma_;
  double w_iid_;
  double w_tile_;
  std::uint64_t frame_key_;
};

/// Restricts noise generation to rows [noise_y0, noise_y1); pixels outside
/// carry only ambient + signal. The experiment pipeline uses this to skip
/// noise in rows the receiver never reads.
struct RenderOptions {
  int noise_y0 = 0;
  int noise_y1 = std::numeric_limits<int>::max();
};

/// Renders one capture: ambient level, the on-LED Gaussian spots scaled by
/// inverse-square distance and the exposure/aperture factors, additive
/// Gaussian noise, then round-half-up quantization clipped to [0,255].
/// Deterministic given (scene.rng_seed, t).
CameraFrame render_frame(const LedBarState& bar, const SceneState& scene,
                         const CameraModel& camera, TimeUs t,
                         const RenderOptions& opts = {});

/// Uniform camera sampling of a transmit schedule. Capture k happens at
/// schedule.start_time + phase_offset_us + k / frame_rate_cam; each capture
/// pairs with the LED state active at that instant (frames hold their state
/// for one transmit period). At the nominal 2x rate ratio this yields exactly
/// two captures per transmitted symbol.
std::vector<std::pair<TimeUs, LedBarState>> sample_clock(
    const CameraModel& camera, const TxSchedule& sched,
    TimeUs phase_offset_us = 0);

}  // namespace vlcp
