#pragma once

#include <cstdint>
#include <optional>

#include "vlcp/packet.hpp"

namespace vlcp {

/// Geometry, radiometry and noise for one transmitter/camera arrangement.
///
/// led_on_irradiance is the total per-LED flux scale in gray*px^2 at 1 m
/// through the reference optics (1/2000 s shutter, F16); the paper gives no
/// radiometric data, so the absolute scale is a calibration parameter.
struct SceneState {
  double distance = 100.0;        // meters, camera to bar along the optical axis
  double lateral_offset = 0.0;    // meters
  double speed_mps = 0.0;         // approach speed, reduces distance over time
  double led_pitch = 10e-3;       // meters between adjacent LED centers
  double led_width = 8e-3;        // emitting die width, meters
  double led_height = 60e-3;      // emitting die height, meters
  double led_on_irradiance = 6e6; // gray*px^2 at 1 m, reference optics
  double ambient_level = 60.0;    // daylight DC offset, gray levels
  double noise_sigma = 0.0;       // per-pixel additive Gaussian sigma, gray
  double noise_corr = 0.6;        // fraction of noise variance shared per tile
  double blur_sigma = 0.7;        // optical point-spread sigma, pixels
  std::uint64_t rng_seed = 1;

  bool operator==(const SceneState&) const = default;
};

/// Advances the approach by dt. Returns nullopt when the vehicle would reach
/// or pass the transmitter (simulation end).
std::optional<SceneState> step_motion(const SceneState& scene, TimeUs dt_us);

inline double kmh_to_mps(double kmh) { return kmh / 3.6; }

}  // namespace vlcp
