#include "vlcp/channel.hpp"

#include <algorithm>
#include <cassert>

namespace vlcp {

namespace {

constexpr double kFwhmToSigma = 2.354820045030949;  // FWHM / sigma for a Gaussian
constexpr double kRefExposure = 1.0 / 2000;
constexpr double kRefFNumber = 16.0;
constexpr double kSupportSigmas = 4.0;

}  // namespace

double led_spacing_px(const SceneState& scene, const CameraModel& camera) {
  return camera.focal_length * scene.led_pitch / scene.distance /
         camera.pixel_pitch;
}

double bar_center_px(const SceneState& scene, const CameraModel& camera) {
  const double center = (camera.width - 1) / 2.0;
  return center + camera.focal_length * scene.lateral_offset / scene.distance /
                      camera.pixel_pitch;
}

std::vector<LedFootprint> project_bar(const SceneState& scene,
                                      const CameraModel& camera) {
  assert(scene.distance > 0);
  const double magnification_px =
      camera.focal_length / scene.distance / camera.pixel_pitch;  // px per meter
  const double spacing = led_spacing_px(scene, camera);
  const double cx0 = bar_center_px(scene, camera);
  const double cy = (camera.height - 1) / 2.0;

  const double sigma_x = std::hypot(scene.blur_sigma,
                                    scene.led_width * magnification_px / kFwhmToSigma);
  const double sigma_y = std::hypot(scene.blur_sigma,
                                    scene.led_height * magnification_px / kFwhmToSigma);

  const double flux = scene.led_on_irradiance / (scene.distance * scene.distance) *
                      (camera.exposure / kRefExposure) *
                      (kRefFNumber / camera.f_number) * (kRefFNumber / camera.f_number);
  const double amplitude = flux / (2.0 * M_PI * sigma_x * sigma_y);

  std::vector<LedFootprint> footprints;
  footprints.reserve(kLedCount);
  for (int i = 0; i < kLedCount; ++i) {
    LedFootprint fp;
    fp.led_index = i;
    fp.cx = cx0 + (i - (kLedCount - 1) / 2.0) * spacing;
    fp.cy = cy;
    fp.sigma_x = sigma_x;
    fp.sigma_y = sigma_y;
    fp.amplitude = amplitude;
    const bool visible = fp.cx + kSupportSigmas * sigma_x > -0.5 &&
                         fp.cx - kSupportSigmas * sigma_x < camera.width - 0.5 &&
                         fp.cy + kSupportSigmas * sigma_y > -0.5 &&
                         fp.cy - kSupportSigmas * sigma_y < camera.height - 0.5;
    if (visible) footprints.push_back(fp);
  }
  return footprints;
}

namespace {

void stamp_spot(FloatImage& acc, const LedFootprint& fp) {
  const int w = static_cast<int>(acc.cols());
  const int h = static_cast<int>(acc.rows());
  const int x0 = std::max(0, static_cast<int>(std::floor(fp.cx - kSupportSigmas * fp.sigma_x)));
  const int x1 = std::min(w - 1, static_cast<int>(std::ceil(fp.cx + kSupportSigmas * fp.sigma_x)));
  const int y0 = std::max(0, static_cast<int>(std::floor(fp.cy - kSupportSigmas * fp.sigma_y)));
  const int y1 = std::min(h - 1, static_cast<int>(std::ceil(fp.cy + kSupportSigmas * fp.sigma_y)));
  if (x1 < x0 || y1 < y0) return;

  const int nx = x1 - x0 + 1;
  const int ny = y1 - y0 + 1;
  Eigen::VectorXf wx(nx), wy(ny);
  const double inv2sx = 1.0 / (2.0 * fp.sigma_x * fp.sigma_x);
  const double inv2sy = 1.0 / (2.0 * fp.sigma_y * fp.sigma_y);
  for (int j = 0; j < nx; ++j) {
    const double dx = (x0 + j) - fp.cx;
    wx[j] = static_cast<float>(std::exp(-dx * dx * inv2sx));
  }
  for (int i = 0; i < ny; ++i) {
    const double dy = (y0 + i) - fp.cy;
    wy[i] = static_cast<float>(std::exp(-dy * dy * inv2sy));
  }
  acc.block(y0, x0, ny, nx) +=
      static_cast<float>(fp.amplitude) * (wy * wx.transpose()).array();
}

}  // namespace

CameraFrame render_frame(const LedBarState& bar, const SceneState& scene,
                         const CameraModel& camera, TimeUs t,
                         const RenderOptions& opts) {
  FloatImage acc(camera.height, camera.width);
  acc.setConstant(static_cast<float>(scene.ambient_level));

  for (const LedFootprint& fp : project_bar(scene, camera)) {
    if (bar.led(fp.led_index)) stamp_spot(acc, fp);
  }

  if (scene.noise_sigma > 0.0) {
    const NoiseField noise(scene, t);
    const int y0 = std::max(0, opts.noise_y0);
    const int y1 = std::min(camera.height, opts.noise_y1);
    const int tiles_per_row = (camera.width + kNoiseTile - 1) / kNoiseTile;
    const double s_iid = noise.sigma() * noise.weight_iid();
    const double s_tile = noise.sigma() * noise.weight_tile();
    for (int y = y0; y < y1; ++y) {
      float* row = acc.data() + static_cast<std::ptrdiff_t>(y) * camera.width;
      const int tile_y = y / kNoiseTile;
      double tile_val = 0.0;
      int cur_tile = -1;
      for (int x = 0; x < camera.width; ++x) {
        const int tile_x = x / kNoiseTile;
        if (tile_x != cur_tile) {
          cur_tile = tile_x;
          tile_val = s_tile * noise.tile(tile_x, tile_y, tiles_per_row);
        }
        row[x] += static_cast<float>(s_iid * noise.iid(x, y, camera.width) + tile_val);
      }
    }
  }

  CameraFrame frame;
  frame.capture_time = t;
  // round half up, then clip to the 8-bit range
  frame.pixels = (acc + 0.5f).floor().max(0.f).min(255.f).cast<std::uint8_t>();
  return frame;
}

std::vector<std::pair<TimeUs, LedBarState>> sample_clock(
    const CameraModel& camera, const TxSchedule& sched, TimeUs phase_offset_us) {
  std::vector<std::pair<TimeUs, LedBarState>> captures;
  const TimeUs period = camera.period_us();
  for (TimeUs t = sched.start_time + phase_offset_us; t < sched.end_time();
       t += period) {
    if (const LedBarState* state = sched.state_at(t)) {
      captures.emplace_back(t, *state);
    }
  }
  return captures;
}

}  // namespace vlcp
