#include <doctest.h>

#include <cmath>

#include "vlcp/channel.hpp"

using namespace vlcp;

namespace {

CameraModel outdoor_camera() {
  CameraModel cam;
  cam.focal_length = 100e-3;
  cam.frame_rate_cam = 1000.0;
  return cam;
}

SceneState outdoor_scene(double distance) {
  SceneState scene;
  scene.distance = distance;
  scene.noise_sigma = 0.0;
  return scene;
}

}  // namespace

TEST_CASE("pinhole projection spacing") {
  SUBCASE("100 mm focal, 10 mm pitch, 100 m, 10 um pixels: 1 px per LED") {
    const auto scene = outdoor_scene(100.0);
    const auto cam = outdoor_camera();
    CHECK(led_spacing_px(scene, cam) == doctest::Approx(1.0));
    const auto fps = project_bar(scene, cam);
    REQUIRE(fps.size() == 96);
    CHECK(fps.back().cx - fps.front().cx == doctest::Approx(95.0));
  }
  SUBCASE("halving the distance doubles the spacing") {
    const auto cam = outdoor_camera();
    CHECK(led_spacing_px(outdoor_scene(50.0), cam) ==
          doctest::Approx(2.0 * led_spacing_px(outdoor_scene(100.0), cam)));
  }
  SUBCASE("12.5 mm focal at 5 m: 2.5 px per LED") {
    CameraModel cam;
    cam.focal_length = 12.5e-3;
    CHECK(led_spacing_px(outdoor_scene(5.0), cam) == doctest::Approx(2.5));
  }
}

TEST_CASE("bar fully outside the view yields an empty footprint list") {
  auto scene = outdoor_scene(100.0);
  scene.lateral_offset = 10.0;  // projects ~10000 px off-center
  CHECK(project_bar(scene, outdoor_camera()).empty());
}

TEST_CASE("partially visible bar culls only the hidden LEDs") {
  auto scene = outdoor_scene(10.0);  // 9.6 px spacing: span ~912 px > 600
  const auto fps = project_bar(scene, outdoor_camera());
  CHECK(fps.size() < 96);
  CHECK(fps.size() > 0);
}

TEST_CASE("dark frame is uniform ambient") {
  const auto scene = outdoor_scene(100.0);
  const auto cam = outdoor_camera();
  LedBarState bar;  // all off
  const CameraFrame f = render_frame(bar, scene, cam, 0);
  CHECK((f.pixels == static_cast<std::uint8_t>(60)).all());
}

TEST_CASE("noise-free signal is local to the footprints") {
  const auto scene = outdoor_scene(100.0);
  const auto cam = outdoor_camera();
  LedBarState bar;
  bar.set_block(5, true);
  const CameraFrame f = render_frame(bar, scene, cam, 0);

  // Corners are far from every footprint.
  CHECK(f.pixels(0, 0) == 60);
  CHECK(f.pixels(cam.height - 1, cam.width - 1) == 60);

  // The lit block's center pixel rises above ambient.
  const auto fps = project_bar(scene, cam);
  const auto& center_led = fps[5 * kLedsPerBlock + 4];
  CHECK(f.pixels(static_cast<int>(std::lround(center_led.cy)),
                 static_cast<int>(std::lround(center_led.cx))) > 60);
}

TEST_CASE("same seed and time give bit-identical frames") {
  auto scene = outdoor_scene(100.0);
  scene.noise_sigma = 12.0;
  scene.rng_seed = 77;
  const auto cam = outdoor_camera();
  LedBarState bar = frame_to_ledbar(0xA5, 0);
  const CameraFrame a = render_frame(bar, scene, cam, 4242);
  const CameraFrame b = render_frame(bar, scene, cam, 4242);
  CHECK((a.pixels == b.pixels).all());

  const CameraFrame c = render_frame(bar, scene, cam, 4243);
  CHECK_FALSE((a.pixels == c.pixels).all());
}

TEST_CASE("radiometric monotonicity: farther is never brighter") {
  const auto cam = outdoor_camera();
  LedBarState bar;
  for (int b = 0; b < kBlockCount; ++b) bar.set_block(b, true);
  CameraFrame prev;
  bool first = true;
  for (double d : {75.0, 100.0, 120.0, 140.0, 160.0}) {
    const CameraFrame f = render_frame(bar, outdoor_scene(d), cam, 0);
    if (!first) {
      // Compare the global maximum: the brightest footprint pixel must not
      // grow with distance.
      CHECK(static_cast<int>(f.pixels.maxCoeff()) <=
            static_cast<int>(prev.pixels.maxCoeff()));
    }
    prev = f;
    first = false;
  }
}

TEST_CASE("quantization clips to [0,255]") {
  auto scene = outdoor_scene(5.0);  // the full bar saturates up close
  CameraModel cam;
  cam.focal_length = 12.5e-3;
  scene.led_on_irradiance = 1e8;
  LedBarState bar;
  for (int b = 0; b < kBlockCount; ++b) bar.set_block(b, true);
  const CameraFrame f = render_frame(bar, scene, cam, 0);
  CHECK(static_cast<int>(f.pixels.maxCoeff()) == 255);
}

TEST_CASE("step_motion") {
  SUBCASE("25 m/s over 1 ms shortens the range by 0.025 m") {
    auto scene = outdoor_scene(100.0);
    scene.speed_mps = kmh_to_mps(90.0);
    CHECK(scene.speed_mps == doctest::Approx(25.0));
    const auto next = step_motion(scene, 1000);
    REQUIRE(next.has_value());
    CHECK(next->distance == doctest::Approx(99.975));
  }
  SUBCASE("zero speed leaves the scene unchanged") {
    const auto scene = outdoor_scene(42.0);
    const auto next = step_motion(scene, 123456);
    REQUIRE(next.has_value());
    CHECK(*next == scene);
  }
  SUBCASE("120 m to 100 m at 20 km/h takes 3.6 s") {
    auto scene = outdoor_scene(120.0);
    scene.speed_mps = kmh_to_mps(20.0);
    const auto next = step_motion(scene, seconds_to_us(3.6));
    REQUIRE(next.has_value());
    CHECK(next->distance == doctest::Approx(100.0));
  }
  SUBCASE("reaching the transmitter signals the end of the run") {
    auto scene = outdoor_scene(0.01);
    scene.speed_mps = 10.0;
    CHECK_FALSE(step_motion(scene, 1000000).has_value());
  }
}

TEST_CASE("sample_clock pairs captures with active LED states") {
  BitVec payload(53 * 8);
  const TxPacket packet = packetize(payload);

  SUBCASE("tx 500 Hz, cam 1000 fps: exactly 2 captures per frame") {
    const TxSchedule s = schedule(packet, 500.0, 0);
    CameraModel cam = outdoor_camera();
    const auto captures = sample_clock(cam, s);
    CHECK(captures.size() == 2 * s.frames.size());
    for (std::size_t i = 0; i < captures.size(); ++i) {
      CHECK(captures[i].second == s.frames[i / 2].bar);
    }
  }
  SUBCASE("tx 50 Hz, cam 100 fps: still 2 per frame") {
    const TxSchedule s = schedule(packet, 50.0, 0);
    CameraModel cam = outdoor_camera();
    cam.frame_rate_cam = 100.0;
    CHECK(sample_clock(cam, s).size() == 2 * s.frames.size());
  }
  SUBCASE("half-frame phase offset shifts capture times by 0.5 ms at 1000 fps") {
    const TxSchedule s = schedule(packet, 500.0, 0);
    CameraModel cam = outdoor_camera();
    const auto base = sample_clock(cam, s, 0);
    const auto shifted = sample_clock(cam, s, 500);
    REQUIRE(base.size() >= shifted.size());
    for (std::size_t i = 0; i < shifted.size(); ++i) {
      CHECK(shifted[i].first - base[i].first == 500);
    }
  }
}
