#include "vlcp/scene.hpp"

namespace vlcp {

std::optional<SceneState> step_motion(const SceneState& scene, TimeUs dt_us) {
  SceneState next = scene;
  next.distance = scene.distance - scene.speed_mps * us_to_seconds(dt_us);
  if (next.distance <= 0.0) return std::nullopt;
  return next;
}

}  // namespace vlcp
