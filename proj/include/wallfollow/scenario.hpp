#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wallfollow/controller.hpp"
#include "wallfollow/lidar.hpp"
#include "wallfollow/spline.hpp"
#include "wallfollow/types.hpp"
#include "wallfollow/vehicle.hpp"

namespace wallfollow::harness {

enum class ScenarioKind { kLineTracking, kSinusoidTracking, kWallFollowing };

struct ReferenceSpec {
  enum class Type { kLine, kSinusoid };
  Type type = Type::kLine;
  double y = 0.0;
  double x_start = 0.0;
  double x_end = 1.0;
  int samples = 2;
};

struct WallFollowSpec {
  double offset_m = 0.18;
  spline::OffsetSide side = spline::OffsetSide::kLeft;
  double arc_min_rad = 0.0;
  double arc_max_rad = 0.0;
  double fit_max_range_m = 2.2;
  double spacing_m = 0.35;
  double spacing_growth = 1.5;
  int max_retries = 5;
  int samples = 400;
  double explore_speed_m_s = 0.4;
  double explore_trigger_m = 1.0;
  double robot_radius_m = 0.1;
  double settle_s = 5.0;
};

struct MetricsSpec {
  double e_p_threshold_m = 0.05;
  double e_theta_threshold_rad = 0.05;
  double window_start_s = 0.0;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::kLineTracking;
  double duration_s = 0.0;
  double dt_s = 0.05;
  int plant_substeps = 10;
  double wheel_base_m = 0.3;
  double omega_max_rad_s = 1.0;
  Pose start_pose;
  vehicle::DisturbanceConfig disturbance;
  lqr::LqrWeights weights;
  lqr::DareOptions dare;
  matcher::FeedforwardConfig feedforward;
  control::SnnOptions snn;
  std::optional<ReferenceSpec> reference;
  std::optional<RoomSpec> room;
  std::optional<WallFollowSpec> wallfollow;
  MetricsSpec metrics;
};

// Parses and validates a scenario file. The format mirrors ScenarioConfig;
// unknown or missing keys and out-of-range values are rejected.
ScenarioConfig loadScenario(const std::string& path);

// Derives all random seeds from one base: noise_seed = seed,
// snn seeds = seed + 1000 and seed + 2000.
void applySeedOverride(ScenarioConfig& cfg, std::uint64_t seed);

control::ControllerConfig makeControllerConfig(const ScenarioConfig& cfg, bool snn_enabled);

}  // namespace wallfollow::harness
