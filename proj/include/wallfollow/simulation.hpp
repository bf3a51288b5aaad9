#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wallfollow/metrics.hpp"
#include "wallfollow/scenario.hpp"
#include "wallfollow/snn.hpp"
#include "wallfollow/spline.hpp"

namespace wallfollow::harness {

struct RunOptions {
  bool snn_enabled = true;
  bool dump_spikes = false;
};

struct RunResult {
  std::vector<StepRecord> log;
  Metrics metrics;
  bool collided = false;
  double follow_start_s = 0.0;
  std::vector<snn::SpikeEvent> spikes_v;
  std::vector<snn::SpikeEvent> spikes_w;
};

// Runs the configured scenario to completion (tracking scenarios follow the
// configured reference; the wall-following scenario explores, scans, fits and
// follows). Fully deterministic for a given config.
RunResult runScenario(const ScenarioConfig& cfg, const RunOptions& options);

// Windowed selection, greedy downsampling and offset of one lidar scan into a
// reference trajectory. Returns nullopt when no usable fit exists at any
// retry spacing.
std::optional<spline::Trajectory> fitFollowTrajectory(const std::vector<Eigen::Vector2d>& scan,
                                                      const Pose& pose, const WallFollowSpec& spec);

}  // namespace wallfollow::harness
