#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "wallfollow/spline.hpp"
#include "wallfollow/types.hpp"

namespace wallfollow::matcher {

struct MatchResult {
  std::size_t index = 0;
  Pose ref_pose;
  double ref_curvature = 0.0;
  double distance = 0.0;
};

struct FeedforwardConfig {
  double v_ref = 1.0;
  double alpha = 0.06;
  std::size_t search_window = 50;
};

// Nearest trajectory point to `point`. Without a previous index the whole
// trajectory is scanned; with one, only [previous, previous + window], which
// keeps the match monotone along the path. Ties resolve to the smaller index.
MatchResult findMatch(const spline::Trajectory& trajectory, const Eigen::Vector2d& point,
                      std::optional<std::size_t> previous, std::size_t window);

// Feedforward command (v_ref, alpha * curvature) for the matched point.
Twist feedforward(const MatchResult& match, const FeedforwardConfig& cfg);

}  // namespace wallfollow::matcher
