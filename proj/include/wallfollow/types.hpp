#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace wallfollow {

// Wraps an angle to (-pi, pi].
inline double wrapAngle(double angle) {
  double r = std::remainder(angle, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

// Planar pose. theta in radians, counterclockwise from +x.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

// Body-frame velocity command: forward speed and yaw rate.
struct Twist {
  double v = 0.0;
  double omega = 0.0;
};

inline Eigen::Vector2d position(const Pose& p) { return {p.x, p.y}; }

}  // namespace wallfollow
