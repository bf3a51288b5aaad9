#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wallfollow/types.hpp"

namespace wallfollow::harness {

struct Cylinder {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 0.0;
};

struct LidarSpec {
  int rays = 360;
  double max_range_m = 3.5;
};

// Square room centered on the origin with cylindrical obstacles inside.
struct RoomSpec {
  double side_m = 4.0;
  std::vector<Cylinder> cylinders;
  LidarSpec lidar;
};

bool insideRoom(const RoomSpec& room, const Eigen::Vector2d& p);

// Distance from p to the nearest obstacle surface (walls from the inside,
// cylinders from the outside). Negative inside a cylinder or beyond a wall.
double obstacleDistance(const RoomSpec& room, const Eigen::Vector2d& p);

// One full sweep: `rays` beams evenly spaced over 360 degrees starting at
// pose.theta - pi, each traced to the nearest wall or cylinder. Returns hit
// points in world coordinates, in beam order; beams beyond max range are
// omitted. The pose must be inside the room.
std::vector<Eigen::Vector2d> raycastLidar(const RoomSpec& room, const Pose& pose);

// Range along a single beam from origin in direction `angle` (world frame),
// or max_range_m when nothing is hit closer.
double castRay(const RoomSpec& room, const Eigen::Vector2d& origin, double angle);

}  // namespace wallfollow::harness
