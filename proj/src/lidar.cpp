#include "wallfollow/lidar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace wallfollow::harness {
namespace {

// Smallest positive t with origin + t dir on a wall line, or infinity.
double wallHit(const RoomSpec& room, const Eigen::Vector2d& o, const Eigen::Vector2d& dir) {
  const double half = room.side_m / 2.0;
  double best = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 2; ++axis) {
    if (std::abs(dir(axis)) < 1e-12) continue;
    for (const double bound : {-half, half}) {
      const double t = (bound - o(axis)) / dir(axis);
      if (t <= 1e-9) continue;
      const double other = o(1 - axis) + t * dir(1 - axis);
      if (std::abs(other) <= half + 1e-9) best = std::min(best, t);
    }
  }
  return best;
}

// Smallest positive t with origin + t dir on the cylinder surface.
double cylinderHit(const Cylinder& c, const Eigen::Vector2d& o, const Eigen::Vector2d& dir) {
  const Eigen::Vector2d rel = o - c.center;
  const double b = rel.dot(dir);
  const double disc = b * b - (rel.squaredNorm() - c.radius * c.radius);
  if (disc < 0.0) return std::numeric_limits<double>::infinity();
  const double root = std::sqrt(disc);
  for (const double t : {-b - root, -b + root}) {
    if (t > 1e-9) return t;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

bool insideRoom(const RoomSpec& room, const Eigen::Vector2d& p) {
  const double half = room.side_m / 2.0;
  return std::abs(p.x()) < half && std::abs(p.y()) < half;
}

double obstacleDistance(const RoomSpec& room, const Eigen::Vector2d& p) {
  const double half = room.side_m / 2.0;
  double dist = std::min(half - std::abs(p.x()), half - std::abs(p.y()));
  for (const Cylinder& c : room.cylinders) dist = std::min(dist, (p - c.center).norm() - c.radius);
  return dist;
}

double castRay(const RoomSpec& room, const Eigen::Vector2d& origin, double angle) {
  const Eigen::Vector2d dir(std::cos(angle), std::sin(angle));
  double t = wallHit(room, origin, dir);
  for (const Cylinder& c : room.cylinders) t = std::min(t, cylinderHit(c, origin, dir));
  return std::min(t, room.lidar.max_range_m);
}

std::vector<Eigen::Vector2d> raycastLidar(const RoomSpec& room, const Pose& pose) {
  const Eigen::Vector2d origin = position(pose);
  if (!insideRoom(room, origin)) throw std::invalid_argument("lidar pose outside the room");

  std::vector<Eigen::Vector2d> hits;
  hits.reserve(room.lidar.rays);
  for (int k = 0; k < room.lidar.rays; ++k) {
    const double rel = -std::numbers::pi + 2.0 * std::numbers::pi * k / room.lidar.rays;
    const double angle = pose.theta + rel;
    const Eigen::Vector2d dir(std::cos(angle), std::sin(angle));
    double t = wallHit(room, origin, dir);
    for (const Cylinder& c : room.cylinders) t = std::min(t, cylinderHit(c, origin, dir));
    if (t <= room.lidar.max_range_m) hits.push_back(origin + t * dir);
  }
  return hits;
}

}  // namespace wallfollow::harness
