#include "wallfollow/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wallfollow::matcher {

MatchResult findMatch(const spline::Trajectory& trajectory, const Eigen::Vector2d& point,
                      std::optional<std::size_t> previous, std::size_t window) {
  const std::size_t n = trajectory.points.size();
  if (n == 0) throw std::invalid_argument("cannot match against an empty trajectory");

  std::size_t begin = 0;
  std::size_t end = n - 1;
  if (previous) {
    if (*previous >= n) throw std::invalid_argument("previous match index out of range");
    begin = *previous;
    end = std::min(n - 1, *previous + window);
  }

  std::size_t best = begin;
  double best_d2 = (trajectory.points[begin].position - point).squaredNorm();
  for (std::size_t i = begin + 1; i <= end; ++i) {
    const double d2 = (trajectory.points[i].position - point).squaredNorm();
    if (d2 < best_d2) {
      best = i;
      best_d2 = d2;
    }
  }

  const spline::TrajectoryPoint& tp = trajectory.points[best];
  MatchResult match;
  match.index = best;
  match.ref_pose = {tp.position.x(), tp.position.y(), tp.heading};
  match.ref_curvature = tp.curvature;
  match.distance = std::sqrt(best_d2);
  return match;
}

Twist feedforward(const MatchResult& match, const FeedforwardConfig& cfg) {
  return {cfg.v_ref, cfg.alpha * match.ref_curvature};
}

}  // namespace wallfollow::matcher
