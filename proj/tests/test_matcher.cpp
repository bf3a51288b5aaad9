#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include <wallfollow/matcher.hpp>
#include <wallfollow/spline.hpp>

namespace matcher = wallfollow::matcher;
namespace spline = wallfollow::spline;

namespace {

spline::Trajectory gridLine(int n, double dx) {
  spline::Trajectory traj;
  for (int i = 0; i < n; ++i) {
    spline::TrajectoryPoint p;
    p.parameter = double(i) / double(n - 1);
    p.position = Eigen::Vector2d(i * dx, 1.0);
    p.heading = 0.0;
    p.curvature = 0.02 * i;
    traj.points.push_back(p);
  }
  return traj;
}

}  // namespace

TEST_CASE("nearest point on a sampled line") {
  const spline::Trajectory traj = gridLine(11, 0.1);

  const matcher::MatchResult near = matcher::findMatch(traj, {0.23, 1.3}, std::nullopt, 50);
  CHECK(near.index == 2);
  CHECK(near.ref_pose.x == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(near.ref_pose.y == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(near.distance == doctest::Approx(std::hypot(0.03, 0.3)).epsilon(1e-12));

  const matcher::MatchResult exact = matcher::findMatch(traj, {0.5, 1.0}, std::nullopt, 50);
  CHECK(exact.index == 5);
  CHECK(exact.distance == doctest::Approx(0.0));

  // Equidistant neighbours resolve to the smaller index.
  const matcher::MatchResult tie = matcher::findMatch(traj, {0.25, 0.0}, std::nullopt, 50);
  CHECK(tie.index == 2);

  CHECK_THROWS_AS(matcher::findMatch(spline::Trajectory{}, {0.0, 0.0}, std::nullopt, 50),
                  std::invalid_argument);
}

TEST_CASE("windowed search stays monotone and matches exhaustive search") {
  const spline::Trajectory traj = gridLine(200, 0.05);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);

  std::optional<std::size_t> prev;
  double along = 0.0;
  std::size_t last_index = 0;
  for (int step = 0; step < 150; ++step) {
    along += 0.04;
    const Eigen::Vector2d p(along + jitter(rng) * 0.05, 1.0 + jitter(rng));
    const matcher::MatchResult m = matcher::findMatch(traj, p, prev, 50);

    // Exhaustive minimum over the same admissible window.
    const std::size_t lo = prev.value_or(0);
    const std::size_t hi = std::min(traj.points.size() - 1, lo + 50);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = lo;
    for (std::size_t i = lo; i <= hi; ++i) {
      const double d = (traj.points[i].position - p).norm();
      if (d < best) {
        best = d;
        best_i = i;
      }
    }
    CHECK(m.index == best_i);
    CHECK(m.index >= last_index);
    last_index = m.index;
    prev = m.index;
  }
  CHECK(last_index > 100);

  CHECK_THROWS_AS(matcher::findMatch(traj, {0.0, 0.0}, traj.points.size(), 50),
                  std::invalid_argument);
}

TEST_CASE("feedforward turns with the matched curvature") {
  matcher::MatchResult straight;
  straight.ref_curvature = 0.0;
  matcher::FeedforwardConfig cfg;
  const wallfollow::Twist u0 = matcher::feedforward(straight, cfg);
  CHECK(u0.v == 1.0);
  CHECK(u0.omega == 0.0);

  matcher::MatchResult bend;
  bend.ref_curvature = 1.0;
  const wallfollow::Twist u1 = matcher::feedforward(bend, cfg);
  CHECK(u1.v == 1.0);
  CHECK(u1.omega == doctest::Approx(0.06).epsilon(1e-12));

  cfg.alpha = 0.0;
  CHECK(matcher::feedforward(bend, cfg).omega == 0.0);

  // Linear in curvature with slope alpha.
  cfg.alpha = 0.06;
  matcher::MatchResult sharp;
  sharp.ref_curvature = -2.5;
  const wallfollow::Twist u2 = matcher::feedforward(sharp, cfg);
  CHECK(u2.omega == doctest::Approx(-2.5 * 0.06).epsilon(1e-12));
}
