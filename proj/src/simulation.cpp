#include "wallfollow/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "wallfollow/controller.hpp"
#include "wallfollow/reference.hpp"
#include "wallfollow/vehicle.hpp"

namespace wallfollow::harness {
namespace {

StepRecord makeRecord(double t, const Pose& true_pose, const Pose& measured,
                      const control::ControlBreakdown& bd) {
  StepRecord r;
  r.t = t;
  r.true_pose = true_pose;
  r.measured = measured;
  r.match_index = static_cast<long long>(bd.match.index);
  r.e_p = bd.errors.e_p;
  r.e_theta = bd.errors.e_theta;
  r.u_lqr = bd.u_lqr;
  r.u_ff = bd.u_ff;
  r.u_adaptive = bd.u_adaptive;
  r.u_total = bd.u_total;
  return r;
}

void drainSpikes(control::Controller& controller, RunResult& result) {
  result.spikes_v = std::move(controller.populationV().raster);
  result.spikes_w = std::move(controller.populationW().raster);
}

RunResult runTracking(const ScenarioConfig& cfg, const RunOptions& options) {
  const spline::Trajectory reference = buildReference(*cfg.reference);
  control::Controller controller(makeControllerConfig(cfg, options.snn_enabled));
  controller.populationV().record_spikes = options.dump_spikes;
  controller.populationW().record_spikes = options.dump_spikes;

  std::mt19937_64 rng(cfg.disturbance.noise_seed);
  Pose pose = cfg.start_pose;
  const int steps = static_cast<int>(std::lround(cfg.duration_s / cfg.dt_s));

  RunResult result;
  result.log.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    const double t = k * cfg.dt_s;
    const Pose measured = vehicle::sense(pose, cfg.disturbance, rng);
    const control::ControlBreakdown bd = controller.step(measured, reference);
    result.log.push_back(makeRecord(t, pose, measured, bd));
    const Twist applied = vehicle::applyDisturbance(bd.u_total, cfg.disturbance);
    pose = vehicle::step(pose, applied, cfg.dt_s, cfg.plant_substeps);
  }

  result.metrics = summarizeTracking(result.log, reference, cfg.metrics);
  drainSpikes(controller, result);
  return result;
}

RunResult runWallFollow(const ScenarioConfig& cfg, const RunOptions& options) {
  const RoomSpec& room = *cfg.room;
  const WallFollowSpec& wf = *cfg.wallfollow;
  control::Controller controller(makeControllerConfig(cfg, options.snn_enabled));
  controller.populationV().record_spikes = options.dump_spikes;
  controller.populationW().record_spikes = options.dump_spikes;

  std::mt19937_64 rng(cfg.disturbance.noise_seed);
  Pose pose = cfg.start_pose;
  const int steps = static_cast<int>(std::lround(cfg.duration_s / cfg.dt_s));

  RunResult result;
  result.log.reserve(steps);
  bool following = false;
  std::optional<spline::Trajectory> trajectory;

  for (int k = 0; k < steps; ++k) {
    const double t = k * cfg.dt_s;
    if (!following) {
      const double ahead = castRay(room, position(pose), pose.theta);
      if (ahead <= wf.explore_trigger_m) {
        following = true;
        result.follow_start_s = t;
      } else {
        const Pose measured = vehicle::sense(pose, cfg.disturbance, rng);
        StepRecord r;
        r.t = t;
        r.true_pose = pose;
        r.measured = measured;
        r.u_total = {wf.explore_speed_m_s, 0.0};
        result.log.push_back(r);
        const Twist applied = vehicle::applyDisturbance(r.u_total, cfg.disturbance);
        pose = vehicle::step(pose, applied, cfg.dt_s, cfg.plant_substeps);
        continue;
      }
    }

    const std::vector<Eigen::Vector2d> scan = raycastLidar(room, pose);
    if (std::optional<spline::Trajectory> fitted = fitFollowTrajectory(scan, pose, wf)) {
      trajectory = std::move(fitted);
      controller.resetMatch();
    }
    if (!trajectory) {
      StepRecord r;
      r.t = t;
      r.true_pose = pose;
      r.measured = vehicle::sense(pose, cfg.disturbance, rng);
      r.u_total = {wf.explore_speed_m_s, 0.0};
      result.log.push_back(r);
      pose = vehicle::step(pose, vehicle::applyDisturbance(r.u_total, cfg.disturbance), cfg.dt_s,
                           cfg.plant_substeps);
      continue;
    }

    const Pose measured = vehicle::sense(pose, cfg.disturbance, rng);
    const control::ControlBreakdown bd = controller.step(measured, *trajectory);
    result.log.push_back(makeRecord(t, pose, measured, bd));
    const Twist applied = vehicle::applyDisturbance(bd.u_total, cfg.disturbance);
    pose = vehicle::step(pose, applied, cfg.dt_s, cfg.plant_substeps);

    if (obstacleDistance(room, position(pose)) < wf.robot_radius_m) {
      result.collided = true;
      break;
    }
  }

  // A run cut short by a collision may end before the settle window opens;
  // fall back to whatever tail exists so the metrics stay computable.
  const double window_start =
      result.log.empty()
          ? 0.0
          : std::min(result.follow_start_s + wf.settle_s, result.log.back().t);
  result.metrics = summarizeContour(result.log, room, wf.offset_m, cfg.metrics, window_start);
  drainSpikes(controller, result);
  return result;
}

}  // namespace

std::optional<spline::Trajectory> fitFollowTrajectory(const std::vector<Eigen::Vector2d>& scan,
                                                      const Pose& pose,
                                                      const WallFollowSpec& spec) {
  std::vector<Eigen::Vector2d> arc;
  arc.reserve(scan.size());
  for (const Eigen::Vector2d& p : scan) {
    const Eigen::Vector2d rel = p - position(pose);
    if (rel.norm() > spec.fit_max_range_m) continue;
    const double angle = wrapAngle(std::atan2(rel.y(), rel.x()) - pose.theta);
    if (angle < spec.arc_min_rad || angle > spec.arc_max_rad) continue;
    arc.push_back(p);
  }

  // The arc may sweep across several surfaces: fitting one curve through
  // returns separated by an occlusion shadow would bridge the gap with a
  // kink, and where a convex obstacle starts occluding a wall the contour
  // folds back on itself. Split at range jumps and at direction reversals,
  // then keep the contiguous piece closest to the robot: the surface being
  // followed. Adjacent pieces' offsets meet at the true contour corner, so
  // the handoff between them is continuous.
  constexpr double kMaxContourGap = 0.25;
  std::vector<Eigen::Vector2d> window;
  std::vector<Eigen::Vector2d> piece;
  Eigen::Vector2d march = Eigen::Vector2d::Zero();
  double best_d2 = std::numeric_limits<double>::infinity();
  const auto flush = [&] {
    if (piece.size() < 2) return;
    double d2 = std::numeric_limits<double>::infinity();
    for (const Eigen::Vector2d& p : piece) d2 = std::min(d2, (p - position(pose)).squaredNorm());
    if (d2 < best_d2) {
      best_d2 = d2;
      window = piece;
    }
  };
  for (const Eigen::Vector2d& p : arc) {
    if (!piece.empty()) {
      const Eigen::Vector2d step = p - piece.back();
      if (step.norm() > kMaxContourGap || (piece.size() >= 2 && step.dot(march) < 0.0)) {
        flush();
        piece.clear();
      } else {
        march = step;
      }
    }
    piece.push_back(p);
  }
  flush();

  // Close to a convex surface self-occlusion can shrink the visible piece to
  // a short arc; cap the control-point spacing by the piece length so even a
  // short piece yields enough points for a cubic fit.
  double span = 0.0;
  for (std::size_t i = 1; i < window.size(); ++i) span += (window[i] - window[i - 1]).norm();
  double spacing = spec.spacing_m;
  for (int attempt = 0; attempt <= spec.max_retries; ++attempt, spacing *= spec.spacing_growth) {
    const double step = std::min(spacing, span / 4.0);
    std::vector<Eigen::Vector2d> picked;
    for (const Eigen::Vector2d& p : window) {
      if (picked.empty() || (p - picked.back()).norm() >= step) picked.push_back(p);
    }
    if (picked.size() < 4) return std::nullopt;
    try {
      const spline::SplineCurve curve = spline::fitWall(picked, 3);
      spline::Trajectory traj =
          spline::offsetTrajectory(curve, spec.offset_m, spec.samples, spec.side);
      // The clamped endpoints carry tangent artifacts that churn between
      // refits; drop just the outermost samples so matching never lands on
      // an exact endpoint.
      const std::size_t trim = 2;
      if (traj.points.size() > 2 * trim + 2) {
        traj.points.erase(traj.points.end() - static_cast<std::ptrdiff_t>(trim),
                          traj.points.end());
        traj.points.erase(traj.points.begin(),
                          traj.points.begin() + static_cast<std::ptrdiff_t>(trim));
      }
      return traj;
    } catch (const std::domain_error&) {
      continue;
    }
  }
  return std::nullopt;
}

RunResult runScenario(const ScenarioConfig& cfg, const RunOptions& options) {
  switch (cfg.kind) {
    case ScenarioKind::kLineTracking:
    case ScenarioKind::kSinusoidTracking:
      return runTracking(cfg, options);
    case ScenarioKind::kWallFollowing:
      return runWallFollow(cfg, options);
  }
  throw std::logic_error("unreachable");
}

}  // namespace wallfollow::harness
