#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wallfollow/lidar.hpp"
#include "wallfollow/scenario.hpp"
#include "wallfollow/spline.hpp"
#include "wallfollow/types.hpp"

namespace wallfollow::harness {

// One controller period of a simulation run. Errors and the match index are
// the controller's view (measured pose against the matched reference point);
// the pose fields are sampled before the period's motion is applied.
// match_index is -1 while exploring (no trajectory yet).
struct StepRecord {
  double t = 0.0;
  Pose true_pose;
  Pose measured;
  long long match_index = -1;
  double e_p = 0.0;
  double e_theta = 0.0;
  Twist u_lqr;
  Twist u_ff;
  Twist u_adaptive;
  Twist u_total;
};

struct Metrics {
  double mae = 0.0;
  std::optional<double> convergence_time_s;
  double path_length_m = 0.0;
  double final_e_p = 0.0;
  double final_e_theta = 0.0;
};

// Distance from each true pose to the nearest trajectory point.
std::vector<double> trackingErrors(const std::vector<StepRecord>& log,
                                   const spline::Trajectory& reference);

// Wrapped heading error of each true pose against the nearest trajectory
// point's heading.
std::vector<double> headingErrors(const std::vector<StepRecord>& log,
                                  const spline::Trajectory& reference);

// |distance to nearest obstacle - offset| for each true pose.
std::vector<double> contourErrors(const std::vector<StepRecord>& log, const RoomSpec& room,
                                  double offset);

double meanInWindow(const std::vector<StepRecord>& log, const std::vector<double>& values,
                    double t_begin, double t_end);
double stdInWindow(const std::vector<StepRecord>& log, const std::vector<double>& values,
                   double t_begin, double t_end);

// Earliest log time after which both error series stay below their thresholds
// through the end of the run.
std::optional<double> convergenceTime(const std::vector<StepRecord>& log,
                                      const std::vector<double>& e_p,
                                      const std::vector<double>& e_theta, double e_p_threshold,
                                      double e_theta_threshold);

double pathLength(const std::vector<StepRecord>& log);

Metrics summarizeTracking(const std::vector<StepRecord>& log, const spline::Trajectory& reference,
                          const MetricsSpec& spec);

// Contour-relative summary over t >= window_start_s. Convergence uses the
// position threshold only.
Metrics summarizeContour(const std::vector<StepRecord>& log, const RoomSpec& room, double offset,
                         const MetricsSpec& spec, double window_start_s);

}  // namespace wallfollow::harness
