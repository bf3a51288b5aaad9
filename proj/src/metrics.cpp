#include "wallfollow/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wallfollow::harness {
namespace {

std::size_t nearestIndex(const spline::Trajectory& reference, const Eigen::Vector2d& p) {
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < reference.points.size(); ++i) {
    const double d2 = (reference.points[i].position - p).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

void checkSizes(const std::vector<StepRecord>& log, const std::vector<double>& values) {
  if (log.size() != values.size()) throw std::invalid_argument("error series does not match log");
}

}  // namespace

std::vector<double> trackingErrors(const std::vector<StepRecord>& log,
                                   const spline::Trajectory& reference) {
  if (reference.points.empty()) throw std::invalid_argument("empty reference trajectory");
  std::vector<double> errors;
  errors.reserve(log.size());
  for (const StepRecord& r : log) {
    const Eigen::Vector2d p = position(r.true_pose);
    errors.push_back((reference.points[nearestIndex(reference, p)].position - p).norm());
  }
  return errors;
}

std::vector<double> headingErrors(const std::vector<StepRecord>& log,
                                  const spline::Trajectory& reference) {
  if (reference.points.empty()) throw std::invalid_argument("empty reference trajectory");
  std::vector<double> errors;
  errors.reserve(log.size());
  for (const StepRecord& r : log) {
    const std::size_t i = nearestIndex(reference, position(r.true_pose));
    errors.push_back(wrapAngle(r.true_pose.theta - reference.points[i].heading));
  }
  return errors;
}

std::vector<double> contourErrors(const std::vector<StepRecord>& log, const RoomSpec& room,
                                  double offset) {
  std::vector<double> errors;
  errors.reserve(log.size());
  for (const StepRecord& r : log)
    errors.push_back(std::abs(obstacleDistance(room, position(r.true_pose)) - offset));
  return errors;
}

double meanInWindow(const std::vector<StepRecord>& log, const std::vector<double>& values,
                    double t_begin, double t_end) {
  checkSizes(log, values);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (log[i].t < t_begin || log[i].t > t_end) continue;
    sum += values[i];
    ++count;
  }
  if (count == 0) throw std::invalid_argument("empty metrics window");
  return sum / static_cast<double>(count);
}

double stdInWindow(const std::vector<StepRecord>& log, const std::vector<double>& values,
                   double t_begin, double t_end) {
  checkSizes(log, values);
  const double mean = meanInWindow(log, values, t_begin, t_end);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (log[i].t < t_begin || log[i].t > t_end) continue;
    sum += (values[i] - mean) * (values[i] - mean);
    ++count;
  }
  return std::sqrt(sum / static_cast<double>(count));
}

std::optional<double> convergenceTime(const std::vector<StepRecord>& log,
                                      const std::vector<double>& e_p,
                                      const std::vector<double>& e_theta, double e_p_threshold,
                                      double e_theta_threshold) {
  checkSizes(log, e_p);
  checkSizes(log, e_theta);
  std::optional<double> earliest;
  for (std::size_t i = log.size(); i-- > 0;) {
    if (e_p[i] < e_p_threshold && std::abs(e_theta[i]) < e_theta_threshold)
      earliest = log[i].t;
    else
      break;
  }
  return earliest;
}

double pathLength(const std::vector<StepRecord>& log) {
  double length = 0.0;
  for (std::size_t i = 1; i < log.size(); ++i)
    length += (position(log[i].true_pose) - position(log[i - 1].true_pose)).norm();
  return length;
}

Metrics summarizeTracking(const std::vector<StepRecord>& log, const spline::Trajectory& reference,
                          const MetricsSpec& spec) {
  if (log.empty()) throw std::invalid_argument("empty run log");
  const std::vector<double> e_p = trackingErrors(log, reference);
  const std::vector<double> e_theta = headingErrors(log, reference);
  Metrics m;
  m.mae = meanInWindow(log, e_p, spec.window_start_s, std::numeric_limits<double>::infinity());
  m.convergence_time_s =
      convergenceTime(log, e_p, e_theta, spec.e_p_threshold_m, spec.e_theta_threshold_rad);
  m.path_length_m = pathLength(log);
  m.final_e_p = e_p.back();
  m.final_e_theta = e_theta.back();
  return m;
}

Metrics summarizeContour(const std::vector<StepRecord>& log, const RoomSpec& room, double offset,
                         const MetricsSpec& spec, double window_start_s) {
  if (log.empty()) throw std::invalid_argument("empty run log");
  const std::vector<double> e_p = contourErrors(log, room, offset);
  const std::vector<double> zeros(log.size(), 0.0);
  Metrics m;
  m.mae = meanInWindow(log, e_p, window_start_s, std::numeric_limits<double>::infinity());
  m.convergence_time_s = convergenceTime(log, e_p, zeros, spec.e_p_threshold_m, 1.0);
  m.path_length_m = pathLength(log);
  m.final_e_p = e_p.back();
  m.final_e_theta = 0.0;
  return m;
}

}  // namespace wallfollow::harness
