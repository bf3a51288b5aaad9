#include "wallfollow/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace wallfollow::harness {

spline::Trajectory lineTrajectory(double y, double x_start, double x_end, int samples) {
  if (samples < 2) throw std::invalid_argument("need at least two trajectory samples");
  if (!(x_end > x_start)) throw std::invalid_argument("x_end must exceed x_start");
  spline::Trajectory traj;
  traj.points.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double s = static_cast<double>(i) / (samples - 1);
    spline::TrajectoryPoint tp;
    tp.parameter = s;
    tp.position = {x_start + s * (x_end - x_start), y};
    tp.heading = 0.0;
    tp.curvature = 0.0;
    traj.points.push_back(tp);
  }
  return traj;
}

spline::Trajectory sinusoidTrajectory(double x_start, double x_end, int samples) {
  if (samples < 2) throw std::invalid_argument("need at least two trajectory samples");
  if (!(x_end > x_start)) throw std::invalid_argument("x_end must exceed x_start");
  spline::Trajectory traj;
  traj.points.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double s = static_cast<double>(i) / (samples - 1);
    const double x = x_start + s * (x_end - x_start);
    const double slope = std::cos(x);
    spline::TrajectoryPoint tp;
    tp.parameter = s;
    tp.position = {x, std::sin(x)};
    tp.heading = std::atan(slope);
    tp.curvature = -std::sin(x) / std::pow(1.0 + slope * slope, 1.5);
    traj.points.push_back(tp);
  }
  return traj;
}

spline::Trajectory buildReference(const ReferenceSpec& spec) {
  switch (spec.type) {
    case ReferenceSpec::Type::kLine:
      return lineTrajectory(spec.y, spec.x_start, spec.x_end, spec.samples);
    case ReferenceSpec::Type::kSinusoid:
      return sinusoidTrajectory(spec.x_start, spec.x_end, spec.samples);
  }
  throw std::logic_error("unreachable");
}

}  // namespace wallfollow::harness
