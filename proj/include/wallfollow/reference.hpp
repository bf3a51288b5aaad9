#pragma once

#include "wallfollow/scenario.hpp"
#include "wallfollow/spline.hpp"

namespace wallfollow::harness {

// Horizontal line y = const, sampled uniformly in x.
spline::Trajectory lineTrajectory(double y, double x_start, double x_end, int samples);

// y = sin(x), sampled uniformly in x, with analytic heading and curvature.
spline::Trajectory sinusoidTrajectory(double x_start, double x_end, int samples);

spline::Trajectory buildReference(const ReferenceSpec& spec);

}  // namespace wallfollow::harness
