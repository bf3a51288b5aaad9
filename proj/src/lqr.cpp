#include "wallfollow/lqr.hpp"

#include <cmath>

namespace wallfollow::lqr {

LinearModel linearize(const Pose& ref_pose, const Twist& ref_twist, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("time step must be positive");
  if (!std::isfinite(ref_pose.x) || !std::isfinite(ref_pose.y) || !std::isfinite(ref_pose.theta) ||
      !std::isfinite(ref_twist.v))
    throw std::invalid_argument("non-finite linearization reference");

  const double c = std::cos(ref_pose.theta);
  const double s = std::sin(ref_pose.theta);
  const double v = ref_twist.v;

  Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
  a(0, 2) = -v * s;
  a(1, 2) = v * c;

  Eigen::Matrix<double, 3, 2> b = Eigen::Matrix<double, 3, 2>::Zero();
  b(0, 0) = c;
  b(0, 1) = -v * s * dt;
  b(1, 0) = s;
  b(1, 1) = v * c * dt;
  b(2, 1) = 1.0;

  LinearModel model;
  model.a_k = Eigen::Matrix3d::Identity() + dt * a;
  model.b_k = dt * b;
  model.dt = dt;
  return model;
}

LqrGain solveDare(const LinearModel& model, const LqrWeights& weights, const DareOptions& options,
                  const std::optional<Eigen::Matrix3d>& warm_start) {
  const auto solution = iterateDare(model.a_k, model.b_k, weights.q, weights.r, options, warm_start);
  LqrGain gain;
  gain.p = solution.p;
  gain.iterations = solution.iterations;
  gain.residual = solution.residual;
  const Eigen::Matrix<double, 2, 3> btp = model.b_k.transpose() * solution.p;
  gain.k = (weights.r + btp * model.b_k).ldlt().solve(btp * model.a_k);
  return gain;
}

Twist feedback(const LqrGain& gain, const Eigen::Vector3d& state_error) {
  Eigen::Vector3d e = state_error;
  e(2) = wrapAngle(e(2));
  const Eigen::Vector2d u = -gain.k * e;
  return {u(0), u(1)};
}

}  // namespace wallfollow::lqr
