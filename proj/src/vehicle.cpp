#include "wallfollow/vehicle.hpp"

#include <cmath>
#include <stdexcept>

namespace wallfollow::vehicle {

WheelSpeeds twistToWheels(const Twist& u, double wheel_base) {
  if (wheel_base <= 0.0) throw std::invalid_argument("wheel base must be positive");
  return {u.v - u.omega * wheel_base / 2.0, u.v + u.omega * wheel_base / 2.0};
}

Twist wheelsToTwist(const WheelSpeeds& w, double wheel_base) {
  if (wheel_base <= 0.0) throw std::invalid_argument("wheel base must be positive");
  return {(w.v_right + w.v_left) / 2.0, (w.v_left - w.v_right) / wheel_base};
}

Twist saturate(const Twist& u, double omega_max) {
  if (std::abs(u.omega) <= omega_max) return u;
  const double scale = omega_max / std::abs(u.omega);
  return {u.v * scale, std::copysign(omega_max, u.omega)};
}

Twist applyDisturbance(const Twist& u, const DisturbanceConfig& cfg) {
  return {u.v, u.omega * cfg.actuator_gain_omega + cfg.actuator_bias_omega};
}

Pose step(const Pose& pose, const Twist& u, double dt, int substeps) {
  if (dt <= 0.0) throw std::invalid_argument("time step must be positive");
  if (substeps < 1) throw std::invalid_argument("need at least one substep");
  const double h = dt / substeps;
  Pose p = pose;
  for (int i = 0; i < substeps; ++i) {
    p.x += h * u.v * std::cos(p.theta);
    p.y += h * u.v * std::sin(p.theta);
    p.theta += h * u.omega;
  }
  p.theta = wrapAngle(p.theta);
  return p;
}

Pose sense(const Pose& pose, const DisturbanceConfig& cfg, std::mt19937_64& rng) {
  Pose m = pose;
  if (cfg.sigma_p_m > 0.0) {
    std::normal_distribution<double> noise(0.0, cfg.sigma_p_m);
    m.x += noise(rng);
    m.y += noise(rng);
  }
  if (cfg.sigma_theta_rad > 0.0) {
    std::normal_distribution<double> noise(0.0, cfg.sigma_theta_rad);
    m.theta = wrapAngle(m.theta + noise(rng));
  }
  return m;
}

}  // namespace wallfollow::vehicle
