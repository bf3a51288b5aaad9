#pragma once

#include <cstdint>
#include <random>

#include "wallfollow/types.hpp"

namespace wallfollow::vehicle {

struct WheelSpeeds {
  double v_right = 0.0;
  double v_left = 0.0;
};

// Plant-side imperfections: a multiplicative gain and an additive trim bias
// on the executed yaw rate (a wheel-radius mismatch shows up as both), and
// Gaussian noise on the measured pose.
struct DisturbanceConfig {
  double actuator_gain_omega = 1.0;
  double actuator_bias_omega = 0.0;
  double sigma_p_m = 0.0;
  double sigma_theta_rad = 0.0;
  std::uint64_t noise_seed = 0;
};

// v = (v_R + v_L) / 2, omega = (v_L - v_R) / wheel_base.
WheelSpeeds twistToWheels(const Twist& u, double wheel_base);
Twist wheelsToTwist(const WheelSpeeds& w, double wheel_base);

// Clamps |omega| to omega_max and scales v by the same factor so the turning
// radius of the command is preserved.
Twist saturate(const Twist& u, double omega_max);

// Applies the actuator fault to the executed command.
Twist applyDisturbance(const Twist& u, const DisturbanceConfig& cfg);

// Unicycle kinematics integrated with forward Euler over `substeps`
// sub-intervals of dt.
Pose step(const Pose& pose, const Twist& u, double dt, int substeps = 10);

// Measured pose: true pose plus independent Gaussian noise on x, y, theta.
Pose sense(const Pose& pose, const DisturbanceConfig& cfg, std::mt19937_64& rng);

}  // namespace wallfollow::vehicle
