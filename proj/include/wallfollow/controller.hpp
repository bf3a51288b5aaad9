#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "wallfollow/lqr.hpp"
#include "wallfollow/matcher.hpp"
#include "wallfollow/snn.hpp"
#include "wallfollow/spline.hpp"
#include "wallfollow/types.hpp"
#include "wallfollow/vehicle.hpp"

namespace wallfollow::control {

// Tracking errors of a measured pose against a reference pose: Euclidean
// position error, wrapped heading error, and the raw state error vector.
struct Errors {
  double e_p = 0.0;
  double e_theta = 0.0;
  Eigen::Vector3d state_error = Eigen::Vector3d::Zero();
};

struct SnnOptions {
  int neurons = 100;
  std::uint64_t seed_v = 1;
  std::uint64_t seed_w = 2;
  double gamma = 0.0;    // learning rate for the turn-rate channel
  double gamma_v = 0.0;  // learning rate for the speed channel
  bool learning = true;
  bool per_substep = false;
  double norm_radius_m = 1.0;
  double dt_neuron_s = 1e-3;
  snn::LifParams lif;
};

struct ControllerConfig {
  double dt = 0.05;
  double omega_max = 1.0;
  lqr::LqrWeights weights;
  lqr::DareOptions dare;
  matcher::FeedforwardConfig feedforward;
  bool snn_enabled = true;
  SnnOptions snn;
};

struct ControlBreakdown {
  matcher::MatchResult match;
  Errors errors;
  Twist u_lqr;
  Twist u_ff;
  Twist u_adaptive;
  Twist u_total;
};

Errors computeErrors(const Pose& measured, const Pose& reference);

// One closed-loop layer per control period: match the measured pose to the
// trajectory, run LQR feedback about the matched reference, add curvature
// feedforward and the adaptive term, then saturate the sum.
class Controller {
 public:
  explicit Controller(const ControllerConfig& cfg);

  ControlBreakdown step(const Pose& measured, const spline::Trajectory& trajectory);

  // Forget the previous match; call after the trajectory is replaced.
  void resetMatch();

  snn::SnnPopulation& populationV() { return pop_v_; }
  snn::SnnPopulation& populationW() { return pop_w_; }
  const ControllerConfig& config() const { return cfg_; }

 private:
  ControllerConfig cfg_;
  snn::SnnPopulation pop_v_;
  snn::SnnPopulation pop_w_;
  std::optional<std::size_t> prev_index_;
  std::optional<Eigen::Matrix3d> warm_p_;
};

}  // namespace wallfollow::control
