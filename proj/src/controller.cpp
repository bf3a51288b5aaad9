#include "wallfollow/controller.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wallfollow::control {

Errors computeErrors(const Pose& measured, const Pose& reference) {
  Errors e;
  e.state_error = {measured.x - reference.x, measured.y - reference.y,
                   wrapAngle(measured.theta - reference.theta)};
  e.e_p = std::hypot(e.state_error(0), e.state_error(1));
  e.e_theta = e.state_error(2);
  return e;
}

Controller::Controller(const ControllerConfig& cfg)
    : cfg_(cfg),
      pop_v_(snn::initPopulation(cfg.snn.neurons, cfg.snn.seed_v, cfg.snn.lif)),
      pop_w_(snn::initPopulation(cfg.snn.neurons, cfg.snn.seed_w, cfg.snn.lif)) {}

ControlBreakdown Controller::step(const Pose& measured, const spline::Trajectory& trajectory) {
  ControlBreakdown out;
  out.match = matcher::findMatch(trajectory, position(measured), prev_index_,
                                 cfg_.feedforward.search_window);
  out.errors = computeErrors(measured, out.match.ref_pose);

  const Twist ref_twist{cfg_.feedforward.v_ref, cfg_.feedforward.v_ref * out.match.ref_curvature};
  const lqr::LinearModel model = lqr::linearize(out.match.ref_pose, ref_twist, cfg_.dt);
  const lqr::LqrGain gain = lqr::solveDare(model, cfg_.weights, cfg_.dare, warm_p_);
  out.u_lqr = lqr::feedback(gain, out.errors.state_error);
  out.u_ff = matcher::feedforward(out.match, cfg_.feedforward);
  // Project the feedforward speed onto the vehicle heading: a vehicle facing
  // away from the path direction gets no forward push and pivots in place.
  out.u_ff.v *= std::max(std::cos(out.errors.e_theta), 0.0);

  out.u_adaptive = {0.0, 0.0};
  if (cfg_.snn_enabled) {
    // Speed channel trains on the signed along-track error so learning
    // self-corrects; the unsigned distance would only ever push one way.
    const double e_along = std::cos(out.match.ref_pose.theta) * out.errors.state_error(0) +
                           std::sin(out.match.ref_pose.theta) * out.errors.state_error(1);
    const auto clip = [](double x) { return std::clamp(x, -1.0, 1.0); };
    const double input_v = clip(e_along / cfg_.snn.norm_radius_m);
    const double input_w = clip(out.errors.e_theta / std::numbers::pi);
    snn::PesRule rule_v{cfg_.snn.gamma_v, cfg_.snn.learning, cfg_.snn.per_substep};
    snn::PesRule rule_w{cfg_.snn.gamma, cfg_.snn.learning, cfg_.snn.per_substep};
    out.u_adaptive = snn::adaptiveControl(pop_v_, pop_w_, input_v, input_w, e_along,
                                          out.errors.e_theta, cfg_.dt, cfg_.snn.dt_neuron_s,
                                          rule_v, rule_w);
  }

  const Twist sum{out.u_lqr.v + out.u_ff.v + out.u_adaptive.v,
                  out.u_lqr.omega + out.u_ff.omega + out.u_adaptive.omega};
  out.u_total = vehicle::saturate(sum, cfg_.omega_max);

  prev_index_ = out.match.index;
  warm_p_ = gain.p;
  return out;
}

void Controller::resetMatch() { prev_index_.reset(); }

}  // namespace wallfollow::control
