#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wallfollow/types.hpp"

namespace wallfollow::snn {

struct LifParams {
  double tau_d_s = 0.02;
  double r_m = 1.0;
  double v_th = 1.0;
  double v_reset = 0.0;
  double tau_ref_s = 0.002;
  double tau_p_s = 0.1;
};

struct PesRule {
  double gamma = 0.0;
  bool enabled = true;
  bool per_substep = false;
};

struct SpikeEvent {
  double t = 0.0;
  int neuron = 0;
};

// Population of LIF neurons encoding a scalar in [-1, 1]. Each neuron i
// receives current J_i = encoder_i * a + bias_i; the decoded output is the
// dot product of the learned decoders with the filtered spike trains.
struct SnnPopulation {
  Eigen::ArrayXd encoders;
  Eigen::ArrayXd bias;
  Eigen::ArrayXd decoders;
  Eigen::ArrayXd membrane;
  Eigen::ArrayXd synapse;
  Eigen::ArrayXd refractory;
  LifParams params;
  double time_s = 0.0;
  bool record_spikes = false;
  std::vector<SpikeEvent> raster;

  int size() const { return static_cast<int>(encoders.size()); }
};

// Randomized tuning curves: per neuron a random encoder sign, an intercept
// uniform in (-1, 1) and a peak rate uniform in [100, 200) Hz at full drive.
// Gain and bias are chosen so the neuron starts firing at its intercept and
// reaches its peak rate at input 1 (for positive encoders; mirrored
// otherwise). Decoders start at zero.
SnnPopulation initPopulation(int n, std::uint64_t seed, const LifParams& params = {});

// One neuron step of length dt_n: exponential Euler on the membrane,
// refractory hold, threshold crossing. Returns the spike train sample, valued
// 1/dt_n for neurons that fired so a spike carries unit area.
Eigen::ArrayXd lifStep(SnnPopulation& pop, double input, double dt_n);

// First-order synaptic filter s <- s exp(-dt_n/tau_p) + spikes dt_n / tau_p.
// In steady state s averages to the firing rate times the filter gain 1.
void synapseStep(SnnPopulation& pop, const Eigen::ArrayXd& spikes, double dt_n);

double decode(const SnnPopulation& pop);

// PES: w <- w - gamma * s * error.
void pesUpdate(SnnPopulation& pop, double error, const PesRule& rule);

// Runs both populations for one controller period of length dt (split into
// neuron steps of dt_n), applies one PES update per period (or per substep
// when configured), and returns the decoded adaptive command. Each channel
// learns at its own rate.
Twist adaptiveControl(SnnPopulation& pop_v, SnnPopulation& pop_w, double input_v, double input_w,
                      double error_v, double error_w, double dt, double dt_n,
                      const PesRule& rule_v, const PesRule& rule_w);

}  // namespace wallfollow::snn
