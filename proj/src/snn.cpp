#include "wallfollow/snn.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace wallfollow::snn {
namespace {

// Current that makes a LIF neuron fire at `rate` in steady state; inverse of
// rate = 1 / (tau_ref + tau_d ln(R J / (R J - V_th))).
double rateToCurrent(const LifParams& p, double rate) {
  const double z = (1.0 / rate - p.tau_ref_s) / p.tau_d_s;
  return p.v_th / (p.r_m * (1.0 - std::exp(-z)));
}

}  // namespace

SnnPopulation initPopulation(int n, std::uint64_t seed, const LifParams& params) {
  if (n < 1) throw std::invalid_argument("population needs at least one neuron");
  SnnPopulation pop;
  pop.params = params;
  pop.encoders.resize(n);
  pop.bias.resize(n);
  pop.decoders = Eigen::ArrayXd::Zero(n);
  pop.membrane = Eigen::ArrayXd::Constant(n, params.v_reset);
  pop.synapse = Eigen::ArrayXd::Zero(n);
  pop.refractory = Eigen::ArrayXd::Zero(n);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  std::uniform_real_distribution<double> intercept_dist(-1.0, 1.0);
  std::uniform_real_distribution<double> rate_dist(100.0, 200.0);

  const double j_onset = params.v_th / params.r_m;
  for (int i = 0; i < n; ++i) {
    const double sign = sign_dist(rng) == 0 ? -1.0 : 1.0;
    const double intercept = intercept_dist(rng);
    const double max_rate = rate_dist(rng);
    const double j_max = rateToCurrent(params, max_rate);
    const double gain = (j_onset - j_max) / (intercept - 1.0);
    pop.encoders(i) = sign * gain;
    pop.bias(i) = j_max - gain;
  }
  return pop;
}

Eigen::ArrayXd lifStep(SnnPopulation& pop, double input, double dt_n) {
  if (dt_n <= 0.0) throw std::invalid_argument("neuron step must be positive");
  const LifParams& p = pop.params;
  const double decay = std::exp(-dt_n / p.tau_d_s);
  const Eigen::ArrayXd current = pop.encoders * input + pop.bias;
  Eigen::ArrayXd spikes = Eigen::ArrayXd::Zero(pop.size());
  for (int i = 0; i < pop.size(); ++i) {
    if (pop.refractory(i) > 0.0) {
      pop.refractory(i) -= dt_n;
      pop.membrane(i) = p.v_reset;
      continue;
    }
    const double v_inf = p.r_m * current(i);
    pop.membrane(i) = v_inf + (pop.membrane(i) - v_inf) * decay;
    if (pop.membrane(i) >= p.v_th) {
      spikes(i) = 1.0 / dt_n;
      pop.membrane(i) = p.v_reset;
      pop.refractory(i) = p.tau_ref_s;
      if (pop.record_spikes) pop.raster.push_back({pop.time_s + dt_n, i});
    }
  }
  pop.time_s += dt_n;
  return spikes;
}

void synapseStep(SnnPopulation& pop, const Eigen::ArrayXd& spikes, double dt_n) {
  if (spikes.size() != pop.synapse.size()) throw std::invalid_argument("spike train size mismatch");
  const double decay = std::exp(-dt_n / pop.params.tau_p_s);
  pop.synapse = pop.synapse * decay + spikes * dt_n / pop.params.tau_p_s;
}

double decode(const SnnPopulation& pop) { return (pop.decoders * pop.synapse).sum(); }

void pesUpdate(SnnPopulation& pop, double error, const PesRule& rule) {
  if (!rule.enabled) return;
  pop.decoders -= rule.gamma * pop.synapse * error;
}

Twist adaptiveControl(SnnPopulation& pop_v, SnnPopulation& pop_w, double input_v, double input_w,
                      double error_v, double error_w, double dt, double dt_n,
                      const PesRule& rule_v, const PesRule& rule_w) {
  if (dt <= 0.0) throw std::invalid_argument("controller period must be positive");
  const int substeps = std::max(1, static_cast<int>(std::lround(dt / dt_n)));
  for (int k = 0; k < substeps; ++k) {
    synapseStep(pop_v, lifStep(pop_v, input_v, dt_n), dt_n);
    synapseStep(pop_w, lifStep(pop_w, input_w, dt_n), dt_n);
    if (rule_v.per_substep) pesUpdate(pop_v, error_v, rule_v);
    if (rule_w.per_substep) pesUpdate(pop_w, error_w, rule_w);
  }
  if (!rule_v.per_substep) pesUpdate(pop_v, error_v, rule_v);
  if (!rule_w.per_substep) pesUpdate(pop_w, error_w, rule_w);
  return {decode(pop_v), decode(pop_w)};
}

}  // namespace wallfollow::snn
