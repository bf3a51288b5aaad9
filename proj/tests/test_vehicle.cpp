#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <wallfollow/types.hpp>
#include <wallfollow/vehicle.hpp>

#include "oracles.hpp"

using wallfollow::Pose;
using wallfollow::Twist;
namespace vehicle = wallfollow::vehicle;

TEST_CASE("wrap angle maps onto (-pi, pi]") {
  CHECK(wallfollow::wrapAngle(0.0) == 0.0);
  CHECK(wallfollow::wrapAngle(std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wallfollow::wrapAngle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wallfollow::wrapAngle(3.0 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wallfollow::wrapAngle(2.5 * std::numbers::pi) == doctest::Approx(0.5 * std::numbers::pi));
  CHECK(wallfollow::wrapAngle(-7.5) == doctest::Approx(-7.5 + 2.0 * std::numbers::pi));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angles(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double a = angles(rng);
    const double w = wallfollow::wrapAngle(a);
    CHECK(w > -std::numbers::pi - 1e-15);
    CHECK(w <= std::numbers::pi + 1e-15);
    CHECK(std::remainder(w - a, 2.0 * std::numbers::pi) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("twist to wheel speeds and back") {
  const vehicle::WheelSpeeds w = vehicle::twistToWheels({1.0, 1.0}, 0.3);
  CHECK(w.v_left == doctest::Approx(1.15).epsilon(1e-12));
  CHECK(w.v_right == doctest::Approx(0.85).epsilon(1e-12));

  const Twist zero = vehicle::wheelsToTwist({0.0, 0.0}, 0.3);
  CHECK(zero.v == 0.0);
  CHECK(zero.omega == 0.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const Twist u{dist(rng), dist(rng)};
    const Twist back = vehicle::wheelsToTwist(vehicle::twistToWheels(u, 0.3), 0.3);
    CHECK(std::abs(back.v - u.v) <= 1e-12);
    CHECK(std::abs(back.omega - u.omega) <= 1e-12);
  }
}

TEST_CASE("saturation rescales the turn rate proportionally") {
  const Twist a = vehicle::saturate({1.0, 2.0}, 1.0);
  CHECK(a.v == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(a.omega == doctest::Approx(1.0).epsilon(1e-12));

  const Twist b = vehicle::saturate({1.0, 0.5}, 1.0);
  CHECK(b.v == 1.0);
  CHECK(b.omega == 0.5);

  const Twist c = vehicle::saturate({1.0, -3.0}, 1.0);
  CHECK(c.v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(c.omega == doctest::Approx(-1.0).epsilon(1e-12));

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> dist(-4.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const Twist u{dist(rng), dist(rng)};
    const Twist s = vehicle::saturate(u, 1.0);
    CHECK(std::abs(s.omega) <= 1.0 + 1e-12);
    if (std::abs(u.omega) > 1e-9) {
      CHECK(s.v * u.omega == doctest::Approx(u.v * s.omega).epsilon(1e-9));
    } else {
      CHECK(s.v == u.v);
    }
  }
}

TEST_CASE("actuator fault scales and trims the angular command only") {
  vehicle::DisturbanceConfig faulty;
  faulty.actuator_gain_omega = 0.5;
  const Twist u = vehicle::applyDisturbance({0.8, 0.6}, faulty);
  CHECK(u.v == 0.8);
  CHECK(u.omega == doctest::Approx(0.3).epsilon(1e-12));

  vehicle::DisturbanceConfig healthy;
  const Twist same = vehicle::applyDisturbance({0.8, 0.6}, healthy);
  CHECK(same.v == 0.8);
  CHECK(same.omega == 0.6);

  faulty.actuator_gain_omega = 0.0;
  CHECK(vehicle::applyDisturbance({0.8, 0.6}, faulty).omega == 0.0);

  vehicle::DisturbanceConfig trimmed;
  trimmed.actuator_gain_omega = 0.5;
  trimmed.actuator_bias_omega = -0.04;
  const Twist biased = vehicle::applyDisturbance({0.8, 0.6}, trimmed);
  CHECK(biased.v == 0.8);
  CHECK(biased.omega == doctest::Approx(0.5 * 0.6 - 0.04).epsilon(1e-12));
}

TEST_CASE("kinematic step matches closed forms") {
  const Pose straight = vehicle::step({0.0, 0.0, 0.0}, {1.0, 0.0}, 0.05, 10);
  CHECK(straight.x == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(straight.y == doctest::Approx(0.0));
  CHECK(straight.theta == 0.0);

  const Pose spin = vehicle::step({0.0, 0.0, 0.0}, {0.0, 1.0}, 0.05, 10);
  CHECK(spin.x == 0.0);
  CHECK(spin.y == 0.0);
  CHECK(spin.theta == doctest::Approx(0.05).epsilon(1e-12));

  // Pure rotation keeps position bit-exact; pure translation keeps heading.
  const Pose tilted{0.4, -0.2, 1.1};
  const Pose rotated = vehicle::step(tilted, {0.0, -0.7}, 0.3, 7);
  CHECK(rotated.x == tilted.x);
  CHECK(rotated.y == tilted.y);
  const Pose translated = vehicle::step(tilted, {0.9, 0.0}, 0.3, 7);
  CHECK(translated.theta == tilted.theta);
  CHECK(std::hypot(translated.x - tilted.x, translated.y - tilted.y) ==
        doctest::Approx(0.9 * 0.3).epsilon(1e-12));
}

TEST_CASE("unit circle closes after one revolution") {
  Pose p{0.0, 0.0, 0.0};
  const int steps = 1257;
  const double dt = 2.0 * std::numbers::pi / steps;
  for (int i = 0; i < steps; ++i) p = vehicle::step(p, {1.0, 1.0}, dt, 1);
  CHECK(std::abs(p.x) <= 0.01);
  CHECK(std::abs(p.y) <= 0.01);
  CHECK(std::abs(wallfollow::wrapAngle(p.theta)) <= 1e-9);
}

TEST_CASE("substep integration approaches the exact arc") {
  const Pose start{0.2, -0.1, 0.4};
  const Twist u{1.0, 0.8};
  const double horizon = 1.5;

  const Pose exact = oracle::exactArc(start, u.v, u.omega, horizon);
  const Pose coarse = vehicle::step(start, u, horizon, 1500);
  CHECK(std::abs(coarse.x - exact.x) <= 1e-3);
  CHECK(std::abs(coarse.y - exact.y) <= 1e-3);

  const Pose fine = oracle::fineEuler(start, u.v, u.omega, horizon, 1e-5);
  const Pose matched = vehicle::step(start, u, horizon, 150000);
  CHECK(std::abs(matched.x - fine.x) <= 1e-9);
  CHECK(std::abs(matched.y - fine.y) <= 1e-9);
  CHECK(std::abs(wallfollow::wrapAngle(matched.theta - fine.theta)) <= 1e-9);

  // Error of Euler integration shrinks linearly with the substep size.
  const Pose h1 = vehicle::step(start, u, horizon, 100);
  const Pose h2 = vehicle::step(start, u, horizon, 200);
  const double e1 = std::hypot(h1.x - exact.x, h1.y - exact.y);
  const double e2 = std::hypot(h2.x - exact.x, h2.y - exact.y);
  CHECK(e2 <= 0.6 * e1);
}

TEST_CASE("step size never exceeds commanded speed times time") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Pose start{dist(rng), dist(rng), 3.0 * dist(rng)};
    const Twist u{dist(rng), 2.0 * dist(rng)};
    const Pose end = vehicle::step(start, u, 0.05, 10);
    CHECK(std::hypot(end.x - start.x, end.y - start.y) <= std::abs(u.v) * 0.05 + 1e-12);
  }
}

TEST_CASE("measurement noise is seeded and calibrated") {
  vehicle::DisturbanceConfig clean;
  const Pose p{1.0, -2.0, 0.3};
  std::mt19937_64 rng_clean(clean.noise_seed);
  const Pose same = vehicle::sense(p, clean, rng_clean);
  CHECK(same.x == p.x);
  CHECK(same.y == p.y);
  CHECK(same.theta == p.theta);

  vehicle::DisturbanceConfig noisy;
  noisy.sigma_p_m = 0.05;
  noisy.sigma_theta_rad = 0.1;

  std::mt19937_64 rng_a(42), rng_b(42);
  for (int i = 0; i < 50; ++i) {
    const Pose a = vehicle::sense(p, noisy, rng_a);
    const Pose b = vehicle::sense(p, noisy, rng_b);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.theta == b.theta);
  }

  std::mt19937_64 rng(3);
  const int n = 100000;
  double sum_x = 0.0, sum_xx = 0.0, sum_t = 0.0, sum_tt = 0.0;
  for (int i = 0; i < n; ++i) {
    const Pose m = vehicle::sense(p, noisy, rng);
    sum_x += m.x - p.x;
    sum_xx += (m.x - p.x) * (m.x - p.x);
    sum_t += m.theta - p.theta;
    sum_tt += (m.theta - p.theta) * (m.theta - p.theta);
  }
  const double std_x = std::sqrt(sum_xx / n - (sum_x / n) * (sum_x / n));
  const double std_t = std::sqrt(sum_tt / n - (sum_t / n) * (sum_t / n));
  CHECK(std_x == doctest::Approx(0.05).epsilon(0.03));
  CHECK(std_t == doctest::Approx(0.1).epsilon(0.03));
  CHECK(std::abs(sum_x / n) <= 3.0 * 0.05 / std::sqrt(double(n)));
}
