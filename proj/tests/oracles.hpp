#pragma once

// Independent reference implementations used only to cross-check the library.
// Each uses a different algorithm than the code under test.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "wallfollow/lidar.hpp"
#include "wallfollow/types.hpp"

namespace oracle {

// De Boor's triangular recurrence for clamped B-spline evaluation.
inline Eigen::Vector2d deBoor(int degree, const Eigen::VectorXd& knots,
                              const Eigen::Matrix2Xd& ctrl, double x) {
  int k = -1;
  for (int i = 0; i + 1 < knots.size(); ++i) {
    if (knots(i) <= x && x < knots(i + 1)) {
      k = i;
      break;
    }
  }
  if (k < 0) {
    for (int i = static_cast<int>(knots.size()) - 2; i >= 0; --i) {
      if (knots(i) < knots(i + 1)) {
        k = i;
        break;
      }
    }
  }
  const int p = degree;
  std::vector<Eigen::Vector2d> d(p + 1);
  for (int j = 0; j <= p; ++j) d[j] = ctrl.col(j + k - p);
  for (int r = 1; r <= p; ++r) {
    for (int j = p; j >= r; --j) {
      const double denom = knots(j + 1 + k - r) - knots(j + k - p);
      const double alpha = (x - knots(j + k - p)) / denom;
      d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j];
    }
  }
  return d[p];
}

// Structure-preserving doubling algorithm for the DARE; converges
// quadratically, unlike the fixed-point recursion under test.
inline Eigen::MatrixXd solveDareDoubling(Eigen::MatrixXd a, const Eigen::MatrixXd& b,
                                         const Eigen::MatrixXd& q, const Eigen::MatrixXd& r) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd g = b * r.ldlt().solve(b.transpose());
  Eigen::MatrixXd h = q;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  for (int it = 0; it < 200; ++it) {
    const Eigen::MatrixXd w = eye + g * h;
    const auto lu = w.partialPivLu();
    const Eigen::MatrixXd v1 = lu.solve(a);
    const Eigen::MatrixXd v2 = lu.solve(g.transpose()).transpose();
    g += a * v2 * a.transpose();
    const Eigen::MatrixXd h_next = h + v1.transpose() * h * a;
    const double change = (h_next - h).cwiseAbs().maxCoeff();
    h = (h_next + h_next.transpose()) / 2.0;
    a = a * v1;
    if (change <= 1e-13 * std::max(1.0, h.cwiseAbs().maxCoeff())) return h;
  }
  throw std::runtime_error("doubling oracle did not converge");
}

// Steady-state LIF firing rate at constant drive, from the closed-form
// threshold-crossing time of the membrane ODE.
inline double lifRate(double current, double tau_ref, double tau_d, double r_m, double v_th) {
  const double drive = r_m * current;
  if (drive <= v_th) return 0.0;
  return 1.0 / (tau_ref + tau_d * std::log(drive / (drive - v_th)));
}

// Exact constant-twist motion (circular arc / straight segment).
inline wallfollow::Pose exactArc(const wallfollow::Pose& p, double v, double omega, double dt) {
  wallfollow::Pose out = p;
  if (std::abs(omega) < 1e-12) {
    out.x += v * dt * std::cos(p.theta);
    out.y += v * dt * std::sin(p.theta);
  } else {
    out.x += v / omega * (std::sin(p.theta + omega * dt) - std::sin(p.theta));
    out.y -= v / omega * (std::cos(p.theta + omega * dt) - std::cos(p.theta));
    out.theta = wallfollow::wrapAngle(p.theta + omega * dt);
  }
  return out;
}

// Forward Euler at a very fine step, independent of vehicle::step's substep
// handling.
inline wallfollow::Pose fineEuler(const wallfollow::Pose& p, double v, double omega, double total,
                                  double h) {
  wallfollow::Pose out = p;
  const long long n = std::llround(total / h);
  for (long long i = 0; i < n; ++i) {
    out.x += h * v * std::cos(out.theta);
    out.y += h * v * std::sin(out.theta);
    out.theta += h * omega;
  }
  out.theta = wallfollow::wrapAngle(out.theta);
  return out;
}

// Marches along a ray in small steps until free space ends.
inline double rayMarch(const wallfollow::harness::RoomSpec& room, const Eigen::Vector2d& origin,
                       double angle, double step = 5e-4) {
  const Eigen::Vector2d dir(std::cos(angle), std::sin(angle));
  double t = 0.0;
  while (t <= room.lidar.max_range_m) {
    const Eigen::Vector2d p = origin + t * dir;
    if (wallfollow::harness::obstacleDistance(room, p) <= 0.0) return t;
    t += step;
  }
  return room.lidar.max_range_m;
}

}  // namespace oracle
