#pragma once

#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

#include "wallfollow/types.hpp"

namespace wallfollow::lqr {

// Discrete-time linearization of the unicycle about a reference pose and
// forward speed: x_{k+1} = a_k x_k + b_k u_k with state (x, y, theta) error
// and input (v, omega).
struct LinearModel {
  Eigen::Matrix3d a_k = Eigen::Matrix3d::Identity();
  Eigen::Matrix<double, 3, 2> b_k = Eigen::Matrix<double, 3, 2>::Zero();
  double dt = 0.0;
};

struct LqrWeights {
  Eigen::Matrix3d q = Eigen::Matrix3d::Identity();
  Eigen::Matrix2d r = Eigen::Matrix2d::Identity();
};

struct LqrGain {
  Eigen::Matrix<double, 2, 3> k = Eigen::Matrix<double, 2, 3>::Zero();
  Eigen::Matrix3d p = Eigen::Matrix3d::Zero();
  int iterations = 0;
  double residual = 0.0;
};

struct DareOptions {
  double tolerance = 1e-10;
  int max_iterations = 100000;
};

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-point iteration of the discrete Riccati recursion
//   P <- A' P A - A' P B (R + B' P B)^{-1} B' P A + Q
// starting from `warm_start` (or Q), until the max-abs change falls below
// tolerance. Each iterate is re-symmetrized. Throws NonConvergence when the
// iteration fails to settle, which signals an unstabilizable model.
template <typename DerivedA, typename DerivedB, typename DerivedQ, typename DerivedR>
struct DareSolution {
  Eigen::Matrix<typename DerivedA::Scalar, DerivedA::RowsAtCompileTime, DerivedA::RowsAtCompileTime> p;
  int iterations = 0;
  double residual = 0.0;
};

template <typename DerivedA, typename DerivedB, typename DerivedQ, typename DerivedR>
DareSolution<DerivedA, DerivedB, DerivedQ, DerivedR> iterateDare(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
    const Eigen::MatrixBase<DerivedQ>& q, const Eigen::MatrixBase<DerivedR>& r,
    const DareOptions& options = {},
    const std::optional<Eigen::Matrix<typename DerivedA::Scalar, DerivedA::RowsAtCompileTime,
                                      DerivedA::RowsAtCompileTime>>& warm_start = std::nullopt) {
  using MatrixP = Eigen::Matrix<typename DerivedA::Scalar, DerivedA::RowsAtCompileTime,
                                DerivedA::RowsAtCompileTime>;
  DareSolution<DerivedA, DerivedB, DerivedQ, DerivedR> solution;
  MatrixP p = warm_start ? *warm_start : MatrixP(q);
  for (int it = 1; it <= options.max_iterations; ++it) {
    const auto btp = (b.transpose() * p).eval();
    const auto gain = (r + btp * b).ldlt().solve(btp * a).eval();
    MatrixP next = a.transpose() * p * a - (btp * a).transpose() * gain + q;
    next = ((next + next.transpose()) / 2.0).eval();
    const double change = (next - p).cwiseAbs().maxCoeff();
    p = next;
    if (change <= options.tolerance) {
      solution.p = p;
      solution.iterations = it;
      solution.residual = change;
      return solution;
    }
  }
  throw NonConvergence("Riccati iteration did not converge");
}

// Jacobians of the unicycle about (ref_pose, ref_twist.v), discretized with
// forward Euler: a_k = I + dt A, b_k = dt B.
LinearModel linearize(const Pose& ref_pose, const Twist& ref_twist, double dt);

// Steady-state gain K = (R + B' P B)^{-1} B' P A for the converged P.
LqrGain solveDare(const LinearModel& model, const LqrWeights& weights,
                  const DareOptions& options = {},
                  const std::optional<Eigen::Matrix3d>& warm_start = std::nullopt);

// u = -K x_err, with the heading component of x_err wrapped first.
Twist feedback(const LqrGain& gain, const Eigen::Vector3d& state_error);

}  // namespace wallfollow::lqr
