#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wallfollow::spline {

// Clamped B-spline curve in the plane. Control points are stored one per
// column; the knot vector is clamped (first and last knots repeated
// degree + 1 times) and quasi-uniform in between.
struct SplineCurve {
  int degree = 3;
  Eigen::Matrix2Xd control_points;
  Eigen::VectorXd knots;

  int numControlPoints() const { return static_cast<int>(control_points.cols()); }
};

// One sample of a reference trajectory. parameter is the curve parameter in
// [0, 1]; heading is the tangent direction; curvature is signed (positive
// bends left) and belongs to the offset path, not the fitted wall.
struct TrajectoryPoint {
  double parameter = 0.0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double heading = 0.0;
  double curvature = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
};

enum class OffsetSide { kLeft, kRight };

// Clamped quasi-uniform knot vector for n_points control points of the given
// degree. Interior knots are evenly spaced in (0, 1).
Eigen::VectorXd makeKnots(int n_points, int degree);

// Cox-de Boor basis N_{i,k}(t) over the given knot vector. 0/0 terms are
// dropped. The last nonempty span is treated as closed so the basis sums to
// one at the end of the domain.
double basis(int i, int k, double t, const Eigen::VectorXd& knots);

// Curve point at t in [knots.front(), knots.back()].
Eigen::Vector2d eval(const SplineCurve& curve, double t);

// Derivative of a curve as a B-spline of one lower degree.
SplineCurve derivativeCurve(const SplineCurve& curve);

struct CurveDerivatives {
  Eigen::Vector2d first = Eigen::Vector2d::Zero();
  Eigen::Vector2d second = Eigen::Vector2d::Zero();
};

// First and second derivatives with respect to the curve parameter.
CurveDerivatives evalDerivatives(const SplineCurve& curve, double t);

// Unsigned curvature from parametric derivatives. Returns 0 when the tangent
// is degenerate (squared speed below 1e-12).
double curvature(const Eigen::Vector2d& d1, const Eigen::Vector2d& d2);

// Signed curvature: positive where the curve bends left of the tangent.
double signedCurvature(const Eigen::Vector2d& d1, const Eigen::Vector2d& d2);

// Interpolation-free fit: the ordered wall points become the control polygon
// of a clamped spline. Requires at least degree + 1 finite points.
SplineCurve fitWall(const std::vector<Eigen::Vector2d>& points, int degree = 3);

// Samples the curve at uniformly spaced parameters and displaces each sample
// by `distance` along the chosen normal. Throws std::domain_error when
// distance * curvature >= 1 anywhere (the offset would self-intersect).
Trajectory offsetTrajectory(const SplineCurve& curve, double distance, int samples,
                            OffsetSide side = OffsetSide::kLeft);

// Reads "x,y" rows; a non-numeric first line is treated as a header.
std::vector<Eigen::Vector2d> loadPointCloudCsv(const std::string& path);

}  // namespace wallfollow::spline
