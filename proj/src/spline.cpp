#include "wallfollow/spline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wallfollow::spline {
namespace {

// Index of the knot span containing t: the largest i with knots[i] <= t and
// knots[i] < knots[i+1], clamped to the last nonempty span at the domain end.
int findSpan(double t, int degree, const Eigen::VectorXd& knots) {
  const int last = static_cast<int>(knots.size()) - degree - 2;
  if (t >= knots(last + 1)) return last;
  const double* begin = knots.data() + degree;
  const double* end = knots.data() + last + 2;
  const double* it = std::upper_bound(begin, end, t);
  return static_cast<int>(it - knots.data()) - 1;
}

void checkDomain(const SplineCurve& curve, double t) {
  const double t0 = curve.knots(0);
  const double t1 = curve.knots(curve.knots.size() - 1);
  if (!(t >= t0 && t <= t1)) throw std::domain_error("spline parameter outside knot range");
}

}  // namespace

Eigen::VectorXd makeKnots(int n_points, int degree) {
  if (degree < 0) throw std::invalid_argument("negative spline degree");
  if (n_points < degree + 1) throw std::invalid_argument("too few control points for degree");
  const int n = n_points - 1;
  const int interior = n - degree;
  Eigen::VectorXd knots(n + degree + 2);
  for (int i = 0; i <= degree; ++i) knots(i) = 0.0;
  for (int j = 1; j <= interior; ++j) knots(degree + j) = static_cast<double>(j) / (interior + 1);
  for (int i = n + 1; i < knots.size(); ++i) knots(i) = 1.0;
  return knots;
}

double basis(int i, int k, double t, const Eigen::VectorXd& knots) {
  if (i < 0 || i + k + 1 >= knots.size()) throw std::invalid_argument("basis index out of range");
  if (k == 0) {
    const double t_end = knots(knots.size() - 1);
    if (t >= t_end) return knots(i) < knots(i + 1) && knots(i + 1) >= t_end ? 1.0 : 0.0;
    return knots(i) <= t && t < knots(i + 1) ? 1.0 : 0.0;
  }
  double value = 0.0;
  const double dl = knots(i + k) - knots(i);
  if (dl > 0.0) value += (t - knots(i)) / dl * basis(i, k - 1, t, knots);
  const double dr = knots(i + k + 1) - knots(i + 1);
  if (dr > 0.0) value += (knots(i + k + 1) - t) / dr * basis(i + 1, k - 1, t, knots);
  return value;
}

Eigen::Vector2d eval(const SplineCurve& curve, double t) {
  checkDomain(curve, t);
  const int span = findSpan(t, curve.degree, curve.knots);
  Eigen::Vector2d point = Eigen::Vector2d::Zero();
  for (int i = span - curve.degree; i <= span; ++i) {
    if (i < 0 || i >= curve.numControlPoints()) continue;
    point += basis(i, curve.degree, t, curve.knots) * curve.control_points.col(i);
  }
  return point;
}

SplineCurve derivativeCurve(const SplineCurve& curve) {
  if (curve.degree < 1) throw std::invalid_argument("derivative needs degree >= 1");
  const int k = curve.degree;
  const int n_points = curve.numControlPoints();
  SplineCurve d;
  d.degree = k - 1;
  d.control_points.resize(2, n_points - 1);
  for (int i = 0; i + 1 < n_points; ++i) {
    const double denom = curve.knots(i + k + 1) - curve.knots(i + 1);
    d.control_points.col(i) =
        denom > 0.0
            ? Eigen::Vector2d(k * (curve.control_points.col(i + 1) - curve.control_points.col(i)) / denom)
            : Eigen::Vector2d::Zero();
  }
  d.knots = curve.knots.segment(1, curve.knots.size() - 2);
  return d;
}

CurveDerivatives evalDerivatives(const SplineCurve& curve, double t) {
  if (curve.degree < 1) throw std::invalid_argument("derivatives need degree >= 1");
  checkDomain(curve, t);
  CurveDerivatives out;
  const SplineCurve d1 = derivativeCurve(curve);
  out.first = eval(d1, t);
  if (curve.degree >= 2) out.second = eval(derivativeCurve(d1), t);
  return out;
}

double curvature(const Eigen::Vector2d& d1, const Eigen::Vector2d& d2) {
  return std::abs(signedCurvature(d1, d2));
}

double signedCurvature(const Eigen::Vector2d& d1, const Eigen::Vector2d& d2) {
  const double speed2 = d1.squaredNorm();
  if (speed2 < 1e-12) return 0.0;
  const double cross = d1.x() * d2.y() - d1.y() * d2.x();
  return cross / (speed2 * std::sqrt(speed2));
}

SplineCurve fitWall(const std::vector<Eigen::Vector2d>& points, int degree) {
  if (degree < 1) throw std::invalid_argument("fit degree must be positive");
  if (static_cast<int>(points.size()) < degree + 1)
    throw std::invalid_argument("too few wall points for spline fit");
  SplineCurve curve;
  curve.degree = degree;
  curve.control_points.resize(2, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].allFinite()) throw std::invalid_argument("non-finite wall point");
    curve.control_points.col(static_cast<Eigen::Index>(i)) = points[i];
  }
  curve.knots = makeKnots(static_cast<int>(points.size()), degree);
  return curve;
}

Trajectory offsetTrajectory(const SplineCurve& curve, double distance, int samples, OffsetSide side) {
  if (distance < 0.0) throw std::invalid_argument("offset distance must be nonnegative");
  if (samples < 2) throw std::invalid_argument("need at least two trajectory samples");
  const double signed_distance = side == OffsetSide::kLeft ? distance : -distance;

  const SplineCurve d1 = derivativeCurve(curve);
  SplineCurve d2;
  if (curve.degree >= 2) d2 = derivativeCurve(d1);

  Trajectory traj;
  traj.points.reserve(samples);
  double prev_heading = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double t = static_cast<double>(j) / (samples - 1);
    const Eigen::Vector2d p = eval(curve, t);
    const Eigen::Vector2d v1 = eval(d1, t);
    const Eigen::Vector2d v2 = curve.degree >= 2 ? eval(d2, t) : Eigen::Vector2d::Zero();
    const double kappa = signedCurvature(v1, v2);
    if (signed_distance * kappa >= 1.0 - 1e-9)
      throw std::domain_error("offset distance exceeds radius of curvature");

    TrajectoryPoint tp;
    tp.parameter = t;
    const double speed = v1.norm();
    if (speed > 1e-9) {
      const Eigen::Vector2d left_normal(-v1.y() / speed, v1.x() / speed);
      tp.position = p + signed_distance * left_normal;
      tp.heading = std::atan2(v1.y(), v1.x());
      prev_heading = tp.heading;
    } else {
      tp.position = p;
      tp.heading = prev_heading;
    }
    tp.curvature = kappa / (1.0 - signed_distance * kappa);
    traj.points.push_back(tp);
  }
  return traj;
}

std::vector<Eigen::Vector2d> loadPointCloudCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open point cloud file: " + path);
  std::vector<Eigen::Vector2d> points;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string sx, sy;
    if (!std::getline(row, sx, ',') || !std::getline(row, sy)) {
      if (first) { first = false; continue; }
      throw std::runtime_error("malformed point cloud row: " + line);
    }
    const auto parse = [](const std::string& token, double& out) {
      std::size_t used = 0;
      out = std::stod(token, &used);
      while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
      if (used != token.size()) throw std::invalid_argument("trailing characters");
    };
    try {
      double x = 0.0, y = 0.0;
      parse(sx, x);
      parse(sy, y);
      points.emplace_back(x, y);
    } catch (const std::exception&) {
      if (first) { first = false; continue; }
      throw std::runtime_error("malformed point cloud row: " + line);
    }
    first = false;
  }
  return points;
}

}  // namespace wallfollow::spline
