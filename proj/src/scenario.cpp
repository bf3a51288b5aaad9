#include "wallfollow/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace wallfollow::harness {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& message) {
  throw std::runtime_error("scenario config: " + context + ": " + message);
}

void checkKeys(const json& j, const std::string& context, const std::vector<std::string>& required,
               const std::vector<std::string>& optional = {}) {
  if (!j.is_object()) fail(context, "expected an object");
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                       std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) fail(context, "unknown key '" + key + "'");
  }
  for (const std::string& key : required) {
    if (!j.contains(key)) fail(context, "missing key '" + key + "'");
  }
}

double getNumber(const json& j, const std::string& context, const std::string& key) {
  if (!j.at(key).is_number()) fail(context, "'" + key + "' must be a number");
  return j.at(key).get<double>();
}

double getPositive(const json& j, const std::string& context, const std::string& key) {
  const double v = getNumber(j, context, key);
  if (!(v > 0.0)) fail(context, "'" + key + "' must be positive");
  return v;
}

double getNonNegative(const json& j, const std::string& context, const std::string& key) {
  const double v = getNumber(j, context, key);
  if (!(v >= 0.0)) fail(context, "'" + key + "' must be nonnegative");
  return v;
}

int getInt(const json& j, const std::string& context, const std::string& key, int min_value) {
  if (!j.at(key).is_number_integer()) fail(context, "'" + key + "' must be an integer");
  const auto v = j.at(key).get<long long>();
  if (v < min_value) fail(context, "'" + key + "' must be >= " + std::to_string(min_value));
  return static_cast<int>(v);
}

std::uint64_t getSeed(const json& j, const std::string& context, const std::string& key) {
  if (!j.at(key).is_number_unsigned() && !j.at(key).is_number_integer())
    fail(context, "'" + key + "' must be an integer");
  const auto v = j.at(key).get<long long>();
  if (v < 0) fail(context, "'" + key + "' must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

bool getBool(const json& j, const std::string& context, const std::string& key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) fail(context, "'" + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

Pose parsePose(const json& j, const std::string& context) {
  checkKeys(j, context, {"x", "y", "theta_rad"});
  return {getNumber(j, context, "x"), getNumber(j, context, "y"),
          getNumber(j, context, "theta_rad")};
}

vehicle::DisturbanceConfig parseDisturbance(const json& j, const std::string& context) {
  checkKeys(j, context, {"actuator_gain_omega", "sigma_p_m", "sigma_theta_rad", "noise_seed"},
            {"actuator_bias_omega"});
  vehicle::DisturbanceConfig d;
  d.actuator_gain_omega = getNumber(j, context, "actuator_gain_omega");
  if (d.actuator_gain_omega < 0.0 || d.actuator_gain_omega > 1.0)
    fail(context, "'actuator_gain_omega' must be in [0, 1]");
  if (j.contains("actuator_bias_omega"))
    d.actuator_bias_omega = getNumber(j, context, "actuator_bias_omega");
  d.sigma_p_m = getNonNegative(j, context, "sigma_p_m");
  d.sigma_theta_rad = getNonNegative(j, context, "sigma_theta_rad");
  d.noise_seed = getSeed(j, context, "noise_seed");
  return d;
}

void parseLqr(const json& j, ScenarioConfig& cfg) {
  const std::string context = "lqr";
  checkKeys(j, context, {"q_diag", "r_diag"}, {"tolerance", "max_iterations"});
  const json& q = j.at("q_diag");
  const json& r = j.at("r_diag");
  if (!q.is_array() || q.size() != 3) fail(context, "'q_diag' must be an array of 3 numbers");
  if (!r.is_array() || r.size() != 2) fail(context, "'r_diag' must be an array of 2 numbers");
  cfg.weights.q = Eigen::Matrix3d::Zero();
  cfg.weights.r = Eigen::Matrix2d::Zero();
  for (int i = 0; i < 3; ++i) {
    if (!q[i].is_number() || q[i].get<double>() < 0.0)
      fail(context, "'q_diag' entries must be nonnegative numbers");
    cfg.weights.q(i, i) = q[i].get<double>();
  }
  for (int i = 0; i < 2; ++i) {
    if (!r[i].is_number() || !(r[i].get<double>() > 0.0))
      fail(context, "'r_diag' entries must be positive numbers");
    cfg.weights.r(i, i) = r[i].get<double>();
  }
  if (j.contains("tolerance")) cfg.dare.tolerance = getPositive(j, context, "tolerance");
  if (j.contains("max_iterations")) cfg.dare.max_iterations = getInt(j, context, "max_iterations", 1);
}

matcher::FeedforwardConfig parseFeedforward(const json& j) {
  const std::string context = "feedforward";
  checkKeys(j, context, {"v_ref", "alpha", "search_window"});
  matcher::FeedforwardConfig f;
  f.v_ref = getPositive(j, context, "v_ref");
  f.alpha = getNumber(j, context, "alpha");
  f.search_window = static_cast<std::size_t>(getInt(j, context, "search_window", 1));
  return f;
}

control::SnnOptions parseSnn(const json& j) {
  const std::string context = "snn";
  checkKeys(j, context, {"neurons", "seed_v", "seed_w", "gamma"},
            {"gamma_v", "learning", "per_substep", "norm_radius_m", "dt_neuron_s"});
  control::SnnOptions s;
  s.neurons = getInt(j, context, "neurons", 1);
  s.seed_v = getSeed(j, context, "seed_v");
  s.seed_w = getSeed(j, context, "seed_w");
  s.gamma = getNonNegative(j, context, "gamma");
  s.gamma_v = j.contains("gamma_v") ? getNonNegative(j, context, "gamma_v") : s.gamma;
  s.learning = getBool(j, context, "learning", true);
  s.per_substep = getBool(j, context, "per_substep", false);
  if (j.contains("norm_radius_m")) s.norm_radius_m = getPositive(j, context, "norm_radius_m");
  if (j.contains("dt_neuron_s")) s.dt_neuron_s = getPositive(j, context, "dt_neuron_s");
  return s;
}

ReferenceSpec parseReference(const json& j) {
  const std::string context = "reference";
  if (!j.is_object() || !j.contains("type")) fail(context, "missing 'type'");
  ReferenceSpec ref;
  const std::string type = j.at("type").get<std::string>();
  if (type == "line") {
    checkKeys(j, context, {"type", "y", "x_start", "x_end", "samples"});
    ref.type = ReferenceSpec::Type::kLine;
    ref.y = getNumber(j, context, "y");
  } else if (type == "sinusoid") {
    checkKeys(j, context, {"type", "x_start", "x_end", "samples"});
    ref.type = ReferenceSpec::Type::kSinusoid;
  } else {
    fail(context, "unknown type '" + type + "'");
  }
  ref.x_start = getNumber(j, context, "x_start");
  ref.x_end = getNumber(j, context, "x_end");
  if (!(ref.x_end > ref.x_start)) fail(context, "'x_end' must exceed 'x_start'");
  ref.samples = getInt(j, context, "samples", 2);
  return ref;
}

RoomSpec parseRoom(const json& j) {
  const std::string context = "room";
  checkKeys(j, context, {"side_m", "lidar", "cylinders"});
  RoomSpec room;
  room.side_m = getPositive(j, context, "side_m");
  const json& lidar = j.at("lidar");
  checkKeys(lidar, "room.lidar", {"rays", "max_range_m"});
  room.lidar.rays = getInt(lidar, "room.lidar", "rays", 4);
  room.lidar.max_range_m = getPositive(lidar, "room.lidar", "max_range_m");
  const json& cylinders = j.at("cylinders");
  if (!cylinders.is_array()) fail(context, "'cylinders' must be an array");
  for (const json& c : cylinders) {
    checkKeys(c, "room.cylinders[]", {"x", "y", "r"});
    Cylinder cyl;
    cyl.center = {getNumber(c, "room.cylinders[]", "x"), getNumber(c, "room.cylinders[]", "y")};
    cyl.radius = getPositive(c, "room.cylinders[]", "r");
    room.cylinders.push_back(cyl);
  }
  return room;
}

WallFollowSpec parseWallFollow(const json& j) {
  const std::string context = "wallfollow";
  checkKeys(j, context,
            {"offset_m", "side", "arc_min_deg", "arc_max_deg", "fit_max_range_m", "spacing_m",
             "spacing_growth", "max_retries", "samples", "explore_speed_m_s", "explore_trigger_m",
             "robot_radius_m", "settle_s"});
  WallFollowSpec w;
  w.offset_m = getPositive(j, context, "offset_m");
  const std::string side = j.at("side").get<std::string>();
  if (side == "left")
    w.side = spline::OffsetSide::kLeft;
  else if (side == "right")
    w.side = spline::OffsetSide::kRight;
  else
    fail(context, "'side' must be \"left\" or \"right\"");
  constexpr double kDegToRad = std::numbers::pi / 180.0;
  w.arc_min_rad = getNumber(j, context, "arc_min_deg") * kDegToRad;
  w.arc_max_rad = getNumber(j, context, "arc_max_deg") * kDegToRad;
  if (!(w.arc_max_rad > w.arc_min_rad)) fail(context, "'arc_max_deg' must exceed 'arc_min_deg'");
  w.fit_max_range_m = getPositive(j, context, "fit_max_range_m");
  w.spacing_m = getPositive(j, context, "spacing_m");
  w.spacing_growth = getNumber(j, context, "spacing_growth");
  if (!(w.spacing_growth > 1.0)) fail(context, "'spacing_growth' must exceed 1");
  w.max_retries = getInt(j, context, "max_retries", 0);
  w.samples = getInt(j, context, "samples", 2);
  w.explore_speed_m_s = getPositive(j, context, "explore_speed_m_s");
  w.explore_trigger_m = getPositive(j, context, "explore_trigger_m");
  w.robot_radius_m = getPositive(j, context, "robot_radius_m");
  w.settle_s = getNonNegative(j, context, "settle_s");
  return w;
}

MetricsSpec parseMetrics(const json& j) {
  const std::string context = "metrics";
  checkKeys(j, context, {"e_p_threshold_m", "e_theta_threshold_rad"}, {"window_start_s"});
  MetricsSpec m;
  m.e_p_threshold_m = getPositive(j, context, "e_p_threshold_m");
  m.e_theta_threshold_rad = getPositive(j, context, "e_theta_threshold_rad");
  if (j.contains("window_start_s")) m.window_start_s = getNonNegative(j, context, "window_start_s");
  return m;
}

}  // namespace

ScenarioConfig loadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario config: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("scenario config: " + path + ": " + e.what());
  }

  checkKeys(j, "root",
            {"scenario", "duration_s", "dt_s", "start_pose", "disturbance", "lqr", "feedforward",
             "snn", "metrics"},
            {"plant_substeps", "wheel_base_m", "omega_max_rad_s", "reference", "room", "wallfollow"});

  ScenarioConfig cfg;
  const std::string scenario = j.at("scenario").get<std::string>();
  if (scenario == "a")
    cfg.kind = ScenarioKind::kLineTracking;
  else if (scenario == "b")
    cfg.kind = ScenarioKind::kSinusoidTracking;
  else if (scenario == "c")
    cfg.kind = ScenarioKind::kWallFollowing;
  else
    fail("root", "'scenario' must be \"a\", \"b\" or \"c\"");

  cfg.duration_s = getPositive(j, "root", "duration_s");
  cfg.dt_s = getPositive(j, "root", "dt_s");
  if (j.contains("plant_substeps")) cfg.plant_substeps = getInt(j, "root", "plant_substeps", 1);
  if (j.contains("wheel_base_m")) cfg.wheel_base_m = getPositive(j, "root", "wheel_base_m");
  if (j.contains("omega_max_rad_s")) cfg.omega_max_rad_s = getPositive(j, "root", "omega_max_rad_s");
  cfg.start_pose = parsePose(j.at("start_pose"), "start_pose");
  cfg.disturbance = parseDisturbance(j.at("disturbance"), "disturbance");
  parseLqr(j.at("lqr"), cfg);
  cfg.feedforward = parseFeedforward(j.at("feedforward"));
  cfg.snn = parseSnn(j.at("snn"));
  cfg.metrics = parseMetrics(j.at("metrics"));

  const bool wants_room = cfg.kind == ScenarioKind::kWallFollowing;
  if (wants_room) {
    if (!j.contains("room") || !j.contains("wallfollow"))
      fail("root", "scenario \"c\" requires 'room' and 'wallfollow'");
    if (j.contains("reference")) fail("root", "scenario \"c\" does not take 'reference'");
    cfg.room = parseRoom(j.at("room"));
    cfg.wallfollow = parseWallFollow(j.at("wallfollow"));
    for (const Cylinder& c : cfg.room->cylinders) {
      if (!insideRoom(*cfg.room, c.center)) fail("room", "cylinder center outside the room");
    }
  } else {
    if (!j.contains("reference")) fail("root", "tracking scenarios require 'reference'");
    if (j.contains("room") || j.contains("wallfollow"))
      fail("root", "tracking scenarios do not take 'room' or 'wallfollow'");
    cfg.reference = parseReference(j.at("reference"));
  }
  return cfg;
}

void applySeedOverride(ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.disturbance.noise_seed = seed;
  cfg.snn.seed_v = seed + 1000;
  cfg.snn.seed_w = seed + 2000;
}

control::ControllerConfig makeControllerConfig(const ScenarioConfig& cfg, bool snn_enabled) {
  control::ControllerConfig c;
  c.dt = cfg.dt_s;
  c.omega_max = cfg.omega_max_rad_s;
  c.weights = cfg.weights;
  c.dare = cfg.dare;
  c.feedforward = cfg.feedforward;
  c.snn_enabled = snn_enabled;
  c.snn = cfg.snn;
  return c;
}

}  // namespace wallfollow::harness
