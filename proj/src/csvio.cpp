#include "wallfollow/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace wallfollow::io {
namespace {

std::ofstream openOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

void appendTwist(std::string& row, const wallfollow::Twist& u) {
  row += ',';
  row += formatDouble(u.v);
  row += ',';
  row += formatDouble(u.omega);
}

}  // namespace

std::string formatDouble(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void writeLogCsv(const std::string& path, const std::vector<harness::StepRecord>& log) {
  std::ofstream out = openOut(path);
  out << "t,x,y,theta,meas_x,meas_y,meas_theta,match_index,e_p,e_theta,"
         "u_lqr_v,u_lqr_w,u_ff_v,u_ff_w,u_adapt_v,u_adapt_w,u_v,u_w\n";
  for (const harness::StepRecord& r : log) {
    std::string row = formatDouble(r.t);
    for (const double v : {r.true_pose.x, r.true_pose.y, r.true_pose.theta, r.measured.x,
                           r.measured.y, r.measured.theta}) {
      row += ',';
      row += formatDouble(v);
    }
    row += ',';
    row += std::to_string(r.match_index);
    row += ',';
    row += formatDouble(r.e_p);
    row += ',';
    row += formatDouble(r.e_theta);
    appendTwist(row, r.u_lqr);
    appendTwist(row, r.u_ff);
    appendTwist(row, r.u_adaptive);
    appendTwist(row, r.u_total);
    row += '\n';
    out << row;
  }
}

void writeMetricsCsv(const std::string& path, const std::vector<MetricsRow>& rows) {
  std::ofstream out = openOut(path);
  out << "scenario,controller,seed,mae,convergence_time_s,path_length_m,final_e_p,final_e_theta,"
         "collided\n";
  for (const MetricsRow& r : rows) {
    std::string row = r.scenario;
    row += ',';
    row += r.controller;
    row += ',';
    row += std::to_string(r.seed);
    row += ',';
    row += formatDouble(r.metrics.mae);
    row += ',';
    row += r.metrics.convergence_time_s ? formatDouble(*r.metrics.convergence_time_s) : "nan";
    row += ',';
    row += formatDouble(r.metrics.path_length_m);
    row += ',';
    row += formatDouble(r.metrics.final_e_p);
    row += ',';
    row += formatDouble(r.metrics.final_e_theta);
    row += ',';
    row += r.collided ? "1" : "0";
    row += '\n';
    out << row;
  }
}

void writeSpikesCsv(const std::string& path, const std::vector<snn::SpikeEvent>& spikes) {
  std::ofstream out = openOut(path);
  out << "t,neuron_index\n";
  for (const snn::SpikeEvent& s : spikes) {
    out << formatDouble(s.t) << ',' << s.neuron << '\n';
  }
}

void writeRoomJson(const std::string& path, const harness::RoomSpec& room) {
  nlohmann::json j;
  j["side_m"] = room.side_m;
  j["lidar"] = {{"rays", room.lidar.rays}, {"max_range_m", room.lidar.max_range_m}};
  j["cylinders"] = nlohmann::json::array();
  for (const harness::Cylinder& c : room.cylinders) {
    j["cylinders"].push_back({{"x", c.center.x()}, {"y", c.center.y()}, {"r", c.radius}});
  }
  std::ofstream out = openOut(path);
  out << j.dump(2) << '\n';
}

}  // namespace wallfollow::io
