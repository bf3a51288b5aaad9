#pragma once

#include <string>
#include <vector>

#include "wallfollow/lidar.hpp"
#include "wallfollow/metrics.hpp"
#include "wallfollow/snn.hpp"

namespace wallfollow::io {

// Locale-independent shortest round-trip formatting.
std::string formatDouble(double value);

// Columns: t, true pose, measured pose, match index, error terms, and the
// control decomposition. Identical runs produce byte-identical files.
void writeLogCsv(const std::string& path, const std::vector<harness::StepRecord>& log);

struct MetricsRow {
  std::string scenario;
  std::string controller;
  std::uint64_t seed = 0;
  harness::Metrics metrics;
  bool collided = false;
};

void writeMetricsCsv(const std::string& path, const std::vector<MetricsRow>& rows);

// Rows of "t,neuron_index", one per spike.
void writeSpikesCsv(const std::string& path, const std::vector<snn::SpikeEvent>& spikes);

// Room layout as JSON (side length, lidar, cylinders).
void writeRoomJson(const std::string& path, const harness::RoomSpec& room);

}  // namespace wallfollow::io
