#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wallfollow/csvio.hpp"
#include "wallfollow/scenario.hpp"
#include "wallfollow/simulation.hpp"

namespace {

using namespace wallfollow;

std::string scenarioName(harness::ScenarioKind kind) {
  switch (kind) {
    case harness::ScenarioKind::kLineTracking: return "a";
    case harness::ScenarioKind::kSinusoidTracking: return "b";
    case harness::ScenarioKind::kWallFollowing: return "c";
  }
  return "?";
}

void printSummary(const std::string& controller, const harness::RunResult& result) {
  std::cout << controller << ": mae=" << io::formatDouble(result.metrics.mae);
  if (result.metrics.convergence_time_s)
    std::cout << " convergence_time_s=" << io::formatDouble(*result.metrics.convergence_time_s);
  else
    std::cout << " convergence_time_s=none";
  std::cout << " path_length_m=" << io::formatDouble(result.metrics.path_length_m)
            << " collided=" << (result.collided ? "yes" : "no") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive wall-following simulation"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "Run a scenario");
  std::string scenario;
  std::string controller = "both";
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool dump_spikes = false;
  run->add_option("--scenario", scenario, "Scenario: a, b or c")
      ->required()
      ->check(CLI::IsMember({"a", "b", "c"}));
  run->add_option("--controller", controller, "Controller: snn, lqr or both")
      ->check(CLI::IsMember({"snn", "lqr", "both"}));
  run->add_option("--config", config_path, "Scenario config file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--seed", seed, "Base seed: noise, snn seeds derive from it");
  run->add_flag("--dump-spikes", dump_spikes, "Write spike rasters for the snn run");

  CLI11_PARSE(app, argc, argv);

  try {
    harness::ScenarioConfig cfg = harness::loadScenario(config_path);
    if (scenarioName(cfg.kind) != scenario)
      throw std::runtime_error("config is for scenario \"" + scenarioName(cfg.kind) +
                               "\", not \"" + scenario + "\"");
    if (seed) harness::applySeedOverride(cfg, *seed);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path out(out_dir);

    std::vector<io::MetricsRow> metrics;
    const bool want_snn = controller == "snn" || controller == "both";
    const bool want_lqr = controller == "lqr" || controller == "both";

    if (want_snn) {
      harness::RunOptions options{true, dump_spikes};
      const harness::RunResult result = harness::runScenario(cfg, options);
      io::writeLogCsv((out / "log_snn.csv").string(), result.log);
      if (dump_spikes) {
        io::writeSpikesCsv((out / "spikes_v.csv").string(), result.spikes_v);
        io::writeSpikesCsv((out / "spikes_w.csv").string(), result.spikes_w);
      }
      metrics.push_back({scenario, "snn", cfg.disturbance.noise_seed, result.metrics, result.collided});
      printSummary("snn", result);
    }
    if (want_lqr) {
      harness::RunOptions options{false, false};
      const harness::RunResult result = harness::runScenario(cfg, options);
      io::writeLogCsv((out / "log_lqr.csv").string(), result.log);
      metrics.push_back({scenario, "lqr", cfg.disturbance.noise_seed, result.metrics, result.collided});
      printSummary("lqr", result);
    }

    io::writeMetricsCsv((out / "metrics.csv").string(), metrics);
    if (cfg.room) io::writeRoomJson((out / "room.json").string(), *cfg.room);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
