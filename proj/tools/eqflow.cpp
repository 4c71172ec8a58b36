#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "eqflow/errors.hpp"
#include "eqflow/scenario.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"Equivariant harmonic map heat flow scenarios"};
  std::string config_path, scenario, out_dir;
  std::size_t jobs = 0;
  std::int64_t seed = -1;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--scenario", scenario, "Scenario name (overrides the config)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--jobs", jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for randomized audits")->check(CLI::NonNegativeNumber);
  app.footer("Default output root: $EQFLOW_OUTPUT_ROOT, else ./eqflow-out");
  CLI11_PARSE(app, argc, argv);

  try {
    eqflow::RunConfig config;
    if (!config_path.empty()) config = eqflow::load_config(config_path);
    else if (scenario.empty()) throw eqflow::ConfigError("need --config or --scenario");
    if (!scenario.empty()) {
      config.scenario = scenario;
      config.T = eqflow::default_horizon(scenario);
      if (!config_path.empty()) {
        // re-derive the canonical data and horizon unless the file pinned them
        auto j = nlohmann::json::parse(eqflow::read_text(config_path));
        if (!j.contains("spec")) config.spec.reset();
        if (j.contains("T")) config.T = j.at("T").get<double>();
      }
    }
    if (jobs > 0) config.jobs = jobs;
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    if (!out_dir.empty()) {
      config.output_dir = out_dir;
    } else if (config.output_dir.empty()) {
      const char* root = std::getenv("EQFLOW_OUTPUT_ROOT");
      config.output_dir = fs::path(root && *root ? root : "eqflow-out") / config.scenario;
    }
    config.check();

    const auto result = eqflow::run_scenario(config);
    std::cout << result.summary() << "artifacts: " << config.output_dir.string() << "\n";
    return result.exit_code();
  } catch (const eqflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
