#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmeas/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Batch runner for the observer-restricted measurement toolkit"};

  std::string config_path;
  qmeas::RunOptions options;
  std::string output_path;
  std::uint64_t seed = 0;
  std::int64_t events = 0;

  app.add_option("--config", config_path, "Experiment configuration document (JSON)")
      ->required();
  auto* output_opt = app.add_option("--output", output_path, "Output path (overrides config)");
  app.add_flag("--no-timestamp", options.no_timestamp, "Suppress the timestamp header line");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides config)");
  auto* events_opt = app.add_option("--events", events, "Event count (overrides config)");

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read config '" << config_path << "'\n";
    return 2;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  const qmeas::ParseOutcome parsed = qmeas::parse_config(buffer.str());
  if (!parsed.ok()) {
    std::cerr << "error: invalid config '" << config_path << "'\n";
    for (const auto& e : parsed.errors) std::cerr << "  " << e << "\n";
    return 2;
  }
  if (parsed.normalized_with_warning)
    std::cerr << "warning: amplitudes renormalized to unit norm\n";

  if (output_opt->count() > 0) options.output_override = output_path;
  if (seed_opt->count() > 0) options.seed_override = seed;
  if (events_opt->count() > 0) options.events_override = events;

  return qmeas::run_command(*parsed.config, options);
}
