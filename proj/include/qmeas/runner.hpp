#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "qmeas/config.hpp"

namespace qmeas {

// Invocation-level overrides and switches from the command line.
struct RunOptions {
  std::optional<std::string> output_override;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::int64_t> events_override;
  bool no_timestamp = false;
};

// Dispatches the configured command, writing the report to the configured
// output path (stdout when none). Returns the process exit status: 0 on
// success, nonzero with a diagnostic on stderr for validation or numerical
// failures.
int run_command(const ExperimentConfig& config, const RunOptions& options = {});

// Same, but writing to a caller-supplied stream (for tests).
int run_command_to_stream(const ExperimentConfig& config, const RunOptions& options,
                          std::ostream& out);

}  // namespace qmeas
