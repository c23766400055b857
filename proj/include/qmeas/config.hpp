#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmeas/linalg.hpp"
#include "qmeas/states.hpp"

namespace qmeas {

enum class Command {
  simulate,
  restrict,
  algebra_info,
  breuer,
  interference,
  evolve,
};

std::string command_name(Command command);
std::optional<Command> command_from_name(std::string_view name);

// One batch experiment: amplitudes, eigenvalue assignments, run parameters
// and the command to dispatch. Parsed from a JSON document in which complex
// numbers are always [re, im] pairs.
struct ExperimentConfig {
  Command command = Command::simulate;
  Complex a1;
  Complex a2;
  std::array<double, 3> pointer_eigenvalues{0.0, 1.0, 2.0};
  std::array<double, 2> s_eigenvalues{+1.0, -1.0};
  std::int64_t n_events = 1000;
  std::uint64_t seed = 0;
  std::vector<double> times;  // evolve only; empty means the default grid
  std::string output_path;    // empty means stdout

  bool operator==(const ExperimentConfig& other) const;
};

// Outcome of parsing a config document: either a validated config (with a
// flag recording whether the amplitudes needed renormalizing) or the list
// of field-level errors.
struct ParseOutcome {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;
  bool normalized_with_warning = false;

  bool ok() const { return config.has_value(); }
};

ParseOutcome parse_config(const std::string& document);

// Canonical JSON form; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& config);

// State serialization with complex entries as [re, im] pairs.
std::string pure_state_to_json(const PureState& psi);
std::string density_state_to_json(const DensityState& rho);
PureState pure_state_from_json(const std::string& document);
DensityState density_state_from_json(const std::string& document);

}  // namespace qmeas
