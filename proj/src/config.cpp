#include "qmeas/config.hpp"

#include <cmath>

#include <json.hpp>

namespace qmeas {

namespace {

using nlohmann::ordered_json;

// Amplitude-normalization policy: deviations of |a|^2 from 1 up to 1e-6 are
// silently corrected, up to 1e-2 corrected with a warning, beyond rejected.
constexpr double norm_silent = 1e-6;
constexpr double norm_warn = 1e-2;

std::optional<Complex> complex_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    return std::nullopt;
  return Complex(j[0].get<double>(), j[1].get<double>());
}

ordered_json complex_to_json(Complex z) {
  return ordered_json::array({z.real(), z.imag()});
}

}  // namespace

std::string command_name(Command command) {
  switch (command) {
    case Command::simulate: return "simulate";
    case Command::restrict: return "restrict";
    case Command::algebra_info: return "algebra-info";
    case Command::breuer: return "breuer";
    case Command::interference: return "interference";
    case Command::evolve: return "evolve";
  }
  return "?";
}

std::optional<Command> command_from_name(std::string_view name) {
  for (Command c : {Command::simulate, Command::restrict, Command::algebra_info,
                    Command::breuer, Command::interference, Command::evolve})
    if (command_name(c) == name) return c;
  return std::nullopt;
}

bool ExperimentConfig::operator==(const ExperimentConfig& other) const {
  return command == other.command && a1 == other.a1 && a2 == other.a2 &&
         pointer_eigenvalues == other.pointer_eigenvalues &&
         s_eigenvalues == other.s_eigenvalues && n_events == other.n_events &&
         seed == other.seed && times == other.times && output_path == other.output_path;
}

ParseOutcome parse_config(const std::string& document) {
  ParseOutcome outcome;
  ordered_json j = ordered_json::parse(document, nullptr, false);
  if (j.is_discarded()) {
    outcome.errors.push_back("document is not valid JSON");
    return outcome;
  }
  if (!j.is_object()) {
    outcome.errors.push_back("document must be a JSON object");
    return outcome;
  }

  ExperimentConfig config;

  if (!j.contains("command")) {
    outcome.errors.push_back("command: missing required field");
  } else if (!j["command"].is_string()) {
    outcome.errors.push_back("command: must be a string");
  } else if (auto c = command_from_name(j["command"].get<std::string>())) {
    config.command = *c;
  } else {
    outcome.errors.push_back("command: unknown command '" +
                             j["command"].get<std::string>() + "'");
  }

  if (!j.contains("amplitudes")) {
    outcome.errors.push_back("amplitudes: missing required field");
  } else if (!j["amplitudes"].is_array() || j["amplitudes"].size() != 2) {
    outcome.errors.push_back("amplitudes: must be two [re, im] pairs");
  } else {
    const auto a1 = complex_from_json(j["amplitudes"][0]);
    const auto a2 = complex_from_json(j["amplitudes"][1]);
    if (!a1 || !a2) {
      outcome.errors.push_back("amplitudes: entries must be [re, im] pairs");
    } else {
      const double norm2 = std::norm(*a1) + std::norm(*a2);
      const double deviation = std::abs(norm2 - 1.0);
      if (norm2 == 0.0 || deviation > norm_warn) {
        outcome.errors.push_back("amplitudes: norm^2 = " + std::to_string(norm2) +
                                 " is not normalizable");
      } else {
        const double scale = 1.0 / std::sqrt(norm2);
        config.a1 = *a1 * scale;
        config.a2 = *a2 * scale;
        if (deviation > norm_silent) outcome.normalized_with_warning = true;
      }
    }
  }

  if (j.contains("pointer_eigenvalues")) {
    const auto& p = j["pointer_eigenvalues"];
    if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() ||
        !p[2].is_number()) {
      outcome.errors.push_back("pointer_eigenvalues: must be three reals");
    } else {
      config.pointer_eigenvalues = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
      const auto& q = config.pointer_eigenvalues;
      if (q[0] == q[1] || q[0] == q[2] || q[1] == q[2])
        outcome.errors.push_back("pointer_eigenvalues: must be pairwise distinct");
    }
  }

  if (j.contains("s_eigenvalues")) {
    const auto& s = j["s_eigenvalues"];
    if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number())
      outcome.errors.push_back("s_eigenvalues: must be two reals");
    else
      config.s_eigenvalues = {s[0].get<double>(), s[1].get<double>()};
  }

  if (j.contains("n_events")) {
    if (!j["n_events"].is_number_integer() || j["n_events"].get<std::int64_t>() < 1)
      outcome.errors.push_back("n_events: must be a positive integer");
    else
      config.n_events = j["n_events"].get<std::int64_t>();
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      outcome.errors.push_back("seed: must be an integer");
    else if (j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() < 0)
      outcome.errors.push_back("seed: must be non-negative");
    else
      config.seed = j["seed"].get<std::uint64_t>();
  }

  if (j.contains("times")) {
    if (!j["times"].is_array()) {
      outcome.errors.push_back("times: must be a list of reals");
    } else {
      for (const auto& t : j["times"]) {
        if (!t.is_number()) {
          outcome.errors.push_back("times: must be a list of reals");
          config.times.clear();
          break;
        }
        config.times.push_back(t.get<double>());
      }
    }
  }

  if (j.contains("output_path")) {
    if (!j["output_path"].is_string())
      outcome.errors.push_back("output_path: must be a string");
    else
      config.output_path = j["output_path"].get<std::string>();
  }

  if (outcome.errors.empty()) outcome.config = std::move(config);
  return outcome;
}

std::string serialize_config(const ExperimentConfig& config) {
  ordered_json j;
  j["command"] = command_name(config.command);
  j["amplitudes"] = ordered_json::array({complex_to_json(config.a1), complex_to_json(config.a2)});
  j["pointer_eigenvalues"] = config.pointer_eigenvalues;
  j["s_eigenvalues"] = config.s_eigenvalues;
  j["n_events"] = config.n_events;
  j["seed"] = config.seed;
  if (!config.times.empty()) j["times"] = config.times;
  if (!config.output_path.empty()) j["output_path"] = config.output_path;
  return j.dump(2);
}

std::string pure_state_to_json(const PureState& psi) {
  ordered_json j;
  j["dim"] = psi.dim();
  ordered_json amps = ordered_json::array();
  for (Index i = 0; i < psi.dim(); ++i) amps.push_back(complex_to_json(psi.amplitudes(i)));
  j["amplitudes"] = std::move(amps);
  return j.dump(2);
}

std::string density_state_to_json(const DensityState& rho) {
  ordered_json j;
  j["dim"] = rho.dim();
  ordered_json factors = ordered_json::array();
  for (const auto& f : rho.spec.factors)
    factors.push_back(ordered_json::array({f.label, f.dim}));
  j["factors"] = std::move(factors);
  ordered_json rows = ordered_json::array();
  for (Index r = 0; r < rho.dim(); ++r) {
    ordered_json row = ordered_json::array();
    for (Index c = 0; c < rho.dim(); ++c) row.push_back(complex_to_json(rho.matrix(r, c)));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j.dump(2);
}

PureState pure_state_from_json(const std::string& document) {
  const ordered_json j = ordered_json::parse(document);
  const auto& amps = j.at("amplitudes");
  ComplexVector v(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto z = complex_from_json(amps[i]);
    if (!z) throw std::invalid_argument("pure_state_from_json: entries must be [re, im] pairs");
    v(static_cast<Index>(i)) = *z;
  }
  return PureState(std::move(v));
}

DensityState density_state_from_json(const std::string& document) {
  const ordered_json j = ordered_json::parse(document);
  SpaceSpec spec;
  for (const auto& f : j.at("factors"))
    spec.factors.push_back({f.at(0).get<std::string>(), f.at(1).get<Index>()});
  const auto& rows = j.at("matrix");
  ComplexMatrix m(rows.size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const auto z = complex_from_json(rows[r][c]);
      if (!z) throw std::invalid_argument("density_state_from_json: entries must be [re, im] pairs");
      m(static_cast<Index>(r), static_cast<Index>(c)) = *z;
    }
  return {std::move(m), std::move(spec)};
}

}  // namespace qmeas
