#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qmeas/config.hpp"
#include "qmeas/runner.hpp"

using namespace qmeas;

namespace {

std::string run_to_string(const ExperimentConfig& config, RunOptions options = {}) {
  options.no_timestamp = true;
  std::ostringstream out;
  REQUIRE(run_command_to_stream(config, options, out) == 0);
  return out.str();
}

ExperimentConfig parse_or_fail(const std::string& document) {
  const ParseOutcome outcome = parse_config(document);
  if (!outcome.ok())
    for (const auto& e : outcome.errors) MESSAGE(e);
  REQUIRE(outcome.ok());
  return *outcome.config;
}

}  // namespace

TEST_CASE("parse_config: minimal simulate document") {
  const ExperimentConfig config = parse_or_fail(R"({
    "amplitudes": [[0.7071, 0], [0.7071, 0]],
    "command": "simulate",
    "n_events": 1000,
    "seed": 42
  })");
  CHECK(config.command == Command::simulate);
  CHECK(config.n_events == 1000);
  CHECK(config.seed == 42);
  // near-unit input is normalized exactly
  CHECK(std::abs(std::norm(config.a1) + std::norm(config.a2) - 1.0) < 1e-15);
  CHECK(config.pointer_eigenvalues == std::array<double, 3>{0.0, 1.0, 2.0});
  CHECK(config.s_eigenvalues == std::array<double, 2>{+1.0, -1.0});
}

TEST_CASE("parse_config: rejection cases") {
  ParseOutcome outcome = parse_config(R"({"amplitudes": [[1, 0], [1, 0]], "command": "simulate"})");
  CHECK_FALSE(outcome.ok());
  REQUIRE(outcome.errors.size() == 1);
  CHECK(outcome.errors[0].find("not normalizable") != std::string::npos);

  outcome = parse_config(R"({"command": "simulate"})");
  CHECK_FALSE(outcome.ok());

  outcome = parse_config(R"({"amplitudes": [[1, 0], [0, 0]], "command": "collapse"})");
  CHECK_FALSE(outcome.ok());
  CHECK(outcome.errors[0].find("unknown command") != std::string::npos);

  outcome = parse_config("not json at all");
  CHECK_FALSE(outcome.ok());

  outcome = parse_config(
      R"({"amplitudes": [[1, 0], [0, 0]], "command": "simulate", "pointer_eigenvalues": [1, 1, 2]})");
  CHECK_FALSE(outcome.ok());

  outcome = parse_config(
      R"({"amplitudes": [[1, 0], [0, 0]], "command": "simulate", "n_events": 0})");
  CHECK_FALSE(outcome.ok());
}

TEST_CASE("parse_config: warning band normalization") {
  // norm^2 deviates by ~2e-3: accepted with a warning, rescaled to unit norm
  const ParseOutcome outcome = parse_config(
      R"({"amplitudes": [[0.6008, 0], [0.8, 0]], "command": "interference"})");
  REQUIRE(outcome.ok());
  CHECK(outcome.normalized_with_warning);
  CHECK(std::abs(std::norm(outcome.config->a1) + std::norm(outcome.config->a2) - 1.0) < 1e-14);
}

TEST_CASE("config round-trip through serialize and parse") {
  ExperimentConfig config;
  config.command = Command::evolve;
  config.a1 = Complex(0.6, 0.0);
  config.a2 = Complex(0.0, 0.8);
  config.pointer_eigenvalues = {0.0, 0.5, 2.5};
  config.s_eigenvalues = {2.0, -2.0};
  config.n_events = 12345;
  config.seed = 987654321;
  config.times = {0.0, 0.1, 0.9};
  config.output_path = "out.tsv";

  const ExperimentConfig reparsed = parse_or_fail(serialize_config(config));
  CHECK(reparsed == config);
}

TEST_CASE("interference command reports the cross term for pure and zero for mixed") {
  const ExperimentConfig config = parse_or_fail(
      R"({"amplitudes": [[0.6, 0], [0.8, 0]], "command": "interference"})");
  const std::string output = run_to_string(config);
  CHECK(output.find("pure\t0.96\n") != std::string::npos);
  CHECK(output.find("mixed\t0\n") != std::string::npos);
}

TEST_CASE("breuer command: coincidence on the pointer algebra only") {
  const ExperimentConfig config = parse_or_fail(
      R"({"amplitudes": [[0.7071067811865476, 0], [0.7071067811865476, 0]], "command": "breuer"})");
  const std::string output = run_to_string(config);
  CHECK(output.find("pointer_algebra_coincide\ttrue") != std::string::npos);
  CHECK(output.find("full_algebra_coincide\tfalse") != std::string::npos);
}

TEST_CASE("restrict command: eigenstate input gives a point mass") {
  const ExperimentConfig config = parse_or_fail(
      R"({"amplitudes": [[1, 0], [0, 0]], "command": "restrict"})");
  const std::string output = run_to_string(config);
  CHECK(output.find("1\t1\t1\t0") != std::string::npos);  // R_O entry (1,1) = 1
  CHECK(output.find("extremal\ttrue") != std::string::npos);
  CHECK(output.find("1\t1\n") != std::string::npos);  // outcome value 1, probability 1
}

TEST_CASE("algebra-info command reports the commutative pointer algebra") {
  const ExperimentConfig config = parse_or_fail(
      R"({"amplitudes": [[0.6, 0], [0.8, 0]], "command": "algebra-info"})");
  const std::string output = run_to_string(config);
  CHECK(output.find("basis_dim\t3") != std::string::npos);
  CHECK(output.find("commutative\ttrue") != std::string::npos);
  CHECK(output.find("unital\ttrue") != std::string::npos);
  CHECK(output.find("# minimal_projections count 3") != std::string::npos);
}

TEST_CASE("evolve command emits the record distribution over requested times") {
  const ExperimentConfig config = parse_or_fail(
      R"({"amplitudes": [[0.6, 0], [0.8, 0]], "command": "evolve", "times": [0.0, 1.0]})");
  const std::string output = run_to_string(config);
  CHECK(output.find("t\teta_0\teta_1\teta_2") != std::string::npos);
  CHECK(output.find("0\t1\t0\t0") != std::string::npos);

  // final line: t = 1 with eta = (0, 0.36, 0.64) up to numerical dust
  std::istringstream lines(output);
  std::string line, last;
  while (std::getline(lines, line))
    if (!line.empty()) last = line;
  std::istringstream cells(last);
  double t = -1.0, eta0 = -1.0, eta1 = -1.0, eta2 = -1.0;
  cells >> t >> eta0 >> eta1 >> eta2;
  CHECK(t == 1.0);
  CHECK(std::abs(eta0) < 1e-12);
  CHECK(std::abs(eta1 - 0.36) < 1e-12);
  CHECK(std::abs(eta2 - 0.64) < 1e-12);
}

TEST_CASE("simulate command: frequencies within 4 sigma, deterministic replay") {
  const ExperimentConfig config = parse_or_fail(R"({
    "amplitudes": [[0.6, 0], [0.8, 0]],
    "command": "simulate",
    "n_events": 100000,
    "seed": 7
  })");
  const std::string first = run_to_string(config);
  const std::string second = run_to_string(config);
  CHECK(first == second);

  // spot-check the frequency line: branch 2 close to 0.64
  std::istringstream lines(first);
  std::string line;
  double freq2 = -1.0;
  while (std::getline(lines, line)) {
    if (line.rfind("2\t", 0) == 0 && line.find("0.64") != std::string::npos) {
      std::istringstream cells(line);
      std::string branch, count, freq;
      std::getline(cells, branch, '\t');
      std::getline(cells, count, '\t');
      std::getline(cells, freq, '\t');
      freq2 = std::stod(freq);
      break;
    }
  }
  REQUIRE(freq2 >= 0.0);
  CHECK(std::abs(freq2 - 0.64) < 4.0 * std::sqrt(0.64 * 0.36 / 100000.0));

  // event log section with the fixed column order
  CHECK(first.find("event_index\toutcome_branch\tpointer_value") != std::string::npos);
}

TEST_CASE("seed and event count overrides change the run") {
  const ExperimentConfig config = parse_or_fail(R"({
    "amplitudes": [[0.7071067811865476, 0], [0.7071067811865476, 0]],
    "command": "simulate",
    "n_events": 1000,
    "seed": 7
  })");
  RunOptions options;
  options.events_override = 500;
  const std::string overridden = run_to_string(config, options);
  CHECK(overridden.find("n_events\t500") != std::string::npos);

  RunOptions reseeded;
  reseeded.seed_override = 8;
  CHECK(run_to_string(config, reseeded) != run_to_string(config));
}

TEST_CASE("run_command writes to the configured output path") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "qmeas_cli_test_output.tsv";
  ExperimentConfig config = parse_or_fail(
      R"({"amplitudes": [[0.6, 0], [0.8, 0]], "command": "interference"})");
  config.output_path = path.string();
  RunOptions options;
  options.no_timestamp = true;
  REQUIRE(run_command(config, options) == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str().find("pure\t0.96") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("run_command fails cleanly on an unwritable output path") {
  ExperimentConfig config = parse_or_fail(
      R"({"amplitudes": [[0.6, 0], [0.8, 0]], "command": "interference"})");
  config.output_path = "/nonexistent-dir/qmeas.out";
  CHECK(run_command(config) != 0);
}

TEST_CASE("state serialization round-trips with [re, im] pairs") {
  ComplexVector v(3);
  v << Complex(0.6, 0.0), Complex(0.0, 0.8), Complex(0.0, 0.0);
  const PureState psi{v};
  const PureState back = pure_state_from_json(pure_state_to_json(psi));
  CHECK((back.amplitudes - psi.amplitudes).cwiseAbs().maxCoeff() == 0.0);
  CHECK(pure_state_to_json(psi).find("[\n      0.6,\n      0.0\n    ]") != std::string::npos);

  const SpaceSpec spec{{{"S", 2}, {"O", 3}}};
  const DensityState rho = density_from_pure(
      PureState((ComplexVector(6) << 0.6, 0, 0, Complex(0, 0.8), 0, 0).finished()), spec);
  const DensityState rho_back = density_state_from_json(density_state_to_json(rho));
  CHECK(state_distance(rho, rho_back) == 0.0);
  CHECK(rho_back.spec == spec);
}
