#include "qmeas/runner.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "qmeas/algebra.hpp"
#include "qmeas/measurement.hpp"
#include "qmeas/stochastic.hpp"

namespace qmeas {

namespace {

// Output tables carry 12 significant digits in a fixed column order so the
// same config replays byte-identically.
std::string fmt(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", x);
  return buffer;
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

void write_matrix(std::ostream& out, const std::string& name, const ComplexMatrix& m) {
  out << "# matrix " << name << " dim " << m.rows() << "\n";
  out << "row\tcol\tre\tim\n";
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      out << r << "\t" << c << "\t" << fmt(m(r, c).real()) << "\t" << fmt(m(r, c).imag())
          << "\n";
}

MeasurementModel model_from_config(const ExperimentConfig& config) {
  return make_model(config.a1, config.a2, config.s_eigenvalues, config.pointer_eigenvalues);
}

void run_simulate(const ExperimentConfig& config, std::int64_t n_events,
                  std::uint64_t seed, std::ostream& out) {
  const MeasurementModel model = model_from_config(config);
  const RunStatistics stats = run_ensemble(model, n_events, seed);

  out << "# statistics\n";
  out << "n_events\t" << stats.n_events << "\n";
  out << "seed\t" << stats.seed << "\n";
  out << "branch\tcount\tfrequency\texpected\n";
  for (std::size_t b = 0; b < 2; ++b)
    out << (b + 1) << "\t" << stats.counts[b] << "\t" << fmt(stats.empirical_frequencies[b])
        << "\t" << fmt(stats.expected_probabilities[b]) << "\n";
  out << "max_abs_deviation\t" << fmt(stats.max_abs_deviation) << "\n";

  const CounterRng rng{seed};
  out << "# events\n";
  out << "event_index\toutcome_branch\tpointer_value\n";
  for (std::int64_t i = 0; i < n_events; ++i) {
    const int branch = draw_branch(model, rng, static_cast<std::uint64_t>(i));
    out << i << "\t" << branch << "\t"
        << fmt(model.pointer_eigenvalues[static_cast<std::size_t>(branch)]) << "\n";
  }
}

void run_restrict(const ExperimentConfig& config, std::ostream& out) {
  const MeasurementModel model = model_from_config(config);
  const DensityState restricted = observer_restricted_density(final_pure_state(model));
  write_matrix(out, "observer_restricted_density", restricted.matrix);

  const OperatorAlgebra pointer_algebra = observer_pointer_algebra(model);
  const ClassicalDistribution dist = classical_state(
      restrict_state(final_pure_state(model), pointer_algebra), pointer_observable(model));
  out << "# classical_distribution\n";
  out << "value\tprobability\n";
  for (const auto& outcome : dist.outcomes)
    out << fmt(outcome.value) << "\t" << fmt(outcome.probability) << "\n";
  out << "extremal\t" << fmt_bool(is_extremal(dist, 1e-9)) << "\n";
}

void run_algebra_info(const ExperimentConfig& config, std::ostream& out) {
  const MeasurementModel model = model_from_config(config);
  const OperatorAlgebra alg = observer_pointer_algebra(model);
  out << "# pointer_algebra\n";
  out << "space_dim\t" << alg.space_dim << "\n";
  out << "basis_dim\t" << alg.span_dim() << "\n";
  out << "commutative\t" << fmt_bool(alg.commutative) << "\n";
  out << "unital\t" << fmt_bool(alg.unital) << "\n";
  for (Index k = 0; k < alg.span_dim(); ++k)
    write_matrix(out, "basis_" + std::to_string(k), alg.basis[static_cast<std::size_t>(k)]);
  const auto projections = minimal_projections(alg);
  out << "# minimal_projections count " << projections.size() << "\n";
  for (std::size_t k = 0; k < projections.size(); ++k)
    write_matrix(out, "projection_" + std::to_string(k), projections[k]);
}

void run_breuer(const ExperimentConfig& config, std::ostream& out) {
  const MeasurementModel model = model_from_config(config);
  const DensityState pure = final_pure_state(model);
  const DensityState mixed = final_mixed_state(model);
  const OperatorAlgebra pointer_algebra = observer_pointer_algebra(model);
  const OperatorAlgebra full = full_matrix_algebra(6);
  out << "# breuer\n";
  out << "pointer_algebra_coincide\t"
      << fmt_bool(breuer_indistinguishable(pure, mixed, pointer_algebra, 1e-10)) << "\n";
  out << "full_algebra_coincide\t"
      << fmt_bool(breuer_indistinguishable(pure, mixed, full, 1e-10)) << "\n";
  out << "state_distance\t" << fmt(state_distance(pure, mixed)) << "\n";
}

void run_interference(const ExperimentConfig& config, std::ostream& out) {
  const MeasurementModel model = model_from_config(config);
  out << "# interference\n";
  out << "pure\t" << fmt(interference_expectation(final_pure_state(model))) << "\n";
  out << "mixed\t" << fmt(interference_expectation(final_mixed_state(model))) << "\n";
}

void run_evolve(const ExperimentConfig& config, std::ostream& out) {
  const MeasurementModel model = model_from_config(config);
  std::vector<double> times = config.times;
  if (times.empty())
    for (int i = 0; i <= 10; ++i)
      times.push_back(model.t0 + (model.t1 - model.t0) * double(i) / 10.0);
  const auto trajectory = eta_trajectory(model, times);
  out << "# eta_trajectory\n";
  out << "t\teta_0\teta_1\teta_2\n";
  for (std::size_t k = 0; k < times.size(); ++k)
    out << fmt(times[k]) << "\t" << fmt(trajectory[k].eta_i(0)) << "\t"
        << fmt(trajectory[k].eta_i(1)) << "\t" << fmt(trajectory[k].eta_i(2)) << "\n";
}

}  // namespace

int run_command_to_stream(const ExperimentConfig& config, const RunOptions& options,
                          std::ostream& out) {
  const std::int64_t n_events = options.events_override.value_or(config.n_events);
  const std::uint64_t seed = options.seed_override.value_or(config.seed);
  if (n_events < 1) {
    std::cerr << "error: n_events must be positive\n";
    return 2;
  }

  out << "# qmeas " << command_name(config.command) << "\n";
  if (!options.no_timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "# timestamp " << stamp << "\n";
  }

  try {
    switch (config.command) {
      case Command::simulate: run_simulate(config, n_events, seed, out); break;
      case Command::restrict: run_restrict(config, out); break;
      case Command::algebra_info: run_algebra_info(config, out); break;
      case Command::breuer: run_breuer(config, out); break;
      case Command::interference: run_interference(config, out); break;
      case Command::evolve: run_evolve(config, out); break;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return out.good() ? 0 : 1;
}

int run_command(const ExperimentConfig& config, const RunOptions& options) {
  const std::string path = options.output_override.value_or(config.output_path);
  if (path.empty()) return run_command_to_stream(config, options, std::cout);

  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open output path '" << path << "'\n";
    return 2;
  }
  const int status = run_command_to_stream(config, options, out);
  out.flush();
  if (!out) {
    std::cerr << "error: failed writing output to '" << path << "'\n";
    return 2;
  }
  return status;
}

}  // namespace qmeas
