#include "qmeas/stochastic.hpp"

#include <algorithm>
#include <cmath>

namespace qmeas {

namespace {

// SplitMix64 output function; with the golden-gamma increment this yields
// the event_index-th element of the SplitMix64 stream started at `seed`.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

double CounterRng::uniform_at(std::uint64_t event_index) const {
  return double(splitmix64_at(seed, event_index) >> 11) * 0x1.0p-53;
}

int draw_branch(const MeasurementModel& model, const CounterRng& rng,
                std::uint64_t event_index) {
  return rng.uniform_at(event_index) < std::norm(model.a1) ? 1 : 2;
}

EventRecord sample_event(const MeasurementModel& model, const CounterRng& rng,
                         std::uint64_t event_index) {
  const int branch = draw_branch(model, rng, event_index);
  ComplexVector record = ComplexVector::Zero(3);
  record(branch) = 1.0;
  DoubletState doublet{final_pure_state(model), branch,
                       record * record.adjoint()};
  return {static_cast<std::int64_t>(event_index), branch,
          model.pointer_eigenvalues[static_cast<std::size_t>(branch)],
          std::move(doublet)};
}

std::vector<EventRecord> sample_events(const MeasurementModel& model,
                                       std::int64_t n_events, std::uint64_t seed) {
  const CounterRng rng{seed};
  std::vector<EventRecord> events;
  events.reserve(static_cast<std::size_t>(n_events));
  for (std::int64_t i = 0; i < n_events; ++i)
    events.push_back(sample_event(model, rng, static_cast<std::uint64_t>(i)));
  return events;
}

RunStatistics run_ensemble(const MeasurementModel& model, std::int64_t n_events,
                           std::uint64_t seed) {
  if (n_events < 1)
    throw std::invalid_argument("run_ensemble: need at least one event");
  const CounterRng rng{seed};
  RunStatistics stats;
  stats.n_events = n_events;
  stats.seed = seed;
  for (std::int64_t i = 0; i < n_events; ++i)
    ++stats.counts[static_cast<std::size_t>(draw_branch(model, rng, static_cast<std::uint64_t>(i)) - 1)];
  stats.expected_probabilities = {std::norm(model.a1), std::norm(model.a2)};
  for (std::size_t b = 0; b < 2; ++b) {
    stats.empirical_frequencies[b] = double(stats.counts[b]) / double(n_events);
    stats.max_abs_deviation =
        std::max(stats.max_abs_deviation,
                 std::abs(stats.empirical_frequencies[b] - stats.expected_probabilities[b]));
  }
  return stats;
}

GemengeState empirical_gemenge(const RunStatistics& stats, const MeasurementModel& model) {
  if (std::abs(stats.expected_probabilities[0] - std::norm(model.a1)) > tol::state_invariant)
    throw std::invalid_argument("empirical_gemenge: statistics were drawn from a different model");
  GemengeState gemenge;
  for (std::size_t b = 0; b < 2; ++b) {
    if (stats.counts[b] == 0) continue;
    ComplexVector record = ComplexVector::Zero(3);
    record(static_cast<Index>(b) + 1) = 1.0;
    gemenge.entries.push_back({PureState(record), stats.empirical_frequencies[b]});
  }
  return gemenge;
}

std::vector<StatisticalDoublet> eta_trajectory(const MeasurementModel& model,
                                               const std::vector<double>& times) {
  const DensityState initial = density_from_pure(initial_state(model), model.spec);
  const ComplexMatrix h = coupling_hamiltonian(model);
  std::vector<StatisticalDoublet> trajectory;
  trajectory.reserve(times.size());
  for (double t : times) {
    // The coupling acts only inside the interaction window; before t0 the
    // state is the initial one and after t1 it stays final.
    const double effective = std::clamp(t, model.t0, model.t1) - model.t0;
    DensityState eta_d = liouville_evolve(initial, h, effective);
    RealVector eta_i(3);
    for (int i = 0; i < 3; ++i)
      eta_i(i) = (eta_d.matrix * pointer_projector(i)).trace().real();
    trajectory.push_back({std::move(eta_d), std::move(eta_i)});
  }
  return trajectory;
}

DistributionTestReport distribution_test(const RunStatistics& stats, double sigma_bound) {
  if (stats.n_events < 100)
    throw std::invalid_argument("distribution_test: need at least 100 events");
  const double p = stats.expected_probabilities[0];
  const double n = double(stats.n_events);
  DistributionTestReport report;
  if (p <= 0.0 || p >= 1.0) {
    report.degenerate = true;
    const std::int64_t expected_count = p >= 1.0 ? stats.n_events : 0;
    report.pass = stats.counts[0] == expected_count;
    return report;
  }
  report.z_score = (double(stats.counts[0]) - n * p) / std::sqrt(n * p * (1.0 - p));
  report.pass = std::abs(report.z_score) <= sigma_bound;
  return report;
}

}  // namespace qmeas
