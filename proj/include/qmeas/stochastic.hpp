#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qmeas/measurement.hpp"
#include "qmeas/states.hpp"

namespace qmeas {

// Counter-based deterministic random source: the draw for event n depends
// only on (seed, n), never on execution order, so ensembles may be evaluated
// in any order or in parallel and still replay bit-identically.
struct CounterRng {
  std::uint64_t seed = 0;

  // Uniform double in [0, 1) for the given event index.
  double uniform_at(std::uint64_t event_index) const;
};

// One sampled measurement event: the branch drawn for the pointer record and
// the doublet pairing the (unsampled) final statistical state with that
// record. Sampling never back-reacts on the statistical component.
struct EventRecord {
  std::int64_t event_index;
  int outcome_branch;    // 1 or 2
  double pointer_value;  // the pointer eigenvalue of the drawn branch
  DoubletState doublet;
};

struct RunStatistics {
  std::int64_t n_events = 0;
  std::array<std::int64_t, 2> counts{0, 0};       // branch 1, branch 2
  std::array<double, 2> empirical_frequencies{0.0, 0.0};
  std::array<double, 2> expected_probabilities{0.0, 0.0};
  double max_abs_deviation = 0.0;
  std::uint64_t seed = 0;
};

// Draws the outcome branch for one event: 1 with probability |a1|^2, else 2.
int draw_branch(const MeasurementModel& model, const CounterRng& rng,
                std::uint64_t event_index);

// Full event record for one draw, with the doublet's statistical component
// equal to the final entangled state and the record projector |O_i><O_i|.
EventRecord sample_event(const MeasurementModel& model, const CounterRng& rng,
                         std::uint64_t event_index);

// Convenience: materializes the first n event records of a run.
std::vector<EventRecord> sample_events(const MeasurementModel& model,
                                       std::int64_t n_events, std::uint64_t seed);

// Branch counts and frequencies over n events. Deterministic in
// (model, n_events, seed); aggregation is order-independent.
RunStatistics run_ensemble(const MeasurementModel& model, std::int64_t n_events,
                           std::uint64_t seed);

// Ensemble table of observer records implied by a run: pointer basis states
// weighted by their empirical frequencies (zero-count branches omitted).
GemengeState empirical_gemenge(const RunStatistics& stats, const MeasurementModel& model);

// The ensemble doublet along the interaction: eta_D(t) evolved under the
// coupling Hamiltonian (the interaction is switched off outside [t0, t1]),
// eta_I(t) the pointer-record distribution it induces.
std::vector<StatisticalDoublet> eta_trajectory(const MeasurementModel& model,
                                               const std::vector<double>& times);

struct DistributionTestReport {
  double z_score = 0.0;
  bool degenerate = false;  // expected probability 0 or 1: exact count check
  bool pass = false;
};

// Two-sided binomial z-test of the branch-1 count against |a1|^2, passing
// when |z| stays within the given sigma bound. Requires at least 100 events.
DistributionTestReport distribution_test(const RunStatistics& stats, double sigma_bound);

}  // namespace qmeas
