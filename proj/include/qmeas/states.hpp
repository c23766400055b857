#pragma once

#include <vector>

#include "qmeas/linalg.hpp"

namespace qmeas {

// Unit vector in a finite-dimensional Hilbert space. The constructor rejects
// amplitudes whose norm deviates from 1 beyond the state-invariant tolerance.
struct PureState {
  ComplexVector amplitudes;

  explicit PureState(ComplexVector a);
  Index dim() const { return amplitudes.size(); }
};

// Statistical state: a density matrix together with the tensor-factor layout
// of the space it lives on. Construction does not enforce the density
// invariants; validate_density reports them, require_valid_density enforces.
struct DensityState {
  ComplexMatrix matrix;
  SpaceSpec spec;

  Index dim() const { return matrix.rows(); }
};

// Ensemble table: pure states with classical weights. Finer-grained than the
// density matrix it mixes to.
struct GemengeState {
  struct Entry {
    PureState state;
    double probability;
  };
  std::vector<Entry> entries;
};

// Per-event state pair: the shared statistical component and the definite
// pointer record of this event (index plus rank-1 projector in the pointer
// basis). Index 0 is the pre-measurement record; sampled events carry 1 or 2.
struct DoubletState {
  DensityState phi_d;
  int pointer_index;
  ComplexMatrix phi_i;
};

// Ensemble-level pair: the density component and the probability vector of
// pointer records it induces at the same instant.
struct StatisticalDoublet {
  DensityState eta_d;
  RealVector eta_i;
};

struct ValidationCheck {
  bool pass;
  double residual;
};

struct DensityReport {
  ValidationCheck hermiticity;
  ValidationCheck trace;
  ValidationCheck positivity;

  bool all_pass() const { return hermiticity.pass && trace.pass && positivity.pass; }
};

// |psi><psi| on the given space. Throws when dims mismatch or psi was
// somehow denormalized.
DensityState density_from_pure(const PureState& psi, const SpaceSpec& spec);

// sum_l P_l |Psi_l><Psi_l|. Entries need not be orthogonal.
DensityState mix(const GemengeState& gemenge, const SpaceSpec& spec);

// Measures the density invariants (Hermiticity, unit trace, positivity)
// and reports pass/fail with residuals. Never throws.
DensityReport validate_density(const DensityState& rho);

// Throws std::invalid_argument with the failing residuals unless rho is a
// valid density matrix.
void require_valid_density(const DensityState& rho, const char* context);

// Max-entry norm of (a - b). Zero iff the matrices agree entrywise.
double state_distance(const DensityState& a, const DensityState& b);

}  // namespace qmeas
