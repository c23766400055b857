#pragma once

#include <array>

#include "qmeas/algebra.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/states.hpp"

namespace qmeas {

// Tensor layout of the measurement chain: a binary measured system S coupled
// to a three-level observer register O, S as the slow Kronecker factor.
// Basis index of |s_i O_j> is i*3 + j.
SpaceSpec measurement_space();

// The measurement-chain model: incoming amplitudes over the two S branches,
// the eigenvalue assignments, the S-O coupling unitary and the interaction
// window [t0, t1].
struct MeasurementModel {
  Complex a1;
  Complex a2;
  std::array<double, 2> s_eigenvalues{+1.0, -1.0};
  std::array<double, 3> pointer_eigenvalues{0.0, 1.0, 2.0};
  SpaceSpec spec;
  ComplexMatrix coupling;
  double t0 = 0.0;
  double t1 = 1.0;
};

// Builds a model with the default coupling, validating all invariants:
// normalized amplitudes, unitary coupling that maps |s_i O_0> to |s_i O_i>,
// pairwise-distinct pointer eigenvalues. Throws on violation.
MeasurementModel make_model(Complex a1, Complex a2,
                            std::array<double, 2> s_eigenvalues = {+1.0, -1.0},
                            std::array<double, 3> pointer_eigenvalues = {0.0, 1.0, 2.0},
                            double t0 = 0.0, double t1 = 1.0);

// The controlled-permutation coupling: branch 1 swaps the O register between
// levels 0 and 1 (leaving 2 fixed), branch 2 swaps levels 0 and 2 (leaving 1
// fixed). An involution, so U^2 = I.
ComplexMatrix default_coupling(const SpaceSpec& spec);

// (a1|s_1> + a2|s_2>) (x) |O_0>, the pre-interaction product state.
PureState initial_state(const MeasurementModel& model);

// Hermitian H with exp(-iH(t1-t0)) = coupling, from the principal-branch
// logarithm on the coupling's joint eigenspaces.
ComplexMatrix coupling_hamiltonian(const MeasurementModel& model);

// Closed-form von Neumann evolution: exp(-iHt) rho exp(+iHt). Trace,
// spectrum and purity are preserved.
DensityState liouville_evolve(const DensityState& rho, const ComplexMatrix& h, double t);

// Projector onto U * Psi_in: the entangled post-interaction state.
DensityState final_pure_state(const MeasurementModel& model);

// sum_i |a_i|^2 |s_i O_i><s_i O_i|: the mixture a reduction postulate would
// assign after the interaction. Diagonal in the product basis.
DensityState final_mixed_state(const MeasurementModel& model);

// Projector onto |s_i O_i| for one definite outcome branch i in {1, 2}.
DensityState individual_event_state(const MeasurementModel& model, int branch);

// Cross-branch interference observable |s_1><s_2| (x) |O_1><O_2| plus its
// adjoint. Hermitian, traceless, and non-commuting with the pointer
// observable. Its expectation separates the entangled final state from the
// corresponding mixture.
ComplexMatrix interference_observable();

// Tr(rho B). Equals a1* a2 + a1 a2* on entangled final states, 0 on the
// mixed ones.
double interference_expectation(const DensityState& rho);

// Partial trace over S: the observer's 3x3 restricted density.
DensityState observer_restricted_density(const DensityState& rho);

// I_S (x) Q_O with the model's pointer eigenvalues.
ComplexMatrix pointer_observable(const MeasurementModel& model);

// I_S (x) |O_i><O_i| for i in {0, 1, 2}.
ComplexMatrix pointer_projector(int index);

// The observer's effective subalgebra: generated by the pointer observable
// and the identity on the full S-O space. Commutative, span dimension 3.
OperatorAlgebra observer_pointer_algebra(const MeasurementModel& model);

}  // namespace qmeas
