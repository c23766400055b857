#include "qmeas/measurement.hpp"

#include <cmath>
#include <string>

namespace qmeas {

namespace {

ComplexVector basis_vector(Index dim, Index i) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(i) = 1.0;
  return v;
}

void require_measurement_spec(const SpaceSpec& spec, const char* context) {
  const SpaceSpec expected = measurement_space();
  if (!(spec == expected))
    throw std::invalid_argument(std::string(context) +
                                ": expected the binary-system / three-level-observer layout");
}

}  // namespace

SpaceSpec measurement_space() {
  return SpaceSpec{{{"S", 2}, {"O", 3}}};
}

ComplexMatrix default_coupling(const SpaceSpec& spec) {
  require_measurement_spec(spec, "default_coupling");
  ComplexMatrix swap01 = ComplexMatrix::Zero(3, 3);
  swap01(0, 1) = swap01(1, 0) = 1.0;
  swap01(2, 2) = 1.0;
  ComplexMatrix swap02 = ComplexMatrix::Zero(3, 3);
  swap02(0, 2) = swap02(2, 0) = 1.0;
  swap02(1, 1) = 1.0;

  const ComplexVector s1 = basis_vector(2, 0);
  const ComplexVector s2 = basis_vector(2, 1);
  return tensor_product((s1 * s1.adjoint()).eval(), swap01) +
         tensor_product((s2 * s2.adjoint()).eval(), swap02);
}

MeasurementModel make_model(Complex a1, Complex a2,
                            std::array<double, 2> s_eigenvalues,
                            std::array<double, 3> pointer_eigenvalues,
                            double t0, double t1) {
  MeasurementModel model;
  model.a1 = a1;
  model.a2 = a2;
  model.s_eigenvalues = s_eigenvalues;
  model.pointer_eigenvalues = pointer_eigenvalues;
  model.spec = measurement_space();
  model.coupling = default_coupling(model.spec);
  model.t0 = t0;
  model.t1 = t1;

  const double norm2 = std::norm(a1) + std::norm(a2);
  if (std::abs(norm2 - 1.0) > tol::state_invariant)
    throw std::invalid_argument("make_model: amplitudes are not normalized");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (pointer_eigenvalues[i] == pointer_eigenvalues[j])
        throw std::invalid_argument("make_model: pointer eigenvalues must be pairwise distinct");
  if (t1 < t0)
    throw std::invalid_argument("make_model: interaction window ends before it starts");
  return model;
}

PureState initial_state(const MeasurementModel& model) {
  ComplexVector system(2);
  system << model.a1, model.a2;
  return PureState(tensor_product(system, basis_vector(3, 0)).col(0));
}

ComplexMatrix coupling_hamiltonian(const MeasurementModel& model) {
  const double duration = model.t1 - model.t0;
  const Index dim = model.coupling.rows();
  const ComplexMatrix identity = ComplexMatrix::Identity(dim, dim);
  if (duration == 0.0) {
    if (max_abs(model.coupling - identity) > tol::unitary_check)
      throw std::invalid_argument(
          "coupling_hamiltonian: zero-length interaction cannot produce a nontrivial coupling");
    return ComplexMatrix::Zero(dim, dim);
  }
  if (!is_unitary(model.coupling))
    throw std::invalid_argument("coupling_hamiltonian: coupling is not unitary");

  // The coupling is normal, so its real and imaginary Hermitian parts
  // commute; their joint eigenspaces diagonalize it. On each eigenspace the
  // coupling acts as a unit phase, and the principal log fixes H there.
  const ComplexMatrix real_part = (model.coupling + model.coupling.adjoint()) / 2.0;
  const ComplexMatrix imag_part = (model.coupling - model.coupling.adjoint()) / Complex(0.0, 2.0);
  const auto blocks = joint_eigenspaces({real_part, imag_part});

  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (const auto& v : blocks) {
    const Complex phase = (v.adjoint() * model.coupling * v).trace() / double(v.cols());
    // exp(-i h_k duration) = phase, principal branch; the half-turn phase
    // sits on the branch cut and is fixed at +pi/duration.
    double theta = std::arg(phase);
    if (std::abs(std::abs(theta) - M_PI) < 1e-9) theta = -M_PI;
    h += (-theta / duration) * (v * v.adjoint());
  }
  return h;
}

DensityState liouville_evolve(const DensityState& rho, const ComplexMatrix& h, double t) {
  if (h.rows() != rho.dim())
    throw std::invalid_argument("liouville_evolve: Hamiltonian and state dimensions differ");
  const ComplexMatrix u = unitary_from_hamiltonian(h, t);
  return {u * rho.matrix * u.adjoint(), rho.spec};
}

DensityState final_pure_state(const MeasurementModel& model) {
  const ComplexVector out = model.coupling * initial_state(model).amplitudes;
  return {out * out.adjoint(), model.spec};
}

DensityState final_mixed_state(const MeasurementModel& model) {
  const ComplexVector branch1 = tensor_product(basis_vector(2, 0), basis_vector(3, 1)).col(0);
  const ComplexVector branch2 = tensor_product(basis_vector(2, 1), basis_vector(3, 2)).col(0);
  return {std::norm(model.a1) * (branch1 * branch1.adjoint()) +
              std::norm(model.a2) * (branch2 * branch2.adjoint()),
          model.spec};
}

DensityState individual_event_state(const MeasurementModel& model, int branch) {
  if (branch != 1 && branch != 2)
    throw std::invalid_argument("individual_event_state: branch must be 1 or 2");
  const ComplexVector v =
      tensor_product(basis_vector(2, branch - 1), basis_vector(3, branch)).col(0);
  return {v * v.adjoint(), model.spec};
}

ComplexMatrix interference_observable() {
  ComplexMatrix s_flip = ComplexMatrix::Zero(2, 2);
  s_flip(0, 1) = 1.0;  // |s_1><s_2|
  ComplexMatrix o_flip = ComplexMatrix::Zero(3, 3);
  o_flip(1, 2) = 1.0;  // |O_1><O_2|
  const ComplexMatrix cross = tensor_product(s_flip, o_flip);
  return cross + cross.adjoint().eval();
}

double interference_expectation(const DensityState& rho) {
  if (rho.dim() != 6)
    throw std::invalid_argument("interference_expectation: expected the 6-dimensional chain state");
  return (rho.matrix * interference_observable()).trace().real();
}

DensityState observer_restricted_density(const DensityState& rho) {
  if (rho.dim() != 6)
    throw std::invalid_argument("observer_restricted_density: expected the 6-dimensional chain state");
  return {partial_trace(rho.matrix, rho.spec, "O"), SpaceSpec{{{"O", 3}}}};
}

ComplexMatrix pointer_observable(const MeasurementModel& model) {
  ComplexMatrix q = ComplexMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) q(i, i) = model.pointer_eigenvalues[static_cast<std::size_t>(i)];
  return tensor_product(ComplexMatrix::Identity(2, 2), q);
}

ComplexMatrix pointer_projector(int index) {
  if (index < 0 || index > 2)
    throw std::invalid_argument("pointer_projector: index must be 0, 1 or 2");
  const ComplexVector e = basis_vector(3, index);
  return tensor_product(ComplexMatrix::Identity(2, 2), (e * e.adjoint()).eval());
}

OperatorAlgebra observer_pointer_algebra(const MeasurementModel& model) {
  return generate_algebra({pointer_observable(model)}, true);
}

}  // namespace qmeas
