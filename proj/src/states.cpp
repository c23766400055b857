#include "qmeas/states.hpp"

#include <cmath>
#include <string>

namespace qmeas {

PureState::PureState(ComplexVector a) : amplitudes(std::move(a)) {
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol::state_invariant)
    throw std::invalid_argument("PureState: amplitudes are not normalized (|norm^2 - 1| = " +
                                std::to_string(std::abs(norm2 - 1.0)) + ")");
}

DensityState density_from_pure(const PureState& psi, const SpaceSpec& spec) {
  if (psi.dim() != spec.total_dim())
    throw std::invalid_argument("density_from_pure: state dimension does not match spec");
  return {psi.amplitudes * psi.amplitudes.adjoint(), spec};
}

DensityState mix(const GemengeState& gemenge, const SpaceSpec& spec) {
  const Index dim = spec.total_dim();
  double total = 0.0;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& entry : gemenge.entries) {
    if (entry.state.dim() != dim)
      throw std::invalid_argument("mix: entry dimension does not match spec");
    if (entry.probability < 0.0)
      throw std::invalid_argument("mix: negative probability in Gemenge table");
    total += entry.probability;
    m += entry.probability * (entry.state.amplitudes * entry.state.amplitudes.adjoint());
  }
  if (std::abs(total - 1.0) > tol::state_invariant)
    throw std::invalid_argument("mix: Gemenge probabilities sum to " + std::to_string(total));
  return {std::move(m), spec};
}

DensityReport validate_density(const DensityState& rho) {
  DensityReport report{};

  report.hermiticity.residual = max_abs(rho.matrix - rho.matrix.adjoint().eval());
  report.hermiticity.pass = report.hermiticity.residual <= tol::state_invariant;

  report.trace.residual = std::abs(rho.matrix.trace() - Complex(1.0));
  report.trace.pass = report.trace.residual <= tol::state_invariant;

  // Positivity is measured on the spectrum of the Hermitian part, which is
  // defined even when the Hermiticity check itself failed.
  const ComplexMatrix herm = (rho.matrix + rho.matrix.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  const double min_eig = solver.eigenvalues().minCoeff();
  report.positivity.residual = std::max(0.0, -min_eig);
  report.positivity.pass = min_eig >= -tol::state_invariant;

  return report;
}

void require_valid_density(const DensityState& rho, const char* context) {
  const DensityReport report = validate_density(rho);
  if (report.all_pass()) return;
  std::string what(context);
  what += ": invalid density state (";
  if (!report.hermiticity.pass)
    what += "hermiticity residual " + std::to_string(report.hermiticity.residual) + "; ";
  if (!report.trace.pass)
    what += "trace residual " + std::to_string(report.trace.residual) + "; ";
  if (!report.positivity.pass)
    what += "negative eigenvalue " + std::to_string(-report.positivity.residual) + "; ";
  what += ")";
  throw std::invalid_argument(what);
}

double state_distance(const DensityState& a, const DensityState& b) {
  if (!(a.spec == b.spec))
    throw std::invalid_argument("state_distance: states live on different spaces");
  return max_abs(a.matrix - b.matrix);
}

}  // namespace qmeas
