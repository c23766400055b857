#include "qmeas/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace qmeas {

namespace {

bool check_commutative(const std::vector<ComplexMatrix>& basis) {
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t k = j + 1; k < basis.size(); ++k)
      if (max_abs(commutator(basis[j], basis[k])) >= tol::closure_residual)
        return false;
  return true;
}

bool spans_identity(const std::vector<ComplexMatrix>& basis, Index dim) {
  ComplexMatrix residual = ComplexMatrix::Identity(dim, dim);
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : basis) residual -= hs_inner(e, residual) * e;
  return hs_norm(residual) < tol::closure_residual;
}

// Projects against the existing basis (two passes) and appends the
// normalized residual unless dependent. Same scheme as gram_schmidt_hs.
bool extend_basis(std::vector<ComplexMatrix>& basis, ComplexMatrix candidate) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : basis) candidate -= hs_inner(e, candidate) * e;
  const double norm = hs_norm(candidate);
  if (norm < tol::gram_schmidt_drop) return false;
  basis.push_back(candidate / norm);
  return true;
}

}  // namespace

std::optional<ComplexVector> OperatorAlgebra::coefficients(const ComplexMatrix& a,
                                                           double tolerance) const {
  if (a.rows() != space_dim || a.cols() != space_dim) return std::nullopt;
  ComplexVector coeffs(span_dim());
  ComplexMatrix residual = a;
  for (Index k = 0; k < span_dim(); ++k) {
    coeffs(k) = hs_inner(basis[static_cast<std::size_t>(k)], a);
    residual -= coeffs(k) * basis[static_cast<std::size_t>(k)];
  }
  if (hs_norm(residual) >= tolerance) return std::nullopt;
  return coeffs;
}

bool OperatorAlgebra::contains(const ComplexMatrix& a, double tolerance) const {
  return coefficients(a, tolerance).has_value();
}

ComplexMatrix OperatorAlgebra::project(const ComplexMatrix& a) const {
  ComplexMatrix out = ComplexMatrix::Zero(space_dim, space_dim);
  for (const auto& e : basis) out += hs_inner(e, a) * e;
  return out;
}

OperatorAlgebra full_matrix_algebra(Index dim) {
  OperatorAlgebra alg;
  alg.space_dim = dim;
  alg.basis.reserve(static_cast<std::size_t>(dim * dim));
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(dim, dim);
      unit(i, j) = 1.0;
      alg.basis.push_back(std::move(unit));
    }
  alg.unital = true;
  alg.commutative = dim <= 1;
  return alg;
}

OperatorAlgebra generate_algebra(const std::vector<ComplexMatrix>& generators,
                                 bool include_identity, Index space_dim) {
  Index dim = space_dim;
  for (const auto& g : generators) {
    if (g.rows() != g.cols())
      throw std::invalid_argument("generate_algebra: generators must be square");
    if (dim < 0) dim = g.rows();
    if (g.rows() != dim)
      throw std::invalid_argument("generate_algebra: generator dimensions differ");
  }
  if (dim < 0)
    throw std::invalid_argument(
        "generate_algebra: space dimension needed for an empty generator set");
  if (dim == 0) return {0, {}, false, true};

  std::vector<ComplexMatrix> seed = generators;
  if (include_identity) seed.push_back(ComplexMatrix::Identity(dim, dim));
  std::vector<ComplexMatrix> basis = gram_schmidt_hs(seed);

  // Fixed point of span |-> span + span*span + span'. Each continuing round
  // strictly enlarges the span, which is capped at dim^2.
  const Index cap = dim * dim;
  for (Index round = 0; round < cap && static_cast<Index>(basis.size()) < cap; ++round) {
    bool grew = false;
    const std::size_t current = basis.size();
    for (std::size_t j = 0; j < current; ++j) {
      grew |= extend_basis(basis, basis[j].adjoint());
      for (std::size_t k = 0; k < current; ++k)
        grew |= extend_basis(basis, basis[j] * basis[k]);
    }
    if (!grew) break;
  }

  OperatorAlgebra alg;
  alg.space_dim = dim;
  alg.commutative = check_commutative(basis);
  alg.unital = spans_identity(basis, dim);
  alg.basis = std::move(basis);
  return alg;
}

RestrictedState::Evaluation RestrictedState::evaluate(const ComplexMatrix& observable) const {
  const auto coeffs = algebra.coefficients(observable);
  if (!coeffs) return {false, Complex(0.0)};
  // Tr(rho A) = sum_k c_k Tr(rho E_k) with A = sum_k c_k E_k.
  return {true, coeffs->cwiseProduct(expectations).sum()};
}

RestrictedState restrict_state(const DensityState& rho, const OperatorAlgebra& alg) {
  if (rho.dim() != alg.space_dim)
    throw std::invalid_argument("restrict_state: state and algebra dimensions differ");
  ComplexVector expectations(alg.span_dim());
  for (Index k = 0; k < alg.span_dim(); ++k)
    expectations(k) = (rho.matrix * alg.basis[static_cast<std::size_t>(k)]).trace();
  return {alg, std::move(expectations)};
}

std::vector<ComplexMatrix> minimal_projections(const OperatorAlgebra& alg) {
  if (!alg.commutative)
    throw std::invalid_argument(
        "minimal_projections: algebra is not commutative; no classical correspondence");
  if (!alg.unital)
    throw std::invalid_argument("minimal_projections: algebra is not unital");

  // Hermitian spanning family: Hermitian and anti-Hermitian parts of the basis.
  std::vector<ComplexMatrix> hermitian_parts;
  hermitian_parts.reserve(2 * alg.basis.size());
  for (const auto& e : alg.basis) {
    hermitian_parts.push_back((e + e.adjoint()) / 2.0);
    hermitian_parts.push_back((e - e.adjoint()) / Complex(0.0, 2.0));
  }

  const auto blocks = joint_eigenspaces(hermitian_parts);
  std::vector<ComplexMatrix> projections;
  projections.reserve(blocks.size());
  for (const auto& v : blocks) projections.push_back(v * v.adjoint());
  return projections;
}

ClassicalDistribution classical_state(const RestrictedState& restricted,
                                      const ComplexMatrix& value_observable) {
  const auto coeffs = restricted.algebra.coefficients(value_observable);
  if (!coeffs)
    throw std::invalid_argument(
        "classical_state: value observable lies outside the algebra span");

  const auto projections = minimal_projections(restricted.algebra);
  ClassicalDistribution dist;
  dist.outcomes.reserve(projections.size());
  for (const auto& p : projections) {
    const auto prob = restricted.evaluate(p);
    if (!prob.in_domain)
      throw std::runtime_error("classical_state: minimal projection escaped the algebra span");
    const double rank = p.trace().real();
    // The observable acts as a scalar on the projection's range.
    const double value = (value_observable * p).trace().real() / rank;
    dist.outcomes.push_back({value, prob.value.real(), p});
  }
  std::sort(dist.outcomes.begin(), dist.outcomes.end(),
            [](const auto& a, const auto& b) { return a.value < b.value; });
  return dist;
}

bool is_extremal(const ClassicalDistribution& dist, double tolerance) {
  int massive = 0;
  for (const auto& outcome : dist.outcomes)
    if (outcome.probability > tolerance) ++massive;
  return massive == 1;
}

bool breuer_indistinguishable(const DensityState& rho1, const DensityState& rho2,
                              const OperatorAlgebra& alg, double tolerance) {
  if (rho1.dim() != rho2.dim() || rho1.dim() != alg.space_dim)
    throw std::invalid_argument("breuer_indistinguishable: dimension mismatch");
  const ComplexMatrix diff = rho1.matrix - rho2.matrix;
  for (const auto& e : alg.basis)
    if (std::abs((diff * e).trace()) >= tolerance) return false;
  return true;
}

}  // namespace qmeas
