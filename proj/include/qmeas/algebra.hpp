#pragma once

#include <optional>
#include <vector>

#include "qmeas/linalg.hpp"
#include "qmeas/states.hpp"

namespace qmeas {

// A unital *-subalgebra of the d x d complex matrices, represented by an
// HS-orthonormal basis of its linear span. Closure under products and
// adjoints holds up to the closure residual tolerance.
struct OperatorAlgebra {
  Index space_dim = 0;
  std::vector<ComplexMatrix> basis;
  bool unital = false;
  bool commutative = true;

  Index span_dim() const { return static_cast<Index>(basis.size()); }

  // Expansion coefficients of `a` in the basis, or nullopt when the
  // projection residual exceeds the span-membership tolerance.
  std::optional<ComplexVector> coefficients(const ComplexMatrix& a,
                                            double tolerance = tol::closure_residual) const;
  bool contains(const ComplexMatrix& a,
                double tolerance = tol::closure_residual) const;
  // HS-orthogonal projection of `a` onto the span.
  ComplexMatrix project(const ComplexMatrix& a) const;
};

// The full matrix algebra on a d-dimensional space, with the matrix units
// as HS-orthonormal basis.
OperatorAlgebra full_matrix_algebra(Index dim);

// Smallest *-closed, product-closed linear span containing the generators
// (plus the identity when requested). Bounded fixed-point iteration over
// {pairwise products, adjoints} with re-orthonormalization; terminates since
// the span dimension is capped at dim^2. space_dim is inferred from the
// generators when negative; it must be supplied for an empty generator set.
OperatorAlgebra generate_algebra(const std::vector<ComplexMatrix>& generators,
                                 bool include_identity, Index space_dim = -1);

// A state seen only through its expectations on a subalgebra: the linear
// functional A |-> Tr(rho A) recorded on the algebra basis.
struct RestrictedState {
  OperatorAlgebra algebra;
  ComplexVector expectations;

  // Result of evaluating the functional on an observable. Observables
  // outside the subalgebra are out of the functional's domain; they yield
  // in_domain = false and the conventional value 0, never silently a number.
  struct Evaluation {
    bool in_domain;
    Complex value;
  };
  Evaluation evaluate(const ComplexMatrix& observable) const;
};

RestrictedState restrict_state(const DensityState& rho, const OperatorAlgebra& alg);

// The complete set of minimal orthogonal projections of a commutative unital
// algebra, obtained by simultaneous diagonalization of a Hermitian spanning
// family. They sum to the identity; their count equals the span dimension.
// Throws std::invalid_argument for non-commutative or non-unital algebras.
std::vector<ComplexMatrix> minimal_projections(const OperatorAlgebra& alg);

// Probability-mass form of a restricted state on a commutative algebra:
// one outcome per minimal projection, valued at the observable's eigenvalue
// on that projection's range.
struct ClassicalDistribution {
  struct Outcome {
    double value;
    double probability;
    ComplexMatrix projector;
  };
  std::vector<Outcome> outcomes;  // sorted by value, ascending
};

// Decomposes the restricted state into the classical distribution over the
// algebra's minimal projections, valued by `value_observable` (which must lie
// in the algebra's span).
ClassicalDistribution classical_state(const RestrictedState& restricted,
                                      const ComplexMatrix& value_observable);

// True iff the distribution is a point mass: exactly one outcome with
// probability above the tolerance.
bool is_extremal(const ClassicalDistribution& dist, double tolerance);

// Operational indistinguishability: the two states agree on every basis
// expectation of the subalgebra within tol.
bool breuer_indistinguishable(const DensityState& rho1, const DensityState& rho2,
                              const OperatorAlgebra& alg, double tolerance);

}  // namespace qmeas
