#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qmeas {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Centralized numerical tolerances. Desk scale: dense operators of
// dimension <= ~24, so double-precision spectral error stays below 1e-9.
namespace tol {
inline constexpr double hermitian_check = 1e-10;  // max |A - A'| entry on inputs
inline constexpr double unitary_check = 1e-10;    // max |U'U - I| entry on inputs
inline constexpr double spectral_post = 1e-9;     // eig / exp reconstruction guarantees
inline constexpr double gram_schmidt_drop = 1e-10;  // residual HS-norm below which an op is dependent
inline constexpr double closure_residual = 1e-9;  // algebra product/adjoint closure, span membership
inline constexpr double eigen_cluster = 1e-8;     // eigenvalue clustering in joint diagonalization
inline constexpr double state_invariant = 1e-10;  // trace-1, norm-1, positivity, probability sums
}  // namespace tol

// An ordered list of labelled tensor factors. The first factor is the slow
// Kronecker index, so basis state |i_0 i_1 ... i_{k-1}> has linear index
// sum_f i_f * stride_f with stride_f the product of the dims after f.
struct SpaceSpec {
  struct Factor {
    std::string label;
    Index dim = 0;
  };

  std::vector<Factor> factors;

  Index total_dim() const;
  // Position of the factor with the given label; throws std::invalid_argument
  // if the label is unknown or duplicated.
  Index factor_index(std::string_view label) const;
  Index factor_dim(std::string_view label) const;
  // Product of the dims of the factors after position f (the Kronecker stride).
  Index stride(Index f) const;

  bool operator==(const SpaceSpec& other) const;
};

// Kronecker product with the left factor as the slow index.
template <typename DerivedA, typename DerivedB>
ComplexMatrix tensor_product(const Eigen::MatrixBase<DerivedA>& a,
                             const Eigen::MatrixBase<DerivedB>& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Trace out every factor except `keep`. The result lives on the kept factor
// and has the same trace as the input.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const SpaceSpec& spec,
                            std::string_view keep);

// Hilbert-Schmidt inner product Tr(A'B), antilinear in the first argument.
template <typename DerivedA, typename DerivedB>
Complex hs_inner(const Eigen::MatrixBase<DerivedA>& a,
                 const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hs_inner: dimension mismatch");
  return (a.adjoint() * b).trace();
}

template <typename Derived>
double hs_norm(const Eigen::MatrixBase<Derived>& a) {
  return a.norm();  // Frobenius == Hilbert-Schmidt
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

template <typename DerivedA, typename DerivedB>
ComplexMatrix commutator(const Eigen::MatrixBase<DerivedA>& a,
                         const Eigen::MatrixBase<DerivedB>& b) {
  return a * b - b * a;
}

bool is_hermitian(const ComplexMatrix& a, double tolerance = tol::hermitian_check);
bool is_unitary(const ComplexMatrix& a, double tolerance = tol::unitary_check);

struct EigDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns, one per eigenvalue
};

// Spectral decomposition of a Hermitian matrix. Throws std::invalid_argument
// when the input fails the Hermiticity check; general matrices are rejected.
EigDecomposition hermitian_eig(const ComplexMatrix& a);

// exp(-iHt) for Hermitian H (hbar = 1), via eigendecomposition.
ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t);

// HS-orthonormalizes the list, dropping elements whose residual after
// projection onto the previous ones has HS-norm below the drop tolerance.
std::vector<ComplexMatrix> gram_schmidt_hs(const std::vector<ComplexMatrix>& ops);

// Common refinement of the eigenspaces of a family of commuting Hermitian
// matrices. Returns orthonormal column blocks, one per joint eigenspace;
// within each block every input matrix acts as a scalar. Eigenvalues closer
// than cluster_tol are treated as degenerate.
std::vector<ComplexMatrix> joint_eigenspaces(const std::vector<ComplexMatrix>& mats,
                                             double cluster_tol = tol::eigen_cluster);

}  // namespace qmeas
