#include "qmeas/linalg.hpp"

#include <cmath>

namespace qmeas {

Index SpaceSpec::total_dim() const {
  Index d = 1;
  for (const auto& f : factors) d *= f.dim;
  return d;
}

Index SpaceSpec::factor_index(std::string_view label) const {
  Index found = -1;
  for (Index i = 0; i < static_cast<Index>(factors.size()); ++i) {
    if (factors[i].label == label) {
      if (found >= 0)
        throw std::invalid_argument("SpaceSpec: duplicate factor label '" +
                                    std::string(label) + "'");
      found = i;
    }
  }
  if (found < 0)
    throw std::invalid_argument("SpaceSpec: unknown factor label '" +
                                std::string(label) + "'");
  return found;
}

Index SpaceSpec::factor_dim(std::string_view label) const {
  return factors[static_cast<std::size_t>(factor_index(label))].dim;
}

Index SpaceSpec::stride(Index f) const {
  Index s = 1;
  for (Index i = f + 1; i < static_cast<Index>(factors.size()); ++i)
    s *= factors[static_cast<std::size_t>(i)].dim;
  return s;
}

bool SpaceSpec::operator==(const SpaceSpec& other) const {
  if (factors.size() != other.factors.size()) return false;
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (factors[i].label != other.factors[i].label ||
        factors[i].dim != other.factors[i].dim)
      return false;
  return true;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const SpaceSpec& spec,
                            std::string_view keep) {
  const Index total = spec.total_dim();
  if (rho.rows() != total || rho.cols() != total)
    throw std::invalid_argument("partial_trace: state dimension " +
                                std::to_string(rho.rows()) +
                                " does not match spec total " +
                                std::to_string(total));
  const Index k = spec.factor_index(keep);
  const Index dk = spec.factors[static_cast<std::size_t>(k)].dim;
  const Index keep_stride = spec.stride(k);
  const Index rest = total / dk;  // combined dimension of the traced factors

  // Linear index of the traced factors, split around the kept one:
  // index(i_keep, r) = hi(r)*dk*keep_stride + i_keep*keep_stride + lo(r).
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Index r = 0; r < rest; ++r) {
    const Index lo = r % keep_stride;
    const Index hi = r / keep_stride;
    const Index base = hi * dk * keep_stride + lo;
    for (Index i = 0; i < dk; ++i)
      for (Index j = 0; j < dk; ++j)
        out(i, j) += rho(base + i * keep_stride, base + j * keep_stride);
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint().eval()) <= tolerance;
}

bool is_unitary(const ComplexMatrix& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  const ComplexMatrix gram = a.adjoint() * a;
  return max_abs(gram - ComplexMatrix::Identity(a.rows(), a.cols())) <= tolerance;
}

EigDecomposition hermitian_eig(const ComplexMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("hermitian_eig: matrix must be square");
  const double residual = max_abs(a - a.adjoint().eval());
  if (residual > tol::hermitian_check)
    throw std::invalid_argument(
        "hermitian_eig: input is not Hermitian (max |A - A'| = " +
        std::to_string(residual) + ")");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t) {
  const auto eig = hermitian_eig(h);
  ComplexVector phases(eig.eigenvalues.size());
  for (Index i = 0; i < eig.eigenvalues.size(); ++i)
    phases(i) = std::exp(Complex(0.0, -eig.eigenvalues(i) * t));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

namespace {

// Projects `candidate` against the orthonormal ops in `basis` (two passes)
// and appends the normalized residual unless it is dependent.
bool append_orthonormal(std::vector<ComplexMatrix>& basis, ComplexMatrix candidate) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : basis) candidate -= hs_inner(e, candidate) * e;
  const double norm = hs_norm(candidate);
  if (norm < tol::gram_schmidt_drop) return false;
  basis.push_back(candidate / norm);
  return true;
}

}  // namespace

std::vector<ComplexMatrix> gram_schmidt_hs(const std::vector<ComplexMatrix>& ops) {
  std::vector<ComplexMatrix> basis;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].rows() != ops[i].cols() ||
        (i > 0 && ops[i].rows() != ops[0].rows()))
      throw std::invalid_argument("gram_schmidt_hs: operators must be square and equally sized");
    append_orthonormal(basis, ops[i]);
  }
  return basis;
}

std::vector<ComplexMatrix> joint_eigenspaces(const std::vector<ComplexMatrix>& mats,
                                             double cluster_tol) {
  if (mats.empty())
    throw std::invalid_argument("joint_eigenspaces: need at least one matrix");
  const Index dim = mats[0].rows();
  std::vector<ComplexMatrix> blocks;
  blocks.push_back(ComplexMatrix::Identity(dim, dim));

  for (const auto& m : mats) {
    if (m.rows() != dim || m.cols() != dim)
      throw std::invalid_argument("joint_eigenspaces: dimension mismatch");
    if (max_abs(m) < tol::gram_schmidt_drop) continue;  // acts as zero everywhere

    std::vector<ComplexMatrix> refined;
    for (const auto& block : blocks) {
      if (block.cols() == 1) {
        refined.push_back(block);
        continue;
      }
      const ComplexMatrix compressed = block.adjoint() * m * block;
      const auto eig = hermitian_eig((compressed + compressed.adjoint()) / 2.0);
      // Split the block wherever consecutive eigenvalues are separated by
      // more than the clustering tolerance.
      Index start = 0;
      for (Index i = 1; i <= eig.eigenvalues.size(); ++i) {
        if (i == eig.eigenvalues.size() ||
            eig.eigenvalues(i) - eig.eigenvalues(i - 1) > cluster_tol) {
          refined.push_back(block * eig.eigenvectors.middleCols(start, i - start));
          start = i;
        }
      }
    }
    blocks = std::move(refined);
  }
  return blocks;
}

}  // namespace qmeas
