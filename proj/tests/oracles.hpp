#pragma once

// Reference implementations for tests: explicit index-loop versions of the
// operations under test, plus deterministic random generators. These must
// stay independent of the library's computation paths (no calls into
// qmeas/, no Eigen expression shortcuts for the contracted quantities).

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Kronecker product with the left factor slow, by explicit index loops.
inline Matrix naive_kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index r = 0; r < b.rows(); ++r)
        for (Eigen::Index c = 0; c < b.cols(); ++c)
          out(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
  return out;
}

// Elementwise index contraction over all factors except `keep`, for a state
// on factors of the given dims (first factor slow).
inline Matrix naive_partial_trace(const Matrix& rho, const std::vector<Eigen::Index>& dims,
                                  std::size_t keep) {
  std::vector<Eigen::Index> strides(dims.size(), 1);
  for (std::size_t f = dims.size(); f-- > 1;) strides[f - 1] = strides[f] * dims[f];
  const Eigen::Index dk = dims[keep];
  Matrix out = Matrix::Zero(dk, dk);

  std::vector<Eigen::Index> idx(dims.size(), 0);
  const Eigen::Index total = rho.rows();
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    // decompose flat into the multi-index
    Eigen::Index rem = flat;
    for (std::size_t f = 0; f < dims.size(); ++f) {
      idx[f] = rem / strides[f];
      rem %= strides[f];
    }
    for (Eigen::Index j = 0; j < dk; ++j) {
      // column index equal to flat except the kept factor replaced by j
      const Eigen::Index col = flat + (j - idx[keep]) * strides[keep];
      out(idx[keep], j) += rho(flat, col);
    }
  }
  return out;
}

// Tr(A^dagger B) by explicit loops.
inline Complex naive_hs_inner(const Matrix& a, const Matrix& b) {
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) acc += std::conj(a(i, j)) * b(i, j);
  return acc;
}

inline Matrix naive_outer(const Vector& v) {
  Matrix out(v.size(), v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    for (Eigen::Index j = 0; j < v.size(); ++j) out(i, j) = v(i) * std::conj(v(j));
  return out;
}

// <v|M|v> by explicit loops.
inline Complex naive_expectation(const Vector& v, const Matrix& m) {
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    for (Eigen::Index j = 0; j < v.size(); ++j) acc += std::conj(v(i)) * m(i, j) * v(j);
  return acc;
}

// Dimension of the linear span of the operators, via rank of the entrywise
// linear system (column-pivoted QR on the flattened matrices).
inline Eigen::Index span_rank(const std::vector<Matrix>& ops, double threshold = 1e-9) {
  if (ops.empty()) return 0;
  const Eigen::Index n = ops[0].size();
  Matrix flat(n, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k)
    flat.col(static_cast<Eigen::Index>(k)) = ops[k].reshaped();
  Eigen::ColPivHouseholderQR<Matrix> qr(flat);
  qr.setThreshold(threshold);
  return qr.rank();
}

inline Matrix random_matrix(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

inline Matrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  const Matrix m = random_matrix(dim, rng);
  return (m + m.adjoint()) / 2.0;
}

// Positive-definite, unit-trace matrix.
inline Matrix random_density(Eigen::Index dim, std::mt19937_64& rng) {
  const Matrix m = random_matrix(dim, rng);
  const Matrix positive = m * m.adjoint() + 1e-6 * Matrix::Identity(dim, dim);
  return positive / positive.trace();
}

// Normalized complex amplitude pair.
inline std::pair<Complex, Complex> random_amplitudes(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Complex a1(gauss(rng), gauss(rng));
  Complex a2(gauss(rng), gauss(rng));
  const double norm = std::sqrt(std::norm(a1) + std::norm(a2));
  return {a1 / norm, a2 / norm};
}

}  // namespace oracles
