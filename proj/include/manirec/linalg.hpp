// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>

#include "manirec/errors.hpp"

namespace manirec {

// A d x k matrix with orthonormal columns. Construction validates
// F^t F = I_k to within 1e-10 in max absolute deviation.
template <class Scalar>
class FrameT {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  static constexpr Scalar kOrthoTol = Scalar(1e-10);

  FrameT() = default;

  explicit FrameT(Matrix columns) : m_(std::move(columns)) {
    if (m_.rows() < 1 || m_.cols() < 1 || m_.cols() > m_.rows())
      throw DomainError("Frame: need 1 <= cols <= rows");
    if (!m_.allFinite()) throw NumericError("Frame: non-finite entries");
    const Matrix gram = m_.transpose() * m_;
    const Scalar dev = (gram - Matrix::Identity(m_.cols(), m_.cols())).cwiseAbs().maxCoeff();
    if (dev > kOrthoTol) throw DomainError("Frame: columns not orthonormal");
  }

  Eigen::Index ambient_dim() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  const Matrix& matrix() const { return m_; }
  auto col(Eigen::Index j) const { return m_.col(j); }

  // Orthogonal projector onto the column span.
  Matrix projector() const { return m_ * m_.transpose(); }

 private:
  Matrix m_;
};

using Frame = FrameT<double>;

template <class Scalar>
struct SymmetricSpectrumT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvalues;  // ascending
  FrameT<Scalar> eigenvectors;                           // k = d, matching columns
};

using SymmetricSpectrum = SymmetricSpectrumT<double>;

namespace detail {

// Fix each eigenvector's sign so its largest-magnitude entry is positive,
// breaking magnitude ties by lowest row index.
template <class Matrix>
void fix_column_signs(Matrix& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index lead = 0;
    for (Eigen::Index i = 1; i < vectors.rows(); ++i)
      if (std::abs(vectors(i, j)) > std::abs(vectors(lead, j))) lead = i;
    if (vectors(lead, j) < 0) vectors.col(j) = -vectors.col(j);
  }
}

}  // namespace detail

// Deterministic symmetric eigendecomposition: eigenvalues ascending, column
// signs fixed by the largest-magnitude-entry convention. The input is
// symmetrized as (C + C^t)/2; deviations beyond 1e-12 are rejected.
template <class Derived>
SymmetricSpectrumT<typename Derived::Scalar> sym_eig(const Eigen::MatrixBase<Derived>& C) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  if (C.rows() != C.cols()) throw DomainError("sym_eig: matrix not square");
  const Matrix dense = C;
  if (!dense.allFinite()) throw NumericError("sym_eig: non-finite entries");
  const Scalar asym = (dense - dense.transpose()).cwiseAbs().maxCoeff();
  if (asym > Scalar(1e-12)) throw DomainError("sym_eig: matrix not symmetric within 1e-12");

  const Matrix sym = (dense + dense.transpose()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericError("sym_eig: eigensolver failed");

  Matrix vectors = solver.eigenvectors();
  detail::fix_column_signs(vectors);
  return {solver.eigenvalues(), FrameT<Scalar>(std::move(vectors))};
}

// Angle between the column spans of U and V, taken from the smaller subspace:
// the arcsine of the largest singular value of (I - V V^t) U, clamped to
// [0, pi/2]. Requires U.cols() <= V.cols().
template <class Scalar>
Scalar subspace_angle(const FrameT<Scalar>& U, const FrameT<Scalar>& V) {
  using Matrix = typename FrameT<Scalar>::Matrix;
  if (U.ambient_dim() != V.ambient_dim())
    throw DomainError("subspace_angle: ambient dimensions differ");
  if (U.cols() > V.cols())
    throw DomainError("subspace_angle: angle is defined from the smaller subspace");
  const Matrix residual = U.matrix() - V.matrix() * (V.matrix().transpose() * U.matrix());
  Eigen::JacobiSVD<Matrix> svd(residual);
  const Scalar s = std::clamp(svd.singularValues()[0], Scalar(0), Scalar(1));
  return std::asin(s);
}

// Modified Gram-Schmidt. Columns of `vectors` must be linearly independent:
// a residual below 1e-10 of the input column norm is rejected.
template <class Derived>
FrameT<typename Derived::Scalar> orthonormalize(const Eigen::MatrixBase<Derived>& vectors) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix q = vectors;
  if (q.cols() < 1) throw DomainError("orthonormalize: no input vectors");
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Scalar input_norm = vectors.col(j).norm();
    for (Eigen::Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    const Scalar residual = q.col(j).norm();
    if (residual < Scalar(1e-10) * input_norm || residual == Scalar(0))
      throw RankDeficientError("orthonormalize: inputs are linearly dependent");
    q.col(j) /= residual;
  }
  return FrameT<Scalar>(std::move(q));
}

// Orthonormal basis of the orthogonal complement of col(F), via the trailing
// columns of a full Householder QR. Deterministic for a fixed input.
template <class Scalar>
FrameT<Scalar> orthogonal_complement(const FrameT<Scalar>& F) {
  using Matrix = typename FrameT<Scalar>::Matrix;
  const Eigen::Index d = F.ambient_dim();
  const Eigen::Index k = F.cols();
  if (k >= d) throw DomainError("orthogonal_complement: frame already spans the space");
  Eigen::HouseholderQR<Matrix> qr(F.matrix());
  Matrix full = qr.householderQ() * Matrix::Identity(d, d);
  Matrix tail = full.rightCols(d - k);
  detail::fix_column_signs(tail);
  return FrameT<Scalar>(std::move(tail));
}

}  // namespace manirec
