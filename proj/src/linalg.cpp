// Copyright 2026 The lindcur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lindcur/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lindcur/error.hpp"

namespace lindcur {

namespace {

void require_square(const ComplexMatrix& m, int dimension, const char* what) {
  if (m.rows() != dimension || m.cols() != dimension) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": expected " + std::to_string(dimension) + "x" +
                    std::to_string(dimension) + ", got " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
}

// Transpose permutation P on column-stacked vectors: P vec(X) = vec(X^T).
ComplexMatrix transpose_permutation(int n) {
  ComplexMatrix p = ComplexMatrix::Zero(n * n, n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) p(i * n + j, j * n + i) = 1.0;
  return p;
}

}  // namespace

SuperOperator::SuperOperator(int dimension, ComplexMatrix action)
    : dimension_(dimension), action_(std::move(action)) {
  require_square(action_, dimension * dimension, "SuperOperator");
}

SuperOperator SuperOperator::zero(int dimension) {
  return {dimension, ComplexMatrix::Zero(dimension * dimension, dimension * dimension)};
}

SuperOperator SuperOperator::identity(int dimension) {
  return {dimension, ComplexMatrix::Identity(dimension * dimension, dimension * dimension)};
}

SuperOperator SuperOperator::sandwich(const ComplexMatrix& left, const ComplexMatrix& right) {
  const int n = static_cast<int>(left.rows());
  require_square(left, n, "sandwich(left)");
  require_square(right, n, "sandwich(right)");
  // vec(L X R) = (R^T kron L) vec(X)
  ComplexMatrix k(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) k.block(a * n, b * n, n, n) = right(b, a) * left;
  return {n, std::move(k)};
}

ComplexMatrix SuperOperator::apply(const ComplexMatrix& x) const {
  require_square(x, dimension_, "SuperOperator::apply");
  return unvectorize(action_ * vectorize(x), dimension_);
}

SuperOperator SuperOperator::operator+(const SuperOperator& other) const {
  SuperOperator out = *this;
  out += other;
  return out;
}

SuperOperator SuperOperator::operator-(const SuperOperator& other) const {
  if (other.dimension_ != dimension_)
    throw Error(ErrorCode::DimensionMismatch, "SuperOperator subtraction");
  return {dimension_, action_ - other.action_};
}

SuperOperator SuperOperator::operator*(Complex scale) const {
  return {dimension_, action_ * scale};
}

SuperOperator& SuperOperator::operator+=(const SuperOperator& other) {
  if (other.dimension_ != dimension_)
    throw Error(ErrorCode::DimensionMismatch, "SuperOperator addition");
  action_ += other.action_;
  return *this;
}

ComplexVector vectorize(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, int dimension) {
  if (v.size() != static_cast<Eigen::Index>(dimension) * dimension)
    throw Error(ErrorCode::DimensionMismatch, "unvectorize: length is not N^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), dimension, dimension);
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

double anti_hermitian_part(const ComplexMatrix& m) {
  return 0.5 * max_abs(m - m.adjoint());
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "hermitian_eigensystem: matrix must be square");
  if (!all_finite(m)) throw Error(ErrorCode::InvalidArgument, "hermitian_eigensystem: non-finite entry");
  const double scale = std::max(1.0, max_abs(m));
  if (anti_hermitian_part(m) > 1e-10 * scale)
    throw Error(ErrorCode::NotHermitian, "hermitian_eigensystem: anti-Hermitian part " +
                                             std::to_string(anti_hermitian_part(m)));

  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergence, "hermitian_eigensystem: eigen-solver failed");

  EigenSystem eig{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < eig.basis.cols(); ++k) {
    auto col = eig.basis.col(k);
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      const double mag = std::abs(col(i));
      if (mag > 1e-12) {
        col *= std::conj(col(i)) / mag;
        col(i) = mag;
        break;
      }
    }
  }
  return eig;
}

SuperOperator superop_adjoint(const SuperOperator& s) {
  // trace(A S(B)) = vec(A^T)^T S vec(B), hence S* = P S^T P.
  const ComplexMatrix p = transpose_permutation(s.dimension());
  return {s.dimension(), p * s.matrix().transpose() * p};
}

SuperOperator superop_from_action(const MatrixMap& f, int dimension) {
  const int n = dimension;
  ComplexMatrix action(n * n, n * n);
  ComplexMatrix unit = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      unit(i, j) = 1.0;
      const ComplexMatrix image = f(unit);
      unit(i, j) = 0.0;
      require_square(image, n, "superop_from_action image");
      action.col(j * n + i) = vectorize(image);
    }
  }
  return {n, std::move(action)};
}

SuperOperator superop_change_basis(const SuperOperator& s, const ComplexMatrix& basis) {
  const int n = s.dimension();
  require_square(basis, n, "superop_change_basis");
  // vec(U X U^dag) = (conj(U) kron U) vec(X)
  const ComplexMatrix w = SuperOperator::sandwich(basis, basis.adjoint()).matrix();
  return {n, w * s.matrix() * w.adjoint()};
}

}  // namespace lindcur
