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

#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace lindcur {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Spectral resolution of a Hermitian matrix. Energies ascend; column k of
/// `basis` is the eigenvector of `energies[k]`, with its first non-negligible
/// component real and positive.
struct EigenSystem {
  RealVector energies;
  ComplexMatrix basis;

  int dimension() const { return static_cast<int>(energies.size()); }
  ComplexMatrix to_energy_basis(const ComplexMatrix& site) const {
    return basis.adjoint() * site * basis;
  }
  ComplexMatrix to_site_basis(const ComplexMatrix& energy) const {
    return basis * energy * basis.adjoint();
  }
};

/// Linear map on N x N matrices, stored as the N^2 x N^2 matrix acting on
/// column-stacked operands: vec(X)[j*N + i] = X(i, j).
class SuperOperator {
 public:
  SuperOperator() = default;
  SuperOperator(int dimension, ComplexMatrix action);

  static SuperOperator zero(int dimension);
  static SuperOperator identity(int dimension);
  /// X -> left * X * right
  static SuperOperator sandwich(const ComplexMatrix& left, const ComplexMatrix& right);

  int dimension() const { return dimension_; }
  const ComplexMatrix& matrix() const { return action_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;

  SuperOperator operator+(const SuperOperator& other) const;
  SuperOperator operator-(const SuperOperator& other) const;
  SuperOperator operator*(Complex scale) const;
  SuperOperator& operator+=(const SuperOperator& other);

 private:
  int dimension_ = 0;
  ComplexMatrix action_;
};

ComplexVector vectorize(const ComplexMatrix& x);
ComplexMatrix unvectorize(const ComplexVector& v, int dimension);

double max_abs(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);
double anti_hermitian_part(const ComplexMatrix& m);

/// Throws NotHermitian when the anti-Hermitian part exceeds
/// 1e-10 * max(1, max|M_ij|), NoConvergence if the solver fails.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

/// The map S* with trace(A S(B)) = trace(S*(A) B). No conjugation: this is
/// the pairing used for expectation values of Hermitian observables.
SuperOperator superop_adjoint(const SuperOperator& s);

using MatrixMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// Assembles the matrix of a linear map by evaluating it on the N^2 matrix
/// units E_ij, visited row-major (i outer).
SuperOperator superop_from_action(const MatrixMap& f, int dimension);

/// Given S acting on operands expressed in the basis whose vectors are the
/// columns of `basis`, returns the same map for operands in the original
/// basis: X -> basis * S(basis^dag X basis) * basis^dag.
SuperOperator superop_change_basis(const SuperOperator& s, const ComplexMatrix& basis);

}  // namespace lindcur
