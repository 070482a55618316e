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

#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "support.hpp"

using namespace lindcur;
using testing::unit;

TEST_CASE("eigensystem of a diagonal matrix sorts energies") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  const auto e = hermitian_eigensystem(m);
  CHECK(e.energies(0) == doctest::Approx(1.0));
  CHECK(e.energies(1) == doctest::Approx(3.0));
  ComplexMatrix swap = ComplexMatrix::Zero(2, 2);
  swap(1, 0) = swap(0, 1) = 1.0;
  CHECK(max_abs(e.basis - swap) < 1e-14);
}

TEST_CASE("eigensystem of sigma_x") {
  const auto e = hermitian_eigensystem(testing::TwoLevel::sigma_x());
  CHECK(e.energies(0) == doctest::Approx(-1.0));
  CHECK(e.energies(1) == doctest::Approx(1.0));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(e.basis(0, 0) - s) < 1e-14);
  CHECK(std::abs(e.basis(1, 0) + s) < 1e-14);
  CHECK(std::abs(e.basis(0, 1) - s) < 1e-14);
  CHECK(std::abs(e.basis(1, 1) - s) < 1e-14);
}

TEST_CASE("open chain dispersion") {
  const auto ops = build_chain(testing::chain(4));
  const auto e = hermitian_eigensystem(ops.hamiltonian);
  std::vector<double> expected;
  for (int k = 1; k <= 4; ++k) expected.push_back(-2.0 * std::cos(k * std::numbers::pi / 5.0));
  std::sort(expected.begin(), expected.end());
  for (int k = 0; k < 4; ++k) CHECK(std::abs(e.energies(k) - expected[static_cast<std::size_t>(k)]) < 1e-13);
}

TEST_CASE("eigensystem rejects non-Hermitian input and is deterministic") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_ERROR_CODE(hermitian_eigensystem(m), ErrorCode::NotHermitian);
  std::mt19937_64 rng(3);
  const ComplexMatrix h = testing::random_hermitian(6, rng);
  const auto a = hermitian_eigensystem(h);
  const auto b = hermitian_eigensystem(h);
  CHECK(a.energies == b.energies);
  CHECK(a.basis == b.basis);
}

TEST_CASE("degenerate eigenvectors get a real positive leading component") {
  const auto e = hermitian_eigensystem(ComplexMatrix::Identity(3, 3) * Complex(2.0, 0.0));
  for (int k = 0; k < 3; ++k) {
    int first = 0;
    while (std::abs(e.basis(first, k)) <= 1e-12) ++first;
    CHECK(e.basis(first, k).real() > 0.0);
    CHECK(std::abs(e.basis(first, k).imag()) < 1e-15);
  }
}

TEST_CASE("vectorization is column stacking") {
  ComplexMatrix x(2, 2);
  x << 1.0, 2.0, 3.0, 4.0;
  const ComplexVector v = vectorize(x);
  CHECK(v(1) == Complex(3.0));
  CHECK(v(2) == Complex(2.0));
  CHECK(unvectorize(v, 2) == x);
}

TEST_CASE("superoperator from action") {
  SUBCASE("zero map") {
    const auto s = superop_from_action([](const ComplexMatrix& x) { return ComplexMatrix::Zero(x.rows(), x.cols()).eval(); }, 2);
    CHECK(max_abs(s.matrix()) == 0.0);
    CHECK(s.matrix().rows() == 4);
  }
  SUBCASE("transpose swaps the off-diagonal slots") {
    const auto s = superop_from_action([](const ComplexMatrix& x) { return x.transpose().eval(); }, 2);
    ComplexMatrix p = ComplexMatrix::Zero(4, 4);
    p(0, 0) = p(3, 3) = p(1, 2) = p(2, 1) = 1.0;
    CHECK(max_abs(s.matrix() - p) == 0.0);
  }
  SUBCASE("commutator with diag(0,1)") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(1, 1) = 1.0;
    const auto s = superop_from_action([&](const ComplexMatrix& x) { return (d * x - x * d).eval(); }, 2);
    // brute force: the image of every matrix unit
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const ComplexMatrix img = s.apply(unit(2, i, j));
        CHECK(max_abs(img - (static_cast<double>(i) - static_cast<double>(j)) * unit(2, i, j)) == 0.0);
      }
    Eigen::ComplexEigenSolver<ComplexMatrix> ev(s.matrix());
    std::vector<double> values;
    for (const auto& l : ev.eigenvalues()) values.push_back(l.real());
    std::sort(values.begin(), values.end());
    CHECK(values == std::vector<double>{-1.0, 0.0, 0.0, 1.0});
  }
}

TEST_CASE("superoperator adjoint") {
  SUBCASE("identity is self-adjoint") {
    const auto id = SuperOperator::identity(3);
    CHECK(max_abs(superop_adjoint(id).matrix() - id.matrix()) == 0.0);
  }
  SUBCASE("left multiplication becomes right multiplication") {
    std::mt19937_64 rng(5);
    const ComplexMatrix c = testing::random_hermitian(3, rng) + kI * testing::random_hermitian(3, rng);
    const auto left = superop_from_action([&](const ComplexMatrix& b) { return (c * b).eval(); }, 3);
    const ComplexMatrix a = testing::random_hermitian(3, rng);
    CHECK(max_abs(superop_adjoint(left).apply(a) - a * c) < 1e-13);
  }
  SUBCASE("trace pairing and double adjoint") {
    std::mt19937_64 rng(7);
    const int n = 3;
    ComplexMatrix raw(n * n, n * n);
    for (int j = 0; j < n * n; ++j)
      for (int i = 0; i < n * n; ++i) raw(i, j) = Complex(std::normal_distribution<double>()(rng), 0.3 * i - 0.1 * j);
    const SuperOperator s(n, raw);
    const SuperOperator sa = superop_adjoint(s);
    CHECK(max_abs(superop_adjoint(sa).matrix() - s.matrix()) < 1e-12);
    // tr(A S(B)) = tr(S*(A) B) on every pair of matrix units
    for (int k = 0; k < n * n; ++k)
      for (int l = 0; l < n * n; ++l) {
        const ComplexMatrix a = unit(n, k % n, k / n);
        const ComplexMatrix b = unit(n, l % n, l / n);
        CHECK(std::abs((a * s.apply(b)).trace() - (sa.apply(a) * b).trace()) < 1e-12);
      }
  }
}

TEST_CASE("sandwich and basis change") {
  std::mt19937_64 rng(11);
  const ComplexMatrix l = testing::random_hermitian(3, rng);
  const ComplexMatrix r = testing::random_hermitian(3, rng) * kI;
  const ComplexMatrix x = testing::random_hermitian(3, rng);
  CHECK(max_abs(SuperOperator::sandwich(l, r).apply(x) - l * x * r) < 1e-13);

  const auto eig = hermitian_eigensystem(testing::random_hermitian(3, rng));
  const SuperOperator s = SuperOperator::sandwich(l, r);
  const SuperOperator rotated = superop_change_basis(s, eig.basis);
  // rotated acts on site-basis matrices given s acting on energy-basis ones
  const ComplexMatrix direct = eig.to_site_basis(s.apply(eig.to_energy_basis(x)));
  CHECK(max_abs(rotated.apply(x) - direct) < 1e-12);
}

TEST_CASE("superoperator arithmetic") {
  const auto id = SuperOperator::identity(2);
  const auto two = id + id;
  CHECK(max_abs(two.apply(ComplexMatrix::Identity(2, 2)) - 2.0 * ComplexMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs((two - id * Complex(2.0)).matrix()) == 0.0);
  CHECK_ERROR_CODE(id + SuperOperator::identity(3), ErrorCode::DimensionMismatch);
}

TEST_CASE("matrix exponential oracle agrees with eigenbasis evolution") {
  // guards the interaction-picture tests that rely on Eigen's Pade exp
  std::mt19937_64 rng(13);
  const ComplexMatrix h = testing::random_hermitian(4, rng);
  const auto eig = hermitian_eigensystem(h);
  const ComplexMatrix u = (kI * 0.7 * h).exp();
  ComplexMatrix phases = ComplexMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) phases(k, k) = std::exp(kI * 0.7 * eig.energies(k));
  CHECK(max_abs(u - eig.basis * phases * eig.basis.adjoint()) < 1e-12);
}
