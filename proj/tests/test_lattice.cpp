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

#include "support.hpp"

using namespace lindcur;

TEST_CASE("two-site chain layout") {
  const auto ops = build_chain(testing::chain(2));
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 1) = h(1, 0) = -1.0;
  CHECK(max_abs(ops.hamiltonian - h) == 0.0);
  REQUIRE(ops.n_bonds() == 1);
  ComplexMatrix j = ComplexMatrix::Zero(2, 2);
  j(0, 1) = -kI;
  j(1, 0) = kI;
  CHECK(max_abs(ops.bond_currents[0] - j) == 0.0);
}

TEST_CASE("continuity identity on the four-site chain") {
  const auto ops = build_chain(testing::chain(4));
  const ComplexMatrix& n2 = ops.densities[1];
  const ComplexMatrix lhs = kI * (ops.hamiltonian * n2 - n2 * ops.hamiltonian);
  CHECK(max_abs(lhs - (ops.bond_currents[0] - ops.bond_currents[1])) == 0.0);
}

TEST_CASE("continuity identity with random potentials") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n : {2, 4, 6}) {
    std::vector<double> v;
    for (int r = 0; r < n; ++r) v.push_back(u(rng));
    const auto ops = build_chain(testing::chain(n, v));
    const auto div = discrete_divergence(ops.bond_currents, n);
    for (int r = 0; r < n; ++r) {
      const auto i = static_cast<std::size_t>(r);
      const ComplexMatrix c = kI * (ops.hamiltonian * ops.densities[i] - ops.densities[i] * ops.hamiltonian);
      CHECK(max_abs(c + div[i]) <= 1e-14);
      CHECK(max_abs(ops.densities[i] * ops.coupling - ops.coupling * ops.densities[i]) == 0.0);
    }
    const auto eig = hermitian_eigensystem(ops.hamiltonian);
    CHECK(eig.energies.allFinite());
  }
}

TEST_CASE("discrete divergence") {
  CHECK(discrete_divergence({2.0, 2.0, 2.0}) == std::vector<double>{2.0, 0.0, 0.0, -2.0});
  CHECK(discrete_divergence({1.0, 4.0}) == std::vector<double>{1.0, 3.0, -4.0});
  CHECK_ERROR_CODE(discrete_divergence({1.0, 4.0}, 4), ErrorCode::LengthMismatch);
  CHECK_ERROR_CODE(discrete_divergence(std::vector<double>{}), ErrorCode::LengthMismatch);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> bonds;
  for (int b = 0; b < 7; ++b) bonds.push_back(std::ldexp(std::round(std::ldexp(u(rng), 20)), -20));
  double total = 0.0;
  for (double s : discrete_divergence(bonds)) total += s;
  CHECK(total == 0.0);
}

TEST_CASE("zero-frequency part of the current divergence vanishes") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {3, 5}) {
    std::vector<double> v;
    for (int r = 0; r < n; ++r) v.push_back(u(rng));
    const auto ops = build_chain(testing::chain(n, v));
    const auto eig = hermitian_eigensystem(ops.hamiltonian);
    const auto spectrum = bohr_frequencies(eig, default_frequency_tolerance(eig));
    for (const auto& d : discrete_divergence(ops.bond_currents, n))
      CHECK(max_abs(component_at(decompose(d, eig, spectrum), 0.0, spectrum)) <= 1e-12);
  }
}

TEST_CASE("expectation report") {
  const auto ops = build_chain(testing::chain(4));
  SUBCASE("site state") {
    const auto rep = expectation_report(ops, testing::unit(4, 0, 0));
    CHECK(rep.densities == std::vector<double>{1.0, 0.0, 0.0, 0.0});
    for (double j : rep.currents) CHECK(j == 0.0);
  }
  SUBCASE("maximally mixed") {
    const auto rep = expectation_report(ops, ComplexMatrix::Identity(4, 4) / 4.0);
    for (double n : rep.densities) CHECK(n == doctest::Approx(0.25));
    for (double j : rep.currents) CHECK(j == 0.0);
  }
  SUBCASE("plane wave") {
    ComplexVector psi(4);
    psi << 1.0, kI, -1.0, -kI;
    psi /= 2.0;
    const auto rep = expectation_report(ops, psi * psi.adjoint());
    for (std::size_t b = 0; b < 3; ++b) {
      // -i t (conj(psi_r) psi_{r+1} - c.c.)
      const auto r = static_cast<Eigen::Index>(b);
      const Complex direct = -kI * (std::conj(psi(r)) * psi(r + 1) - std::conj(psi(r + 1)) * psi(r));
      CHECK(rep.currents[b] == doctest::Approx(direct.real()));
      CHECK(rep.currents[b] == doctest::Approx(rep.currents[0]));
    }
    CHECK(rep.currents[0] != 0.0);
  }
}

TEST_CASE("chain validation") {
  auto spec = testing::chain(3);
  spec.coupling.pop_back();
  CHECK_ERROR_CODE(build_chain(spec), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(build_chain(testing::chain(1, {0.0}, {1.0})), ErrorCode::InvalidArgument);
  auto bad_hop = testing::chain(3);
  bad_hop.hopping = -1.0;
  CHECK_ERROR_CODE(validate_chain(bad_hop), ErrorCode::InvalidArgument);
}
