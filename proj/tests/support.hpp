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

#include <cmath>
#include <random>
#include <vector>

#include "lindcur/dissipative_current.hpp"
#include "lindcur/error.hpp"
#include "lindcur/lattice.hpp"
#include "lindcur/lindblad.hpp"
#include "lindcur/reservoir.hpp"
#include "lindcur/spectral.hpp"

// Evaluates expr and requires a lindcur::Error carrying `expected`.
#define CHECK_ERROR_CODE(expr, expected)                  \
  do {                                                    \
    try {                                                 \
      (void)(expr);                                       \
      FAIL_CHECK("no exception from " #expr);             \
    } catch (const lindcur::Error& caught_) {             \
      CHECK(caught_.code() == (expected));                \
    }                                                     \
  } while (0)

namespace testing {

using namespace lindcur;

inline ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  return 0.5 * (m + m.adjoint());
}

inline ComplexMatrix random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

inline ComplexMatrix unit(int n, int i, int j) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

inline ChainSpec chain(int n, std::vector<double> potential = {}, std::vector<double> coupling = {}) {
  ChainSpec spec;
  spec.n_sites = n;
  spec.hopping = 1.0;
  spec.potential = potential.empty() ? std::vector<double>(static_cast<std::size_t>(n), 0.0) : potential;
  if (coupling.empty())
    for (int r = 0; r < n; ++r) coupling.push_back(r % 2 == 0 ? 1.0 : -1.0);
  spec.coupling = coupling;
  return spec;
}

// Everything needed downstream of a chain and a bath.
struct Fixture {
  LatticeOperators ops;
  EigenSystem eig;
  BohrSpectrum spectrum;
  HalfFourierTable gplus;
  LindbladGenerator generator;

  Fixture(const ChainSpec& spec, const CorrelationKernel& kernel)
      : ops(build_chain(spec)),
        eig(hermitian_eigensystem(ops.hamiltonian)),
        spectrum(bohr_frequencies(eig, default_frequency_tolerance(eig))),
        gplus(half_fourier_table(kernel, spectrum)),
        generator(build_generator(decompose(ops.coupling, eig, spectrum), gplus, eig)) {}

  JDEngine engine() const { return build_engine(ops, eig, spectrum, gplus); }
};

inline ExponentialKernel reference_bath() { return {0.1, 5.0, 0.0}; }

// H = diag(0, w0), V = sigma_x: the two-level model used throughout.
struct TwoLevel {
  EigenSystem eig;
  BohrSpectrum spectrum;
  SpectralOperator coupling;

  explicit TwoLevel(double w0)
      : eig{RealVector::Map(std::vector<double>{0.0, w0}.data(), 2), ComplexMatrix::Identity(2, 2)},
        spectrum(bohr_frequencies(eig, 1e-9)),
        coupling(decompose(sigma_x(), eig, spectrum)) {}

  static ComplexMatrix sigma_x() {
    ComplexMatrix x = ComplexMatrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    return x;
  }
};

}  // namespace testing
