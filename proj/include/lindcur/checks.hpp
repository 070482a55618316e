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

#include <cstdint>
#include <random>
#include <vector>

#include "lindcur/dissipative_current.hpp"
#include "lindcur/lattice.hpp"
#include "lindcur/lindblad.hpp"

namespace lindcur {

struct Model;

/// Ginibre sample G G^dag / tr(G G^dag).
ComplexMatrix random_density_matrix(int n, std::mt19937_64& rng);
ComplexMatrix random_matrix(int n, std::mt19937_64& rng);

/// max_r max_ij |i[H, n_r] + (div J)_r|
double continuity_identity_deviation(const LatticeOperators& ops);

struct GeneratorSanity {
  double trace = 0.0;        // max |tr D(rho)|
  double unital = 0.0;       // max |D*(I)|_ij
  double hermiticity = 0.0;  // max |D(rho)^dag - D(rho^dag)|_ij
};

/// Evaluated on `samples` random density matrices (trace, hermiticity use
/// random non-Hermitian operands for the latter).
GeneratorSanity generator_sanity(const LindbladGenerator& g, int samples, std::uint64_t seed);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

struct PreLindbladLadder {
  std::vector<double> windows;
  std::vector<double> distances;  // max |pre(window) - dissipator|
  double slope = 0.0;
  bool monotone = false;
  bool trivial = false;  // every distance is zero (no dissipation)
};

PreLindbladLadder prelindblad_ladder(const Model& model, const std::vector<double>& windows, double dt);

struct OracleLadder {
  std::vector<double> times;
  std::vector<std::vector<double>> values;
  std::vector<double> spectral;
  std::vector<double> errors;  // max_b |oracle - spectral|
  double relative_error(std::size_t k) const;
  bool decreasing() const;
};

OracleLadder oracle_ladder(const Model& model, const ComplexMatrix& rho, const std::vector<double>& times,
                           double dt);

}  // namespace lindcur
