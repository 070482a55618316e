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

#include <vector>

#include "lindcur/linalg.hpp"

namespace lindcur {

/// Open tight-binding chain. `coupling` is the site profile u_r of the local
/// system-bath coupling V = diag(u_r).
struct ChainSpec {
  int n_sites = 2;
  double hopping = 1.0;
  std::vector<double> potential;
  std::vector<double> coupling;
};

/// Operators of a chain. Sites r = 0..N-1; bond b joins sites b and b+1.
/// Bond currents satisfy i[H, n_r] = -(J_{r+1/2} - J_{r-1/2}) exactly, with
/// zero current on the two virtual outer bonds.
struct LatticeOperators {
  ComplexMatrix hamiltonian;
  std::vector<ComplexMatrix> densities;
  std::vector<ComplexMatrix> bond_currents;
  ComplexMatrix coupling;

  int n_sites() const { return static_cast<int>(densities.size()); }
  int n_bonds() const { return static_cast<int>(bond_currents.size()); }
};

/// Throws InvalidArgument unless N >= 2, hopping > 0, arrays have length N
/// and all entries are finite. An empty potential means all zeros.
void validate_chain(const ChainSpec& spec);

LatticeOperators build_chain(const ChainSpec& spec);

/// (div J)_r = J_{r+1/2} - J_{r-1/2} with zero virtual outer bonds.
/// N-1 bond values in, N site values out. When `n_sites` is given the bond
/// count is checked against it (LengthMismatch).
std::vector<double> discrete_divergence(const std::vector<double>& bonds, int n_sites = -1);
std::vector<ComplexMatrix> discrete_divergence(const std::vector<ComplexMatrix>& bonds, int n_sites = -1);

struct ExpectationReport {
  std::vector<double> densities;
  std::vector<double> currents;
};

ExpectationReport expectation_report(const LatticeOperators& ops, const ComplexMatrix& rho);

/// tr(a b) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace lindcur
