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

#include "lindcur/lattice.hpp"

#include <cmath>
#include <string>

#include "lindcur/error.hpp"

namespace lindcur {

namespace {

void require_finite(const std::vector<double>& v, const char* field) {
  for (double x : v)
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, std::string(field) + ": non-finite entry");
}

template <class T>
std::vector<T> divergence_impl(const std::vector<T>& bonds, const T& zero) {
  const std::size_t n = bonds.size() + 1;
  std::vector<T> sites(n, zero);
  for (std::size_t r = 0; r < n; ++r) {
    const T& right = r < bonds.size() ? bonds[r] : zero;
    const T& left = r > 0 ? bonds[r - 1] : zero;
    sites[r] = right - left;
  }
  return sites;
}

}  // namespace

void validate_chain(const ChainSpec& spec) {
  if (spec.n_sites < 2) throw Error(ErrorCode::InvalidArgument, "chain: n_sites must be >= 2");
  if (!(spec.hopping > 0.0) || !std::isfinite(spec.hopping))
    throw Error(ErrorCode::InvalidArgument, "chain: hopping must be positive and finite");
  const auto n = static_cast<std::size_t>(spec.n_sites);
  if (!spec.potential.empty() && spec.potential.size() != n)
    throw Error(ErrorCode::InvalidArgument, "chain: potential must have n_sites entries");
  if (spec.coupling.size() != n)
    throw Error(ErrorCode::InvalidArgument, "chain: coupling must have n_sites entries");
  require_finite(spec.potential, "chain.potential");
  require_finite(spec.coupling, "chain.coupling");
}

LatticeOperators build_chain(const ChainSpec& spec) {
  validate_chain(spec);
  const int n = spec.n_sites;
  const double t = spec.hopping;

  LatticeOperators ops;
  ops.hamiltonian = ComplexMatrix::Zero(n, n);
  ops.coupling = ComplexMatrix::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    if (!spec.potential.empty()) ops.hamiltonian(r, r) = spec.potential[r];
    ops.coupling(r, r) = spec.coupling[r];
    ComplexMatrix proj = ComplexMatrix::Zero(n, n);
    proj(r, r) = 1.0;
    ops.densities.push_back(std::move(proj));
  }
  for (int r = 0; r + 1 < n; ++r) {
    ops.hamiltonian(r, r + 1) = -t;
    ops.hamiltonian(r + 1, r) = -t;
    // J = -i t (|r><r+1| - |r+1><r|): the sign fixed by continuity.
    ComplexMatrix j = ComplexMatrix::Zero(n, n);
    j(r, r + 1) = Complex(0.0, -t);
    j(r + 1, r) = Complex(0.0, t);
    ops.bond_currents.push_back(std::move(j));
  }
  return ops;
}

static void check_length(std::size_t bonds, int n_sites) {
  if (bonds == 0 || (n_sites >= 0 && bonds + 1 != static_cast<std::size_t>(n_sites)))
    throw Error(ErrorCode::LengthMismatch, "discrete_divergence: expected n_sites - 1 >= 1 bond values");
}

std::vector<double> discrete_divergence(const std::vector<double>& bonds, int n_sites) {
  check_length(bonds.size(), n_sites);
  return divergence_impl(bonds, 0.0);
}

std::vector<ComplexMatrix> discrete_divergence(const std::vector<ComplexMatrix>& bonds, int n_sites) {
  check_length(bonds.size(), n_sites);
  const auto n = bonds.front().rows();
  for (const auto& b : bonds)
    if (b.rows() != n || b.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "discrete_divergence: bond matrices differ in shape");
  return divergence_impl(bonds, ComplexMatrix(ComplexMatrix::Zero(n, n)));
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.array() * b.transpose().array()).sum();
}

ExpectationReport expectation_report(const LatticeOperators& ops, const ComplexMatrix& rho) {
  const int n = ops.n_sites();
  if (rho.rows() != n || rho.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "expectation_report: state dimension differs from chain");
  ExpectationReport report;
  for (const auto& nr : ops.densities) report.densities.push_back(trace_product(nr, rho).real());
  for (const auto& jb : ops.bond_currents) report.currents.push_back(trace_product(jb, rho).real());
  return report;
}

}  // namespace lindcur
