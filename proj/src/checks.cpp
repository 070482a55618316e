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

#include "lindcur/checks.hpp"

#include <algorithm>
#include <cmath>

#include "lindcur/workflows.hpp"

namespace lindcur {

ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

ComplexMatrix random_density_matrix(int n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(n, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

double continuity_identity_deviation(const LatticeOperators& ops) {
  const auto div = discrete_divergence(ops.bond_currents, ops.n_sites());
  double worst = 0.0;
  for (int r = 0; r < ops.n_sites(); ++r) {
    const auto i = static_cast<std::size_t>(r);
    const ComplexMatrix& n = ops.densities[i];
    const ComplexMatrix lhs = kI * (ops.hamiltonian * n - n * ops.hamiltonian) + div[i];
    worst = std::max(worst, max_abs(lhs));
  }
  return worst;
}

GeneratorSanity generator_sanity(const LindbladGenerator& g, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GeneratorSanity out;
  const int n = g.dimension;
  out.unital = max_abs(superop_adjoint(g.dissipator).apply(ComplexMatrix::Identity(n, n)));
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix rho = random_density_matrix(n, rng);
    out.trace = std::max(out.trace, std::abs(g.dissipator.apply(rho).trace()));
    const ComplexMatrix x = random_matrix(n, rng);
    const ComplexMatrix lhs = g.dissipator.apply(x).adjoint();
    const ComplexMatrix rhs = g.dissipator.apply(x.adjoint());
    out.hermiticity = std::max(out.hermiticity, max_abs(lhs - rhs));
  }
  return out;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

PreLindbladLadder prelindblad_ladder(const Model& model, const std::vector<double>& windows, double dt) {
  PreLindbladLadder ladder;
  ladder.windows = windows;
  const double scale = std::max(1.0, max_abs(model.generator.dissipator.matrix()));
  for (double w : windows) {
    const SuperOperator pre = pre_lindblad_generator(model.coupling, model.kernel, w, dt);
    ladder.distances.push_back(max_abs(pre.matrix() - model.generator.dissipator.matrix()));
  }
  ladder.trivial = std::all_of(ladder.distances.begin(), ladder.distances.end(),
                               [scale](double d) { return d <= 1e-14 * scale; });
  ladder.monotone = true;
  for (std::size_t k = 1; k < ladder.distances.size(); ++k)
    ladder.monotone = ladder.monotone && ladder.distances[k] < ladder.distances[k - 1];
  ladder.slope = ladder.trivial ? 0.0 : log_log_slope(ladder.windows, ladder.distances);
  return ladder;
}

double OracleLadder::relative_error(std::size_t k) const {
  double ref = 0.0;
  for (double s : spectral) ref = std::max(ref, std::abs(s));
  return errors[k] / std::max(ref, 1e-12);
}

bool OracleLadder::decreasing() const {
  for (std::size_t k = 1; k < errors.size(); ++k)
    // differences below 1e-12 are rounding, not a trend
    if (errors[k] > std::max(errors[k - 1], 1e-12)) return false;
  return true;
}

OracleLadder oracle_ladder(const Model& model, const ComplexMatrix& rho, const std::vector<double>& times,
                           double dt) {
  OracleLadder ladder;
  ladder.times = times;
  ladder.spectral = jd_expectation(model.engine, rho);
  for (double t : times) {
    auto values = jd_finite_time_oracle(model.ops, model.eig, model.spectrum, model.kernel, rho, t, dt);
    double err = 0.0;
    for (std::size_t b = 0; b < values.size(); ++b) err = std::max(err, std::abs(values[b] - ladder.spectral[b]));
    ladder.errors.push_back(err);
    ladder.values.push_back(std::move(values));
  }
  return ladder;
}

}  // namespace lindcur
