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

#include "lindcur/dissipative_current.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "lindcur/error.hpp"

namespace lindcur {

namespace {

void require_dimension(const ComplexMatrix& m, int n, const char* where) {
  if (m.rows() != n || m.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, std::string(where) + ": operand dimension mismatch");
}

std::vector<SpectralOperator> decompose_all(const std::vector<ComplexMatrix>& ops, const EigenSystem& eig,
                                            const BohrSpectrum& spectrum) {
  std::vector<SpectralOperator> out;
  out.reserve(ops.size());
  for (const auto& op : ops) out.push_back(decompose(op, eig, spectrum));
  return out;
}

}  // namespace

JDEngine::JDEngine(const std::vector<ComplexMatrix>& bond_currents, const ComplexMatrix& coupling,
                   const EigenSystem& eig, const BohrSpectrum& spectrum, const HalfFourierTable& gplus)
    : eig_(eig),
      spectrum_(spectrum),
      coupling_(decompose(coupling, eig, spectrum)),
      currents_(decompose_all(bond_currents, eig, spectrum)) {
  for (double omega : spectrum_.frequencies()) {
    const auto rate = gplus.lookup(omega);
    if (!rate) {
      std::ostringstream msg;
      msg << "build_engine: no g+ value for omega=" << omega;
      throw Error(ErrorCode::MissingFrequency, msg.str());
    }
    rates_.push_back(*rate);
  }

  const std::size_t bins = spectrum_.size();
  const std::size_t zero = spectrum_.zero_bin();
  for (std::size_t j = 0; j < bins; ++j) {
    if (j == zero) continue;
    const double wj = spectrum_.frequency(j);
    for (std::size_t one = 0; one < bins; ++one) {
      // w_J + w_1 - w_2 = 0, w_rho = 0
      if (const auto two = spectrum_.find(wj + spectrum_.frequency(one))) index_.push_back({j, one, *two, zero, +1});
      // w_1 - w_2 = 0, w_J + w_rho = 0
      index_.push_back({j, one, one, spectrum_.mirror(j), -1});
    }
  }
  std::sort(index_.begin(), index_.end(), [](const Quadruple& a, const Quadruple& b) {
    return std::tie(a.j, a.one, a.two, a.rho, a.sign) < std::tie(b.j, b.one, b.two, b.rho, b.sign);
  });
}

std::vector<Complex> JDEngine::linear_form(const ComplexMatrix& x, int first, int last) const {
  const int n = dimension();
  require_dimension(x, n, "jd");
  const SpectralOperator xs = decompose(x, eig_, spectrum_);

  std::vector<Complex> out;
  for (int b = first; b < last; ++b) {
    const SpectralOperator& current = currents_[static_cast<std::size_t>(b)];
    Complex acc = 0.0;
    for (const Quadruple& q : index_) {
      const std::size_t dagger = spectrum_.mirror(q.two);  // V_{w_2}^dag = V_{-w_2}
      if (current.component_is_zero(q.j) || coupling_.component_is_zero(q.one) ||
          coupling_.component_is_zero(dagger) || xs.component_is_zero(q.rho))
        continue;
      const ComplexMatrix& jw = current.component(q.j);
      const ComplexMatrix& v1 = coupling_.component(q.one);
      const ComplexMatrix& v2d = coupling_.component(dagger);
      const ComplexMatrix& xw = xs.component(q.rho);
      // tr[J (A X B - B A X)] = tr[(B J - J B) A X]
      const ComplexMatrix ax = v2d * xw;
      const ComplexMatrix comm = v1 * jw - jw * v1;
      const Complex tr = trace_product(comm, ax);
      acc += static_cast<double>(q.sign) * (kI / spectrum_.frequency(q.j)) * rates_[q.two] * tr;
    }
    out.push_back(acc);
  }
  return out;
}

JDEngine build_engine(const LatticeOperators& ops, const EigenSystem& eig, const BohrSpectrum& spectrum,
                      const HalfFourierTable& gplus) {
  if (ops.hamiltonian.rows() != eig.dimension())
    throw Error(ErrorCode::DimensionMismatch, "build_engine: lattice and eigensystem differ in dimension");
  return JDEngine(ops.bond_currents, ops.coupling, eig, spectrum, gplus);
}

std::vector<double> jd_expectation(const JDEngine& engine, const ComplexMatrix& rho) {
  const auto forms = engine.linear_form(rho, 0, engine.n_bonds());
  std::vector<double> out;
  out.reserve(forms.size());
  for (const Complex& f : forms) out.push_back(2.0 * f.real());
  return out;
}

namespace {

// For Hermitian rho, 2 Re F(rho) = F(rho) + conj(F(rho^dag)); the right-hand
// side is complex-linear, so its values on matrix units give the observable:
// O_ji = F(E_ij) + conj(F(E_ji)).
std::vector<ComplexMatrix> observables(const JDEngine& engine, int first, int last) {
  const int n = engine.dimension();
  const auto count = static_cast<std::size_t>(last - first);
  std::vector<std::vector<Complex>> forms(static_cast<std::size_t>(n * n));
  ComplexMatrix unit = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      unit(i, j) = 1.0;
      forms[static_cast<std::size_t>(i * n + j)] = engine.linear_form(unit, first, last);
      unit(i, j) = 0.0;
    }
  std::vector<ComplexMatrix> out(count, ComplexMatrix::Zero(n, n));
  for (std::size_t b = 0; b < count; ++b)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out[b](j, i) = forms[static_cast<std::size_t>(i * n + j)][b] +
                       std::conj(forms[static_cast<std::size_t>(j * n + i)][b]);
  return out;
}

}  // namespace

ComplexMatrix jd_observable(const JDEngine& engine, int bond) {
  if (bond < 0 || bond >= engine.n_bonds())
    throw Error(ErrorCode::IndexOutOfRange, "jd_observable: bond index " + std::to_string(bond));
  return observables(engine, bond, bond + 1).front();
}

std::vector<ComplexMatrix> jd_observables(const JDEngine& engine) {
  return observables(engine, 0, engine.n_bonds());
}

std::vector<ComplexMatrix> lstar_density(const LindbladGenerator& g, const LatticeOperators& ops) {
  if (ops.n_sites() != g.dimension)
    throw Error(ErrorCode::DimensionMismatch, "lstar_density: lattice and generator differ in dimension");
  std::vector<ComplexMatrix> out;
  out.reserve(ops.densities.size());
  for (const auto& nr : ops.densities) out.push_back(apply_adjoint(g, nr));
  return out;
}

std::vector<double> jd_cumulative_1d(const LindbladGenerator& g, const LatticeOperators& ops,
                                     const ComplexMatrix& rho) {
  require_dimension(rho, g.dimension, "jd_cumulative_1d");
  const auto lstar = lstar_density(g, ops);
  std::vector<double> out;
  double running = 0.0;
  for (int b = 0; b < ops.n_bonds(); ++b) {
    running -= trace_product(lstar[static_cast<std::size_t>(b)], rho).real();
    out.push_back(running);
  }
  return out;
}

std::vector<double> jd_finite_time_oracle(const LatticeOperators& ops, const EigenSystem& eig,
                                          const BohrSpectrum& spectrum, const CorrelationKernel& kernel,
                                          const ComplexMatrix& rho, double t, double dt,
                                          bool include_zero_mode) {
  const int n = eig.dimension();
  require_dimension(rho, n, "jd_finite_time_oracle");
  if (ops.n_sites() != n)
    throw Error(ErrorCode::DimensionMismatch, "jd_finite_time_oracle: lattice and eigensystem differ");
  if (!is_pointwise(kernel))
    throw Error(ErrorCode::PointwiseUndefined, "jd_finite_time_oracle: kernel has no pointwise value");
  if (!(dt > 0.0) || !(t > 0.0))
    throw Error(ErrorCode::InvalidArgument, "jd_finite_time_oracle: t and dt must be positive");
  const double limit = max_quadrature_step(kernel, spectrum.max_abs_frequency());
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "jd_finite_time_oracle: dt " << dt << " exceeds " << limit;
    throw Error(ErrorCode::StepTooCoarse, msg.str());
  }
  const double w_min = spectrum.min_abs_nonzero_frequency();
  if (w_min > 0.0 && t < 20.0 / w_min * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "jd_finite_time_oracle: t " << t << " is below 20 / w_min = " << 20.0 / w_min;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }

  const double eps = spectrum.tolerance();
  const ComplexMatrix v = eig.to_energy_basis(ops.coupling);
  const ComplexMatrix r = eig.to_energy_basis(rho);
  std::vector<ComplexMatrix> currents;
  for (const auto& jb : ops.bond_currents) currents.push_back(eig.to_energy_basis(jb));
  Eigen::MatrixXd gaps(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) gaps(a, b) = eig.energies[a] - eig.energies[b];

  const auto panels = static_cast<long>(std::ceil(t / dt - 1e-9));
  const double h = t / static_cast<double>(panels);

  // W(s) = int_0^s V_u g(s - u) du; entrywise V_nm exp(i D s) int_0^s exp(-i D u) g(u) du.
  ComplexMatrix inner = ComplexMatrix::Zero(n, n);
  ComplexMatrix prev = ComplexMatrix::Zero(n, n);
  ComplexMatrix phase(n, n), f(n, n), vs(n, n), w(n, n), z(n, n);
  std::vector<Complex> integral(currents.size(), 0.0);
  for (long k = 0; k <= panels; ++k) {
    const double s = h * static_cast<double>(k);
    const Complex gs = evaluate_kernel(kernel, s);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        phase(a, b) = std::polar(1.0, gaps(a, b) * s);
        f(a, b) = std::conj(phase(a, b)) * gs;
      }
    if (k > 0) inner += (0.5 * h) * (prev + f);
    prev = f;
    if (k == 0) continue;  // Z(0) = 0 and W(0) = 0

    vs = v.cwiseProduct(phase);
    w = vs.cwiseProduct(inner);
    const ComplexMatrix wr = w * r;
    const double weight = k == panels ? 0.5 * h : h;
    for (std::size_t bond = 0; bond < currents.size(); ++bond) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const double d = gaps(a, b);
          Complex factor;
          if (std::abs(d) > eps)
            factor = (phase(a, b) - 1.0) / (kI * d);
          else
            factor = include_zero_mode ? s : 0.0;
          z(a, b) = currents[bond](a, b) * factor;
        }
      // tr[Z (V_u r V_s - V_s V_u r)] = tr[(V_s Z - Z V_s) V_u r]
      const ComplexMatrix comm = vs * z - z * vs;
      integral[bond] += weight * trace_product(comm, wr);
    }
  }

  std::vector<double> out;
  for (const Complex& value : integral) out.push_back(2.0 * (-value / t).real());
  return out;
}

DivergenceCheck divergence_identity_check(const JDEngine& engine, const LindbladGenerator& g,
                                          const LatticeOperators& ops) {
  const auto div = discrete_divergence(jd_observables(engine), ops.n_sites());
  const auto lstar = lstar_density(g, ops);
  DivergenceCheck check;
  double lstar_norm = 0.0;
  for (std::size_t r = 0; r < lstar.size(); ++r) {
    check.max_deviation = std::max(check.max_deviation, (div[r] + lstar[r]).norm());
    check.opposite_sign_deviation = std::max(check.opposite_sign_deviation, (div[r] - lstar[r]).norm());
    lstar_norm = std::max(lstar_norm, lstar[r].norm());
  }
  check.scale = std::max(1.0, lstar_norm);
  return check;
}

std::vector<CurrentReport> continuity_report(const LindbladGenerator& g, const LatticeOperators& ops,
                                             const JDEngine& engine, const Trajectory& traj) {
  if (traj.states.empty()) throw Error(ErrorCode::InvalidArgument, "continuity_report: empty trajectory");
  const int n = ops.n_sites();
  if (g.dimension != n || engine.dimension() != n)
    throw Error(ErrorCode::DimensionMismatch, "continuity_report: components differ in dimension");

  const auto observables = jd_observables(engine);
  const auto lstar = lstar_density(g, ops);
  const SuperOperator full = g.full();

  std::vector<CurrentReport> reports;
  reports.reserve(traj.states.size());
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const ComplexMatrix& rho = traj.states[k];
    require_dimension(rho, n, "continuity_report");
    const ComplexMatrix drho = full.apply(rho);

    CurrentReport rep;
    rep.time = traj.times[k];
    for (int r = 0; r < n; ++r) {
      const auto i = static_cast<std::size_t>(r);
      rep.site_density.push_back(trace_product(ops.densities[i], rho).real());
      rep.site_dn_dt.push_back(trace_product(ops.densities[i], drho).real());
      rep.site_lstar_density.push_back(trace_product(lstar[i], rho).real());
    }
    for (int b = 0; b < ops.n_bonds(); ++b) {
      const auto i = static_cast<std::size_t>(b);
      rep.bond_j_ham.push_back(trace_product(ops.bond_currents[i], rho).real());
      rep.bond_j_diss.push_back(trace_product(observables[i], rho).real());
    }
    std::vector<double> total(rep.bond_j_ham.size());
    for (std::size_t b = 0; b < total.size(); ++b) total[b] = rep.bond_j_ham[b] + rep.bond_j_diss[b];
    const auto div_raw = discrete_divergence(rep.bond_j_ham, n);
    const auto div_total = discrete_divergence(total, n);
    for (int r = 0; r < n; ++r) {
      const auto i = static_cast<std::size_t>(r);
      rep.residual_raw.push_back(rep.site_dn_dt[i] + div_raw[i]);
      rep.residual_corrected.push_back(rep.site_dn_dt[i] + div_total[i]);
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace lindcur
