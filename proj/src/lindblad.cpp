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

#include "lindcur/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "lindcur/error.hpp"

namespace lindcur {

namespace {

// acc += weight * (right^T kron left), i.e. the map X -> weight * left X right.
void accumulate_sandwich(ComplexMatrix& acc, const ComplexMatrix& left, const ComplexMatrix& right,
                         Complex weight) {
  const Eigen::Index n = left.rows();
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      const Complex c = weight * right(b, a);
      if (c != Complex(0.0)) acc.block(a * n, b * n, n, n) += c * left;
    }
}

void rk4_step(const ComplexMatrix& l, const ComplexVector& x, double h, ComplexVector& out) {
  const ComplexVector k1 = l * x;
  const ComplexVector k2 = l * (x + 0.5 * h * k1);
  const ComplexVector k3 = l * (x + 0.5 * h * k2);
  const ComplexVector k4 = l * (x + h * k3);
  out = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

LindbladGenerator build_generator(const SpectralOperator& coupling, const HalfFourierTable& gplus,
                                  const EigenSystem& hamiltonian, double positivity_threshold) {
  const int n = hamiltonian.dimension();
  if (coupling.dimension() != n)
    throw Error(ErrorCode::DimensionMismatch, "build_generator: coupling and Hamiltonian differ in dimension");
  const BohrSpectrum& spectrum = coupling.spectrum();

  LindbladGenerator g;
  g.dimension = n;
  g.frequencies_used = spectrum;
  g.gplus_used = gplus;

  const ComplexMatrix h = hamiltonian.basis * hamiltonian.energies.asDiagonal() * hamiltonian.basis.adjoint();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix ham = ComplexMatrix::Zero(n * n, n * n);
  accumulate_sandwich(ham, h, id, -kI);
  accumulate_sandwich(ham, id, h, kI);
  g.hamiltonian_part = SuperOperator(n, std::move(ham));

  ComplexMatrix diss = ComplexMatrix::Zero(n * n, n * n);
  for (std::size_t b = 0; b < spectrum.size(); ++b) {
    const double omega = spectrum.frequency(b);
    const auto rate = gplus.lookup(omega);
    if (!rate) {
      std::ostringstream msg;
      msg << "build_generator: no g+ value for omega=" << omega;
      throw Error(ErrorCode::MissingFrequency, msg.str());
    }
    if (2.0 * rate->real() < -positivity_threshold) {
      std::ostringstream msg;
      msg << "build_generator: 2 Re g+(" << omega << ") = " << 2.0 * rate->real() << " is negative";
      throw Error(ErrorCode::PositivityViolation, msg.str());
    }
    const ComplexMatrix v = hamiltonian.to_site_basis(coupling.component(b));
    g.jump_components.push_back(v);
    g.rates.push_back(*rate);
    if (coupling.component_is_zero(b)) continue;

    const ComplexMatrix vvd = v * v.adjoint();
    accumulate_sandwich(diss, v.adjoint(), v, *rate + std::conj(*rate));
    accumulate_sandwich(diss, vvd, id, -*rate);
    accumulate_sandwich(diss, id, vvd, -std::conj(*rate));
  }
  g.dissipator = SuperOperator(n, std::move(diss));
  return g;
}

ComplexMatrix apply_adjoint(const LindbladGenerator& g, const ComplexMatrix& a) {
  if (a.rows() != g.dimension || a.cols() != g.dimension)
    throw Error(ErrorCode::DimensionMismatch, "apply_adjoint: operand dimension differs from generator");
  ComplexMatrix out = ComplexMatrix::Zero(g.dimension, g.dimension);
  for (std::size_t b = 0; b < g.jump_components.size(); ++b) {
    const ComplexMatrix& v = g.jump_components[b];
    const Complex rate = g.rates[b];
    const ComplexMatrix vvd = v * v.adjoint();
    out += (rate + std::conj(rate)) * (v * a * v.adjoint()) - rate * (a * vvd) - std::conj(rate) * (vvd * a);
  }
  return out;
}

void check_density_matrix(const ComplexMatrix& rho, double tolerance) {
  if (rho.rows() != rho.cols() || rho.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "density matrix must be square");
  if (!all_finite(rho)) throw Error(ErrorCode::InvalidArgument, "density matrix has non-finite entries");
  if (anti_hermitian_part(rho) > tolerance)
    throw Error(ErrorCode::InvalidArgument, "density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > tolerance)
    throw Error(ErrorCode::InvalidArgument, "density matrix does not have unit trace");
  if (min_eigenvalue(0.5 * (rho + rho.adjoint())) < -10.0 * tolerance)
    throw Error(ErrorCode::InvalidArgument, "density matrix has a negative eigenvalue");
}

double generator_norm(const LindbladGenerator& g) {
  return g.full().matrix().cwiseAbs().rowwise().sum().maxCoeff();
}

Trajectory evolve(const LindbladGenerator& g, const ComplexMatrix& rho0, double t_final, double dt) {
  const int n = g.dimension;
  if (rho0.rows() != n || rho0.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "evolve: initial state dimension differs from generator");
  check_density_matrix(rho0);
  if (!(t_final >= 0.0) || !std::isfinite(t_final))
    throw Error(ErrorCode::InvalidArgument, "evolve: t_final must be >= 0");
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "evolve: dt must be > 0");

  const ComplexMatrix l = g.full().matrix();
  const double norm = l.cwiseAbs().rowwise().sum().maxCoeff();
  if (dt * norm > 0.1) {
    std::ostringstream msg;
    msg << "evolve: dt * |L| = " << dt * norm << " exceeds 0.1 (dt <= " << 0.1 / norm << " required)";
    throw Error(ErrorCode::StepTooLarge, msg.str());
  }

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);
  traj.hermiticity_corrections.push_back(0.0);
  traj.trace_corrections.push_back(0.0);
  if (t_final == 0.0) return traj;

  const auto steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
  const double h = t_final / static_cast<double>(steps);
  ComplexVector x = vectorize(rho0);
  ComplexVector next(x.size());
  for (long k = 1; k <= steps; ++k) {
    rk4_step(l, x, h, next);
    ComplexMatrix rho = unvectorize(next, n);
    const double herm = anti_hermitian_part(rho);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    rho /= tr;

    const double lowest = min_eigenvalue(rho);
    if (lowest < -1e-6) {
      std::ostringstream msg;
      msg << "evolve: eigenvalue " << lowest << " at t=" << h * k;
      throw Error(ErrorCode::PositivityLost, msg.str());
    }
    traj.times.push_back(k == steps ? t_final : h * static_cast<double>(k));
    traj.hermiticity_corrections.push_back(herm);
    traj.trace_corrections.push_back(std::abs(tr - 1.0));
    x = vectorize(rho);
    traj.states.push_back(std::move(rho));
  }
  return traj;
}

ComplexMatrix steady_state(const LindbladGenerator& g) {
  const int n = g.dimension;
  const ComplexMatrix l = g.full().matrix();
  const double scale = std::max(1.0, max_abs(l));

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(l, false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergence, "steady_state: eigen-solver failed");
  const auto zeros = (solver.eigenvalues().array().abs() <= 1e-10 * scale).count();
  if (zeros >= 2) {
    throw Error(ErrorCode::DegenerateKernel,
                "steady_state: " + std::to_string(zeros) + " eigenvalues within tolerance of zero");
  }
  if (zeros == 0) throw Error(ErrorCode::NoConvergence, "steady_state: generator has no zero eigenvalue");

  // Trace preservation makes the rows of the diagonal entries linearly
  // dependent, so one of them can carry the normalization tr(rho) = 1.
  ComplexMatrix system = l;
  ComplexVector rhs = ComplexVector::Zero(n * n);
  system.row(0).setZero();
  for (int i = 0; i < n; ++i) system(0, i * n + i) = 1.0;
  rhs(0) = 1.0;
  const ComplexVector x = system.fullPivLu().solve(rhs);

  ComplexMatrix rho = unvectorize(x, n);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  const double residual = max_abs(unvectorize(l * vectorize(rho), n));
  if (residual > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "steady_state: residual " << residual << " above tolerance";
    throw Error(ErrorCode::NoConvergence, msg.str());
  }
  return rho;
}

ComplexMatrix stationary_limit(const LindbladGenerator& g, const ComplexMatrix& rho0) {
  const int n = g.dimension;
  check_density_matrix(rho0);
  if (rho0.rows() != n) throw Error(ErrorCode::DimensionMismatch, "stationary_limit: state dimension");
  const ComplexMatrix l = g.full().matrix();
  const double tol = 1e-10 * std::max(1.0, max_abs(l));

  Eigen::ComplexEigenSolver<ComplexMatrix> eig(l, false);
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "stationary_limit: eigen-solver failed");
  for (const Complex& lambda : eig.eigenvalues())
    if (std::abs(lambda) > tol && lambda.real() > -tol)
      throw Error(ErrorCode::NoConvergence, "stationary_limit: undamped oscillation, no long-time limit");

  // Zero is semisimple for a Lindblad generator, so the limit is the
  // oblique projection R (Y^dag R)^-1 Y^dag onto the right null space
  // along the range, with Y spanning the left null space.
  Eigen::BDCSVD<ComplexMatrix> svd(l, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index k = 0;
  while (k < sv.size() && sv(sv.size() - 1 - k) <= tol) ++k;
  if (k == 0) throw Error(ErrorCode::NoConvergence, "stationary_limit: generator has no zero eigenvalue");
  const ComplexMatrix right = svd.matrixV().rightCols(k);
  const ComplexMatrix left = svd.matrixU().rightCols(k);
  const ComplexMatrix overlap = left.adjoint() * right;
  const ComplexVector x = right * overlap.fullPivLu().solve(left.adjoint() * vectorize(rho0));

  ComplexMatrix rho = unvectorize(x, n);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  const double residual = max_abs(unvectorize(l * vectorize(rho), n));
  if (residual > tol) {
    std::ostringstream msg;
    msg << "stationary_limit: residual " << residual << " above tolerance";
    throw Error(ErrorCode::NoConvergence, msg.str());
  }
  return rho;
}

SuperOperator pre_lindblad_generator(const SpectralOperator& coupling, const CorrelationKernel& kernel,
                                     double window, double dt) {
  if (!is_pointwise(kernel))
    throw Error(ErrorCode::PointwiseUndefined, "pre_lindblad_generator: kernel has no pointwise value");
  if (!(window > 0.0) || !(dt > 0.0))
    throw Error(ErrorCode::InvalidArgument, "pre_lindblad_generator: window and dt must be positive");
  const BohrSpectrum& spectrum = coupling.spectrum();
  const double limit = max_quadrature_step(kernel, spectrum.max_abs_frequency());
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "pre_lindblad_generator: dt " << dt << " exceeds " << limit;
    throw Error(ErrorCode::StepTooCoarse, msg.str());
  }

  const int n = coupling.dimension();
  const auto panels = std::max<long>(1, static_cast<long>(std::ceil(window / dt - 1e-9)));
  const double h = window / static_cast<double>(panels);

  std::vector<std::size_t> bins;
  for (std::size_t b = 0; b < spectrum.size(); ++b)
    if (!coupling.component_is_zero(b)) bins.push_back(b);

  // W(s) = int_0^s V_t g(s - t) dt = sum_w A_w exp(i w s) int_0^s exp(-i w u) g(u) du,
  // the inner integrals accumulated panel by panel.
  std::vector<Complex> inner(bins.size(), 0.0);
  std::vector<Complex> prev(bins.size(), 0.0);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix acc = ComplexMatrix::Zero(n * n, n * n);
  for (long k = 0; k <= panels; ++k) {
    const double s = h * static_cast<double>(k);
    const Complex gs = evaluate_kernel(kernel, s);
    ComplexMatrix w = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < bins.size(); ++i) {
      const double omega = spectrum.frequency(bins[i]);
      const Complex f = std::polar(1.0, -omega * s) * gs;
      if (k > 0) inner[i] += 0.5 * h * (prev[i] + f);
      prev[i] = f;
      w += (std::polar(1.0, omega * s) * inner[i]) * coupling.component(bins[i]);
    }
    if (k == 0) continue;  // W(0) = 0
    const ComplexMatrix v = interaction_picture(coupling, s);
    const double weight = (k == panels ? 0.5 * h : h) / window;
    const ComplexMatrix wd = w.adjoint();
    accumulate_sandwich(acc, w, v, weight);
    accumulate_sandwich(acc, v * w, id, -weight);
    accumulate_sandwich(acc, v, wd, weight);
    accumulate_sandwich(acc, id, wd * v, -weight);
  }
  return superop_change_basis(SuperOperator(n, std::move(acc)), coupling.eigensystem().basis);
}

}  // namespace lindcur
