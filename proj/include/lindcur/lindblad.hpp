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
#include "lindcur/reservoir.hpp"
#include "lindcur/spectral.hpp"

namespace lindcur {

/// Secular weak-coupling generator, all maps acting on site-basis matrices:
///   dissipator(rho) = sum_w g_w (V_w^dag rho V_w - V_w V_w^dag rho)
///                   + conj(g_w) (V_w^dag rho V_w - rho V_w V_w^dag)
/// with g_w = g^(+)(w) and V_w the Bohr components of the coupling.
struct LindbladGenerator {
  int dimension = 0;
  SuperOperator dissipator;
  SuperOperator hamiltonian_part;
  BohrSpectrum frequencies_used;
  HalfFourierTable gplus_used;
  /// V_w in the site basis, one per bin of frequencies_used.
  std::vector<ComplexMatrix> jump_components;
  std::vector<Complex> rates;

  SuperOperator full() const { return hamiltonian_part + dissipator; }
};

/// Throws MissingFrequency if `gplus` lacks a bin, PositivityViolation if
/// any 2 Re g^(+) < -positivity_threshold.
LindbladGenerator build_generator(const SpectralOperator& coupling, const HalfFourierTable& gplus,
                                  const EigenSystem& hamiltonian, double positivity_threshold = 1e-10);

/// L*(A), the adjoint under trace(A L(rho)) = trace(L*(A) rho).
ComplexMatrix apply_adjoint(const LindbladGenerator& g, const ComplexMatrix& a);

/// Hermitian within `tolerance`, unit trace within `tolerance`, smallest
/// eigenvalue >= -10 * tolerance. Throws InvalidArgument naming the failure.
void check_density_matrix(const ComplexMatrix& rho, double tolerance = 1e-10);

struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexMatrix> states;
  /// Per stored state: max |rho - rho^dag| / 2 removed by re-Hermitization.
  std::vector<double> hermiticity_corrections;
  /// Per stored state: |tr rho - 1| removed by renormalization.
  std::vector<double> trace_corrections;
};

/// Max absolute row sum of the generator matrix (bounds its spectral radius).
double generator_norm(const LindbladGenerator& g);

/// Fixed-step classic RK4 for d rho/dt = full(rho). Throws StepTooLarge if
/// dt * generator_norm > 0.1, PositivityLost if a stored state has an
/// eigenvalue below -1e-6.
Trajectory evolve(const LindbladGenerator& g, const ComplexMatrix& rho0, double t_final, double dt);

/// Normalized kernel of the full generator. Throws DegenerateKernel when two
/// or more eigenvalues lie within 1e-10 * max(1, max|L_ij|) of zero.
ComplexMatrix steady_state(const LindbladGenerator& g);

/// lim_{t->inf} exp(t L) rho0. Well defined when the kernel is degenerate
/// (several invariant blocks) as long as every other mode decays.
ComplexMatrix stationary_limit(const LindbladGenerator& g, const ComplexMatrix& rho0);

/// Finite-window map of second-order perturbation theory,
///   (1/D) int_0^D ds int_0^s dt (V_t rho V_s - V_s V_t rho) g(s - t) + H.C.,
/// by trapezoidal quadrature on a uniform grid of step <= dt. Interaction
/// picture operators come from the spectral components of `coupling`; the
/// returned map acts on site-basis matrices.
SuperOperator pre_lindblad_generator(const SpectralOperator& coupling, const CorrelationKernel& kernel,
                                     double window, double dt);

}  // namespace lindcur
