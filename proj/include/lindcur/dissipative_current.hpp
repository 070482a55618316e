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

#include <cstddef>
#include <vector>

#include "lindcur/lattice.hpp"
#include "lindcur/lindblad.hpp"
#include "lindcur/reservoir.hpp"
#include "lindcur/spectral.hpp"

namespace lindcur {

/// One term of the spectral sum, as bin indices into the engine's spectrum:
/// (w_J, w_1, w_2, w_rho) and +1 / -1 for the first / second constraint set.
struct Quadruple {
  std::size_t j;
  std::size_t one;
  std::size_t two;
  std::size_t rho;
  int sign;

  friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

/// Evaluates the dissipative current correction
///   <J_D> = tr (sum_{w_J + w_1 - w_2 = 0, w_rho = 0} - sum_{w_1 = w_2, w_J + w_rho = 0})
///           i J_{w_J} / w_J (V_{w_2}^dag rho_{w_rho} V_{w_1} - V_{w_1} V_{w_2}^dag rho_{w_rho}) g^(+)_{w_2}
///           + c.c.
/// per bond. Terms with |w_J| within the binning tolerance are excluded: the
/// w = 0 part of the bond currents is divergence-free and contributes nothing
/// on an open chain.
class JDEngine {
 public:
  JDEngine(const std::vector<ComplexMatrix>& bond_currents, const ComplexMatrix& coupling,
           const EigenSystem& eig, const BohrSpectrum& spectrum, const HalfFourierTable& gplus);

  int dimension() const { return eig_.dimension(); }
  int n_bonds() const { return static_cast<int>(currents_.size()); }
  const EigenSystem& eigensystem() const { return eig_; }
  const BohrSpectrum& spectrum() const { return spectrum_; }
  const std::vector<Quadruple>& index() const { return index_; }
  const SpectralOperator& coupling() const { return coupling_; }
  const SpectralOperator& current(int bond) const { return currents_[static_cast<std::size_t>(bond)]; }
  Complex rate(std::size_t bin) const { return rates_[bin]; }

  /// The complex-linear part F_b(x) of the sum (before adding c.c.), for a
  /// site-basis operand x, over bonds [first, last).
  std::vector<Complex> linear_form(const ComplexMatrix& x, int first, int last) const;

 private:
  EigenSystem eig_;
  BohrSpectrum spectrum_;
  SpectralOperator coupling_;
  std::vector<SpectralOperator> currents_;
  std::vector<Complex> rates_;
  std::vector<Quadruple> index_;
};

/// Throws MissingFrequency if `gplus` does not cover the spectrum.
JDEngine build_engine(const LatticeOperators& ops, const EigenSystem& eig, const BohrSpectrum& spectrum,
                      const HalfFourierTable& gplus);

/// <J_D>_b = 2 Re F_b(rho) for every bond.
std::vector<double> jd_expectation(const JDEngine& engine, const ComplexMatrix& rho);

/// Hermitian O_b with tr(rho O_b) = <J_D>_b for all density matrices.
ComplexMatrix jd_observable(const JDEngine& engine, int bond);
std::vector<ComplexMatrix> jd_observables(const JDEngine& engine);

/// L* n_r for every site.
std::vector<ComplexMatrix> lstar_density(const LindbladGenerator& g, const LatticeOperators& ops);

/// The unique bond field vanishing on both virtual outer bonds whose
/// divergence cancels <L* n_r>: S_b = -sum_{r <= b} <L* n_r>.
std::vector<double> jd_cumulative_1d(const LindbladGenerator& g, const LatticeOperators& ops,
                                     const ComplexMatrix& rho);

/// Direct quadrature of
///   -(1/t) int_0^t ds int_0^s du tr[Z(s) (V_u rho V_s - V_s V_u rho)] g(s - u) + c.c.
/// with Z(s) = int_0^s J_l dl built entry by entry in the energy basis. The
/// secular part J_0 s of Z is kept only with `include_zero_mode`.
std::vector<double> jd_finite_time_oracle(const LatticeOperators& ops, const EigenSystem& eig,
                                          const BohrSpectrum& spectrum, const CorrelationKernel& kernel,
                                          const ComplexMatrix& rho, double t, double dt,
                                          bool include_zero_mode = false);

struct DivergenceCheck {
  /// max_r |(div O)_r + L* n_r|_F
  double max_deviation = 0.0;
  /// max(1, max_r |L* n_r|_F)
  double scale = 1.0;
  /// max_r |(div O)_r - L* n_r|_F, the opposite sign convention.
  double opposite_sign_deviation = 0.0;

  double relative() const { return max_deviation / scale; }
};

DivergenceCheck divergence_identity_check(const JDEngine& engine, const LindbladGenerator& g,
                                          const LatticeOperators& ops);

struct CurrentReport {
  double time = 0.0;
  std::vector<double> site_density;
  std::vector<double> site_dn_dt;
  std::vector<double> site_lstar_density;
  std::vector<double> bond_j_ham;
  std::vector<double> bond_j_diss;
  std::vector<double> residual_raw;
  std::vector<double> residual_corrected;
};

std::vector<CurrentReport> continuity_report(const LindbladGenerator& g, const LatticeOperators& ops,
                                             const JDEngine& engine, const Trajectory& traj);

}  // namespace lindcur
