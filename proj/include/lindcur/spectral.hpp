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
#include <optional>
#include <vector>

#include "lindcur/linalg.hpp"

namespace lindcur {

/// Distinct transition frequencies eps_n - eps_m, clustered with tolerance
/// `tolerance`. Sorted ascending, exactly negation-symmetric, contains 0.
class BohrSpectrum {
 public:
  BohrSpectrum() = default;
  BohrSpectrum(std::vector<double> frequencies, double tolerance);

  const std::vector<double>& frequencies() const { return frequencies_; }
  double frequency(std::size_t bin) const { return frequencies_[bin]; }
  double tolerance() const { return tolerance_; }
  std::size_t size() const { return frequencies_.size(); }

  /// Bin whose centre lies within the tolerance of `omega`.
  std::optional<std::size_t> find(double omega) const;
  std::size_t zero_bin() const { return frequencies_.size() / 2; }
  /// Bin of -omega for the frequency of `bin`.
  std::size_t mirror(std::size_t bin) const { return frequencies_.size() - 1 - bin; }
  double max_abs_frequency() const { return frequencies_.empty() ? 0.0 : frequencies_.back(); }
  /// Smallest nonzero |omega|, or 0 when the spectrum is {0}.
  double min_abs_nonzero_frequency() const;

 private:
  std::vector<double> frequencies_;
  double tolerance_ = 0.0;
};

/// 1e-9 * max|eps_n|, or 1e-9 when every level is zero.
double default_frequency_tolerance(const EigenSystem& eig);

BohrSpectrum bohr_frequencies(const EigenSystem& eig, double tolerance);

/// An operator resolved into Bohr-frequency components A_omega, all held in
/// the energy basis. components()[b] belongs to spectrum().frequency(b).
class SpectralOperator {
 public:
  SpectralOperator(ComplexMatrix source, std::vector<ComplexMatrix> components,
                   EigenSystem eig, BohrSpectrum spectrum);

  int dimension() const { return static_cast<int>(source_.rows()); }
  const ComplexMatrix& source() const { return source_; }
  const std::vector<ComplexMatrix>& components() const { return components_; }
  const ComplexMatrix& component(std::size_t bin) const { return components_[bin]; }
  bool component_is_zero(std::size_t bin) const { return zero_[bin]; }
  const EigenSystem& eigensystem() const { return eig_; }
  const BohrSpectrum& spectrum() const { return spectrum_; }

 private:
  ComplexMatrix source_;
  std::vector<ComplexMatrix> components_;
  std::vector<bool> zero_;
  EigenSystem eig_;
  BohrSpectrum spectrum_;
};

/// Rotates a site-basis operator into the energy basis and masks each
/// matrix element into the bin of eps_n - eps_m.
SpectralOperator decompose(const ComplexMatrix& site_operator, const EigenSystem& eig,
                           const BohrSpectrum& spectrum);

/// sum_omega exp(i omega tau) A_omega (energy basis).
ComplexMatrix interaction_picture(const SpectralOperator& op, double tau);

/// A_omega for the bin containing omega; the zero matrix if there is none.
ComplexMatrix component_at(const SpectralOperator& op, double omega, const BohrSpectrum& spectrum);

}  // namespace lindcur
