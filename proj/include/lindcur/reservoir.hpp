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

#include <filesystem>
#include <optional>
#include <variant>
#include <vector>

#include "lindcur/linalg.hpp"
#include "lindcur/spectral.hpp"

namespace lindcur {

/// g(tau) = gamma * exp(-kappa tau) * exp(-i omega0 tau) for tau >= 0.
struct ExponentialKernel {
  double gamma = 0.0;
  double kappa = 1.0;
  double omega0 = 0.0;
};

/// g(tau) = gamma * delta(tau); only its half-Fourier transform exists.
struct WhiteNoiseKernel {
  double gamma = 0.0;
};

/// Samples of g on an ascending grid starting at 0, linearly interpolated,
/// zero beyond the last sample.
struct TabulatedKernel {
  std::vector<double> times;
  std::vector<Complex> values;
};

using CorrelationKernel = std::variant<ExponentialKernel, WhiteNoiseKernel, TabulatedKernel>;

/// Validates the variant's own fields; throws InvalidArgument.
void validate_kernel(const CorrelationKernel& kernel);

bool is_pointwise(const CorrelationKernel& kernel);

/// g(tau), with g(-tau) = conj(g(tau)).
Complex evaluate_kernel(const CorrelationKernel& kernel, double tau);

/// g^(+)(omega) = int_0^inf exp(i omega tau) g(tau) dtau.
Complex half_fourier(const CorrelationKernel& kernel, double omega);

/// Inverse correlation time: kappa for the exponential kernel,
/// |g(0)| / int_0^inf |g| for tabulated data, +inf for white noise.
double kernel_decay_rate(const CorrelationKernel& kernel);

/// Largest quadrature step accepted for time-domain integrals of `kernel`
/// against phases up to `omega_max`: min(1/kappa, pi/omega_max) / 20.
double max_quadrature_step(const CorrelationKernel& kernel, double omega_max);

/// g^(+) tabulated on every bin of a Bohr spectrum.
struct HalfFourierTable {
  std::vector<double> frequencies;
  std::vector<Complex> values;
  double tolerance = 0.0;

  std::optional<Complex> lookup(double omega) const;
};

HalfFourierTable half_fourier_table(const CorrelationKernel& kernel, const BohrSpectrum& spectrum);

struct PositivityEntry {
  double omega;
  double spectral_density;  // 2 Re g^(+)(omega)
  bool flagged;
};

struct PositivityReport {
  std::vector<PositivityEntry> entries;
  bool ok() const;
};

/// Flags every Bohr frequency where 2 Re g^(+) < -threshold. Never throws.
PositivityReport validate_positivity(const CorrelationKernel& kernel, const BohrSpectrum& spectrum,
                                     double threshold = 1e-10);

/// Reads a `tau,re_g,im_g` CSV (header required, tau ascending from 0).
TabulatedKernel load_tabulated_kernel(const std::filesystem::path& path);

}  // namespace lindcur
