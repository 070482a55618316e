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

#include "lindcur/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lindcur/error.hpp"

namespace lindcur {

namespace {

struct Cluster {
  double first;
  double last;
  double sum;
  int count;
};

// Consecutive sorted values closer than `tolerance` share a cluster.
std::vector<Cluster> chain_clusters(const std::vector<double>& sorted, double tolerance) {
  std::vector<Cluster> out;
  for (double x : sorted) {
    if (out.empty() || x - out.back().last > tolerance) {
      out.push_back({x, x, x, 1});
    } else {
      out.back().last = x;
      out.back().sum += x;
      ++out.back().count;
    }
  }
  return out;
}

[[noreturn]] void collision(const std::string& why) {
  throw Error(ErrorCode::BinCollision, "bohr_frequencies: " + why);
}

}  // namespace

BohrSpectrum::BohrSpectrum(std::vector<double> frequencies, double tolerance)
    : frequencies_(std::move(frequencies)), tolerance_(tolerance) {}

std::optional<std::size_t> BohrSpectrum::find(double omega) const {
  auto it = std::lower_bound(frequencies_.begin(), frequencies_.end(), omega);
  std::optional<std::size_t> best;
  double best_dist = tolerance_;
  for (auto cand : {it, it == frequencies_.begin() ? it : std::prev(it)}) {
    if (cand == frequencies_.end()) continue;
    const double dist = std::abs(*cand - omega);
    if (dist <= best_dist) {
      best_dist = dist;
      best = static_cast<std::size_t>(cand - frequencies_.begin());
    }
  }
  return best;
}

double BohrSpectrum::min_abs_nonzero_frequency() const {
  const std::size_t z = zero_bin();
  return z + 1 < frequencies_.size() ? frequencies_[z + 1] : 0.0;
}

double default_frequency_tolerance(const EigenSystem& eig) {
  const double scale = eig.energies.size() ? eig.energies.cwiseAbs().maxCoeff() : 0.0;
  return scale > 0.0 ? 1e-9 * scale : 1e-9;
}

BohrSpectrum bohr_frequencies(const EigenSystem& eig, double tolerance) {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance))
    throw Error(ErrorCode::InvalidArgument, "bohr_frequencies: tolerance must be positive");
  const int n = eig.dimension();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "bohr_frequencies: empty spectrum");

  std::vector<double> levels(eig.energies.data(), eig.energies.data() + n);
  std::sort(levels.begin(), levels.end());
  const double span = levels.back() - levels.front();
  if (span > 0.0 && tolerance >= span) {
    std::ostringstream msg;
    msg << "tolerance " << tolerance << " is not below the spectral span " << span;
    collision(msg.str());
  }
  const auto level_groups = chain_clusters(levels, tolerance);
  for (std::size_t k = 1; k < level_groups.size(); ++k) {
    const double gap = level_groups[k].first - level_groups[k - 1].last;
    if (tolerance >= 0.5 * gap) {
      std::ostringstream msg;
      msg << "tolerance " << tolerance << " is not below half the level gap " << gap;
      collision(msg.str());
    }
  }

  std::vector<double> diffs;
  diffs.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) diffs.push_back(eig.energies[a] - eig.energies[b]);
  std::sort(diffs.begin(), diffs.end());

  const auto groups = chain_clusters(diffs, tolerance);
  std::vector<double> centres;
  centres.reserve(groups.size());
  for (const auto& g : groups) {
    if (g.last - g.first > tolerance) collision("a frequency bin is wider than the tolerance");
    centres.push_back(g.sum / g.count);
  }
  for (std::size_t k = 1; k < centres.size(); ++k)
    if (centres[k] - centres[k - 1] <= tolerance) collision("two bin centres closer than the tolerance");

  const std::size_t count = centres.size();
  for (std::size_t k = 0; k < count; ++k)
    if (std::abs(centres[k] + centres[count - 1 - k]) > tolerance)
      collision("binning is not negation-symmetric");
  std::vector<double> symmetric(count);
  for (std::size_t k = 0; k < count; ++k)
    symmetric[k] = 0.5 * (centres[k] - centres[count - 1 - k]);
  symmetric[count / 2] = 0.0;
  return BohrSpectrum(std::move(symmetric), tolerance);
}

SpectralOperator::SpectralOperator(ComplexMatrix source, std::vector<ComplexMatrix> components,
                                   EigenSystem eig, BohrSpectrum spectrum)
    : source_(std::move(source)),
      components_(std::move(components)),
      eig_(std::move(eig)),
      spectrum_(std::move(spectrum)) {
  zero_.reserve(components_.size());
  for (const auto& c : components_) zero_.push_back(c.isZero(0.0));
}

SpectralOperator decompose(const ComplexMatrix& site_operator, const EigenSystem& eig,
                           const BohrSpectrum& spectrum) {
  const int n = eig.dimension();
  if (site_operator.rows() != n || site_operator.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "decompose: operator and eigensystem differ in dimension");

  ComplexMatrix energy = eig.to_energy_basis(site_operator);
  std::vector<ComplexMatrix> components(spectrum.size(), ComplexMatrix::Zero(n, n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const auto bin = spectrum.find(eig.energies[a] - eig.energies[b]);
      if (!bin)
        throw Error(ErrorCode::MissingFrequency, "decompose: spectrum does not belong to this eigensystem");
      components[*bin](a, b) = energy(a, b);
    }
  }
  return SpectralOperator(std::move(energy), std::move(components), eig, spectrum);
}

ComplexMatrix interaction_picture(const SpectralOperator& op, double tau) {
  const int n = op.dimension();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  const auto& spectrum = op.spectrum();
  for (std::size_t b = 0; b < spectrum.size(); ++b) {
    if (op.component_is_zero(b)) continue;
    out += std::polar(1.0, spectrum.frequency(b) * tau) * op.component(b);
  }
  return out;
}

ComplexMatrix component_at(const SpectralOperator& op, double omega, const BohrSpectrum& spectrum) {
  const auto bin = spectrum.find(omega);
  if (!bin) return ComplexMatrix::Zero(op.dimension(), op.dimension());
  return op.component(*bin);
}

}  // namespace lindcur
