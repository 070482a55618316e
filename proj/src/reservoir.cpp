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

#include "lindcur/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "lindcur/error.hpp"

namespace lindcur {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Complex tabulated_at(const TabulatedKernel& k, double tau) {
  const auto& t = k.times;
  if (tau > t.back()) return 0.0;
  auto it = std::upper_bound(t.begin(), t.end(), tau);
  if (it == t.end()) return k.values.back();
  const std::size_t hi = static_cast<std::size_t>(it - t.begin());
  const std::size_t lo = hi - 1;
  const double w = (tau - t[lo]) / (t[hi] - t[lo]);
  return (1.0 - w) * k.values[lo] + w * k.values[hi];
}

void warn_if_coarse(const TabulatedKernel& k, double omega) {
  const double limit = max_quadrature_step(k, std::abs(omega));
  double widest = 0.0;
  for (std::size_t i = 1; i < k.times.size(); ++i) widest = std::max(widest, k.times[i] - k.times[i - 1]);
  if (widest > limit) {
    std::ostringstream msg;
    msg << "tabulated kernel step " << widest << " exceeds " << limit << " at omega=" << omega;
    log_warning(msg.str());
  }
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

void validate_kernel(const CorrelationKernel& kernel) {
  std::visit(overloaded{
                 [](const ExponentialKernel& k) {
                   if (!(k.gamma >= 0.0) || !std::isfinite(k.gamma))
                     throw Error(ErrorCode::InvalidArgument, "exponential kernel: gamma must be >= 0");
                   if (!(k.kappa > 0.0) || !std::isfinite(k.kappa))
                     throw Error(ErrorCode::InvalidArgument, "exponential kernel: kappa must be > 0");
                   if (!std::isfinite(k.omega0))
                     throw Error(ErrorCode::InvalidArgument, "exponential kernel: omega0 must be finite");
                 },
                 [](const WhiteNoiseKernel& k) {
                   if (!(k.gamma >= 0.0) || !std::isfinite(k.gamma))
                     throw Error(ErrorCode::InvalidArgument, "white-noise kernel: gamma must be >= 0");
                 },
                 [](const TabulatedKernel& k) {
                   if (k.times.size() < 2 || k.times.size() != k.values.size())
                     throw Error(ErrorCode::InvalidArgument, "tabulated kernel: need >= 2 aligned samples");
                   if (k.times.front() != 0.0)
                     throw Error(ErrorCode::InvalidArgument, "tabulated kernel: first sample must be at tau=0");
                   for (std::size_t i = 1; i < k.times.size(); ++i)
                     if (!(k.times[i] > k.times[i - 1]))
                       throw Error(ErrorCode::InvalidArgument, "tabulated kernel: tau must be strictly ascending");
                 },
             },
             kernel);
}

bool is_pointwise(const CorrelationKernel& kernel) {
  return !std::holds_alternative<WhiteNoiseKernel>(kernel);
}

Complex evaluate_kernel(const CorrelationKernel& kernel, double tau) {
  const double s = std::abs(tau);
  const Complex value = std::visit(
      overloaded{
          [s](const ExponentialKernel& k) -> Complex {
            return k.gamma * std::exp(-k.kappa * s) * std::polar(1.0, -k.omega0 * s);
          },
          [](const WhiteNoiseKernel&) -> Complex {
            throw Error(ErrorCode::PointwiseUndefined, "white-noise kernel has no pointwise value");
          },
          [s](const TabulatedKernel& k) -> Complex {
            if (s > k.times.back())
              throw Error(ErrorCode::OutOfRange, "tabulated kernel: |tau| beyond the last sample");
            return tabulated_at(k, s);
          },
      },
      kernel);
  return tau < 0.0 ? std::conj(value) : value;
}

Complex half_fourier(const CorrelationKernel& kernel, double omega) {
  return std::visit(
      overloaded{
          [omega](const ExponentialKernel& k) -> Complex {
            return k.gamma / Complex(k.kappa, k.omega0 - omega);
          },
          [](const WhiteNoiseKernel& k) -> Complex { return 0.5 * k.gamma; },
          [omega](const TabulatedKernel& k) -> Complex {
            warn_if_coarse(k, omega);
            Complex sum = 0.0;
            for (std::size_t i = 1; i < k.times.size(); ++i) {
              const double t0 = k.times[i - 1];
              const double t1 = k.times[i];
              sum += 0.5 * (t1 - t0) *
                     (std::polar(1.0, omega * t0) * k.values[i - 1] + std::polar(1.0, omega * t1) * k.values[i]);
            }
            return sum;
          },
      },
      kernel);
}

double kernel_decay_rate(const CorrelationKernel& kernel) {
  return std::visit(overloaded{
                        [](const ExponentialKernel& k) { return k.kappa; },
                        [](const WhiteNoiseKernel&) { return std::numeric_limits<double>::infinity(); },
                        [](const TabulatedKernel& k) {
                          double area = 0.0;
                          for (std::size_t i = 1; i < k.times.size(); ++i)
                            area += 0.5 * (k.times[i] - k.times[i - 1]) *
                                    (std::abs(k.values[i - 1]) + std::abs(k.values[i]));
                          const double g0 = std::abs(k.values.front());
                          if (area <= 0.0 || g0 <= 0.0) return 1.0 / k.times.back();
                          return g0 / area;
                        },
                    },
                    kernel);
}

double max_quadrature_step(const CorrelationKernel& kernel, double omega_max) {
  double limit = 1.0 / kernel_decay_rate(kernel);
  if (omega_max > 0.0) limit = std::min(limit, std::numbers::pi / omega_max);
  return limit / 20.0;
}

std::optional<Complex> HalfFourierTable::lookup(double omega) const {
  auto it = std::lower_bound(frequencies.begin(), frequencies.end(), omega - tolerance);
  if (it == frequencies.end() || std::abs(*it - omega) > tolerance) return std::nullopt;
  return values[static_cast<std::size_t>(it - frequencies.begin())];
}

HalfFourierTable half_fourier_table(const CorrelationKernel& kernel, const BohrSpectrum& spectrum) {
  HalfFourierTable table;
  table.frequencies = spectrum.frequencies();
  table.tolerance = spectrum.tolerance();
  table.values.reserve(spectrum.size());
  for (double w : spectrum.frequencies()) table.values.push_back(half_fourier(kernel, w));
  return table;
}

bool PositivityReport::ok() const {
  return std::none_of(entries.begin(), entries.end(), [](const PositivityEntry& e) { return e.flagged; });
}

PositivityReport validate_positivity(const CorrelationKernel& kernel, const BohrSpectrum& spectrum,
                                     double threshold) {
  PositivityReport report;
  for (double w : spectrum.frequencies()) {
    const double density = 2.0 * half_fourier(kernel, w).real();
    report.entries.push_back({w, density, density < -threshold});
  }
  return report;
}

TabulatedKernel load_tabulated_kernel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open kernel table " + path.string());
  std::string line;
  if (!std::getline(in, line) || trim(line) != "tau,re_g,im_g")
    throw Error(ErrorCode::ParseError, path.string() + ":1: expected header 'tau,re_g,im_g'");

  TabulatedKernel k;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream fields(line);
    fields.imbue(std::locale::classic());
    double tau = 0.0, re = 0.0, im = 0.0;
    char c1 = 0, c2 = 0;
    if (!(fields >> tau >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',' || !(fields >> std::ws).eof())
      throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(line_no) + ": malformed row");
    k.times.push_back(tau);
    k.values.emplace_back(re, im);
  }
  validate_kernel(k);
  return k;
}

}  // namespace lindcur
