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
#include <string>
#include <vector>

#include "lindcur/config.hpp"
#include "lindcur/dissipative_current.hpp"
#include "lindcur/error.hpp"
#include "lindcur/lattice.hpp"
#include "lindcur/lindblad.hpp"
#include "lindcur/reservoir.hpp"
#include "lindcur/spectral.hpp"

namespace lindcur {

/// Everything derived from a chain and a bath, built once.
struct Model {
  ChainSpec chain;
  CorrelationKernel kernel;
  LatticeOperators ops;
  EigenSystem eig;
  BohrSpectrum spectrum;
  SpectralOperator coupling;
  HalfFourierTable gplus;
  PositivityReport positivity;
  LindbladGenerator generator;
  JDEngine engine;
};

/// Throws PositivityViolation (with the offending frequency) if the bath
/// spectrum is negative beyond `positivity_tol` at a Bohr frequency.
Model assemble_model(const ChainSpec& chain, const CorrelationKernel& kernel,
                     std::optional<double> freq_tol = std::nullopt, double positivity_tol = 1e-10);
Model assemble_model(const Config& cfg);

/// "ground" (lowest eigenprojector), "mixed" (I/N), "site:<k>", "file:<path>"
/// (CSV with header row,col,re,im; 1-based indices).
ComplexMatrix initial_state(const std::string& spec, const Model& model,
                            const std::filesystem::path& base_dir = ".");

/// Largest bath rate max_w 2 Re g^(+)(w) over the model's Bohr frequencies.
double max_bath_rate(const Model& model);

/// Writes density.csv and currents.csv for a set of reports.
void write_reports(const std::vector<CurrentReport>& reports, const std::filesystem::path& directory,
                   int precision);

/// Evolves from run.initial_state and writes density.csv / currents.csv.
void run_simulate(const Config& cfg, const std::filesystem::path& out_dir);

/// Writes density.csv / currents.csv for the steady state (time column 0).
void run_steady(const Config& cfg, const std::filesystem::path& out_dir);

struct CheckResult {
  std::string name;
  double measured = 0.0;
  std::string threshold;
  bool pass = false;

  /// CHECK <name> measured=<val> threshold=<val> PASS|FAIL
  std::string summary_line() const;
};

/// Runs "continuity", "oracle", "prelindblad" or "all". Throws
/// Incompatible when a suite needs a pointwise kernel and the bath is white
/// noise, InvalidArgument for an unknown suite name.
std::vector<CheckResult> run_verify(const Config& cfg, const std::string& suite);

/// Process exit code for an error: 2 for PositivityLost, 3 for Incompatible,
/// 1 otherwise.
int exit_code_for(ErrorCode code);

}  // namespace lindcur
