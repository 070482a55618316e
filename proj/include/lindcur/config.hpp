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

#include "lindcur/lattice.hpp"
#include "lindcur/reservoir.hpp"

namespace lindcur {

struct RunSettings {
  double t_final = 10.0;
  double dt = 0.01;
  /// "ground", "mixed", "site:<k>" (1-based) or "file:<path>".
  std::string initial_state = "ground";
};

struct Tolerances {
  double positivity = 1e-10;
  double conservation = 1e-9;
};

struct OutputSettings {
  std::filesystem::path directory = ".";
  int precision = 12;
};

struct Config {
  ChainSpec model;
  std::string bath_type;
  CorrelationKernel bath;
  RunSettings run;
  /// Frequency binning tolerance; unset means default_frequency_tolerance.
  std::optional<double> freq_tol;
  Tolerances tolerances;
  OutputSettings output;
  /// Directory relative paths in the config are resolved against.
  std::filesystem::path base_dir = ".";
};

/// Strict JSON config. Unknown keys are rejected. Throws ParseError (with
/// line:column) for malformed JSON and ValidationError naming the field.
Config parse_config(const std::filesystem::path& path);
Config parse_config_text(const std::string& text, const std::filesystem::path& base_dir);

}  // namespace lindcur
