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

#include <stdexcept>
#include <string>
#include <string_view>

namespace lindcur {

enum class ErrorCode {
  NotHermitian = 1,
  NoConvergence,
  DimensionMismatch,
  BinCollision,
  PointwiseUndefined,
  OutOfRange,
  MissingFrequency,
  PositivityViolation,
  StepTooLarge,
  StepTooCoarse,
  PositivityLost,
  DegenerateKernel,
  LengthMismatch,
  IndexOutOfRange,
  InvalidArgument,
  ParseError,
  ValidationError,
  IoError,
  Incompatible,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Diagnostics sink for non-fatal conditions (coarse tables, corrections).
// Defaults to stderr; pass nullptr to silence.
using LogSink = void (*)(std::string_view message);
void set_log_sink(LogSink sink);
void log_warning(std::string_view message);

}  // namespace lindcur
