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

#include "lindcur/error.hpp"

#include <atomic>
#include <iostream>

namespace lindcur {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BinCollision: return "BinCollision";
    case ErrorCode::PointwiseUndefined: return "PointwiseUndefined";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::MissingFrequency: return "MissingFrequency";
    case ErrorCode::PositivityViolation: return "PositivityViolation";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::PositivityLost: return "PositivityLost";
    case ErrorCode::DegenerateKernel: return "DegenerateKernel";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Incompatible: return "Incompatible";
  }
  return "Unknown";
}

namespace {

void stderr_sink(std::string_view message) {
  std::cerr << "WARN " << message << '\n';
}

std::atomic<LogSink> g_sink{&stderr_sink};

}  // namespace

void set_log_sink(LogSink sink) { g_sink.store(sink); }

void log_warning(std::string_view message) {
  if (auto sink = g_sink.load()) sink(message);
}

}  // namespace lindcur
