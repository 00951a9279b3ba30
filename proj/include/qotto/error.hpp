// Copyright 2026 The qotto Authors
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

namespace qotto {

enum class ErrorKind {
  NotHermitian,
  NotPositive,
  SingularInput,
  DimensionOverflow,
  DimensionMismatch,
  InvalidState,
  ParamOutOfRange,
  SupportMismatch,
  ChannelBrokeState,
  NotCptp,
  TimeOutOfRange,
  ConvergenceFailure,
  StepTooLarge,
  TimeOrdering,
  DivisionGuard,
  ConfigError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::SingularInput: return "SingularInput";
    case ErrorKind::DimensionOverflow: return "DimensionOverflow";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::SupportMismatch: return "SupportMismatch";
    case ErrorKind::ChannelBrokeState: return "ChannelBrokeState";
    case ErrorKind::NotCptp: return "NotCptp";
    case ErrorKind::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::TimeOrdering: return "TimeOrdering";
    case ErrorKind::DivisionGuard: return "DivisionGuard";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qotto
