// Copyright 2026 The ACQC Authors
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

namespace acqc {

enum class ErrorKind {
  Parameter,
  Dimension,
  InstanceInfeasible,
  Size,
  Geometry,
  SingularSchedule,
  LimitViolation,
  Precondition,
  IntegrationFailure,
  DegenerateInstance,
  InsufficientData,
  Format,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::InstanceInfeasible: return "instance-infeasible";
    case ErrorKind::Size: return "size";
    case ErrorKind::Geometry: return "geometry";
    case ErrorKind::SingularSchedule: return "singular-schedule";
    case ErrorKind::LimitViolation: return "limit-violation";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::IntegrationFailure: return "integration-failure";
    case ErrorKind::DegenerateInstance: return "degenerate-instance";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::Format: return "format";
  }
  return "unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code mapping) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace acqc
