// SPDX-License-Identifier: Apache-2.0
//
// iscco - beamforming for integrated sensing and over-the-air computation
// Copyright (C) 2026 The iscco authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iscco {

enum class ErrorCode {
  dimension_mismatch,
  nonpositive_parameter,
  singular_beamformer,
  singular_equalizer,
  infeasible,
  no_feasible_sample,
  radar_power_exceeds_budget,
  shape_error,
  zero_denominator,
  solver_failure,
  io_error,
  parse_error,
  nonempty_required,
  precondition,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code. Every failure path in the
/// library throws this (or ConfigError, which derives from it).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Violation {
  ErrorCode code;
  std::string message;
};

/// Raised by validate_config with the full list of violated invariants.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace iscco
