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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "iscco/model.hpp"

namespace iscco {

/// Flat `key = value` text. '#' starts a comment; blank lines are ignored;
/// a repeated key is an error.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::istream& in, const std::string& origin = "<stream>");
  static KeyValueFile load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& raw(const std::string& key) const;
  double number(const std::string& key) const;
  long long integer(const std::string& key) const;
  /// Comma- or whitespace-separated list of numbers.
  std::vector<double> numbers(const std::string& key) const;

  /// Keys never read through the accessors above.
  std::vector<std::string> unused_keys() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, bool> used_;
  std::string origin_;
};

std::vector<double> parse_number_list(const std::string& text);

/// A scenario file: a SystemConfig plus the seed it was run with.
struct Scenario {
  SystemConfig cfg;
  std::uint64_t seed = 1;
  double eta_factor = 2.0;  ///< used when eta is "auto"
  bool eta_auto = true;
};

/// Keys are the SystemConfig field names. Powers may be given in watts
/// (P, sigma_r2, sigma_c2) or dBm (P_dbm, sigma_r2_dbm, sigma_c2_dbm).
/// `eta` is a list (one value broadcasts to all sensors) or `auto`.
/// Unspecified keys take default_config(scheme) values.
Scenario read_scenario(std::istream& in, const std::string& origin = "<stream>");
Scenario load_scenario(const std::filesystem::path& path);

/// Writes every field in watts with 17 significant digits.
void write_scenario(std::ostream& out, const Scenario& sc);

}  // namespace iscco
