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
#include <initializer_list>
#include <random>

#include "iscco/linalg.hpp"

namespace iscco {

using Engine = std::mt19937_64;

/// Named sub-streams expanded from one root seed.
enum class Stream : std::uint64_t {
  channels = 1,
  radar_symbols = 2,
  data_symbols = 3,
  sensor_noise = 4,
  ap_noise = 5,
  randomization = 6,
  realization = 7,
  empirical = 8,
  localization = 9,
};

/// SplitMix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

/// Seed for (root, stream, indices...). Distinct index tuples give
/// statistically independent engines.
std::uint64_t derive_seed(std::uint64_t root, Stream stream,
                          std::initializer_list<std::uint64_t> indices = {});

inline Engine make_engine(std::uint64_t root, Stream stream,
                          std::initializer_list<std::uint64_t> indices = {}) {
  return Engine(derive_seed(root, stream, indices));
}

/// Complex Gaussian with the given mean and total variance var (var/2 per
/// real dimension).
cx complex_gaussian(Engine& eng, cx mean = {0.0, 0.0}, double var = 1.0);

/// rows x cols matrix of i.i.d. complex_gaussian draws, column-major order.
CMat complex_gaussian_matrix(Engine& eng, Eigen::Index rows, Eigen::Index cols,
                             cx mean = {0.0, 0.0}, double var = 1.0);

}  // namespace iscco
