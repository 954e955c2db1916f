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

#include "iscco/rng.hpp"

#include <cmath>

namespace iscco {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, Stream stream,
                          std::initializer_list<std::uint64_t> indices) {
  std::uint64_t h = mix64(root ^ 0x5157'4343'4f00'0000ULL);
  h = mix64(h ^ static_cast<std::uint64_t>(stream));
  for (auto idx : indices) h = mix64(h ^ mix64(idx + 0x632be59bd9b4e019ULL));
  return h;
}

cx complex_gaussian(Engine& eng, cx mean, double var) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5 * var));
  const double re = n(eng);
  const double im = n(eng);
  return mean + cx(re, im);
}

CMat complex_gaussian_matrix(Engine& eng, Eigen::Index rows, Eigen::Index cols, cx mean,
                             double var) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5 * var));
  CMat out(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = n(eng);
      const double im = n(eng);
      out(r, c) = mean + cx(re, im);
    }
  return out;
}

}  // namespace iscco
