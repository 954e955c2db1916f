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

#include "iscco/model.hpp"

namespace iscco {

/// Closed-form computation error split into its three sources.
struct AirCompReport {
  double mse_closed = 0.0;
  double mse_empirical = 0.0;  ///< NaN until filled by aircomp_mse_empirical
  double mse_normalized = 0.0;  ///< mse_closed / M
  double misalignment_term = 0.0;
  double radar_leak_term = 0.0;
  double noise_term = 0.0;
};

/// sum_m ||A^H H_m W_m - I||_F^2 + sum_m ||A^H R_m F_m||_F^2 (separated)
/// + sigma_c2 ||A||_F^2.
AirCompReport aircomp_mse_closed(const SystemConfig& cfg, const ChannelSet& ch,
                                 const BeamformerSet& bf);

/// Mean of ||z[t] - sum_m s_m[t]||^2 over n_slots simulated AP slots, where
/// s_m is the data-carrying symbol (d_m in the separated scheme).
double aircomp_mse_empirical(const SystemConfig& cfg, const ChannelSet& ch,
                             const BeamformerSet& bf, int n_slots, std::uint64_t seed);

}  // namespace iscco
