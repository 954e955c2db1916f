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
#include <vector>

#include "iscco/model.hpp"

namespace iscco {

/// Matched-filter output for one sensor (Nrx x K).
struct SufficientStatistic {
  CMat Yhat;
  int m = 0;
};

/// Maximum-likelihood target response estimate for one sensor (Nrx x Ntx).
struct TrmEstimate {
  CMat Ghat;
  int m = 0;
};

/// Relative slack accepted by feasibility checks on solver output.
inline constexpr double kFeasibilitySlack = 1e-6;

/// Yhat = (1/T) sum_t y[t] s[t]^H for y (Nrx x T) and s (K x T).
SufficientStatistic matched_filter(const CMat& y, const CMat& s, int m = 0);

/// Ghat = Yhat W^H (W W^H)^{-1}. Throws singular-beamformer when W W^H is not
/// invertible within the condition cap.
TrmEstimate mle_trm(const SufficientStatistic& stat, const CMat& W);

/// (Nrx sigma_r2 / T) tr((B B^H)^{-1}); B is W (shared) or F (separated).
double sensing_mse_closed(const CMat& B, const SystemConfig& cfg);

/// sensing_mse_closed(B) <= eta_m (1 + slack). A singular B is infeasible.
bool sensing_feasible(const CMat& B, const SystemConfig& cfg, int m,
                      double slack = kFeasibilitySlack);

struct EmpiricalSensingOptions {
  bool interference = true;  ///< include the other sensors' echoes and leakage
};

/// Per-sensor mean of ||G_mm - Ghat_mm||_F^2 over n_trials simulated sensing
/// phases (symbols and noise redrawn each trial).
std::vector<double> empirical_sensing_mse_per_sensor(const SystemConfig& cfg,
                                                     const ChannelSet& ch,
                                                     const BeamformerSet& bf, int n_trials,
                                                     std::uint64_t seed,
                                                     EmpiricalSensingOptions opt = {});

/// Average of empirical_sensing_mse_per_sensor over sensors.
double empirical_sensing_mse(const SystemConfig& cfg, const ChannelSet& ch,
                             const BeamformerSet& bf, int n_trials, std::uint64_t seed,
                             EmpiricalSensingOptions opt = {});

/// The beamformer that illuminates the target: W_m (shared) or F_m.
const CMat& radar_beamformer_of(const SystemConfig& cfg, const BeamformerSet& bf, int m);

}  // namespace iscco
