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

#include "iscco/conic.hpp"
#include "iscco/model.hpp"

namespace iscco {

/// Tolerated relative excess over a constraint bound.
inline constexpr double kPowerSlack = 1e-6;

/// W = (H^H A A^H H)^{-1} H^H A. Throws singular-equalizer when the Gram
/// matrix is singular within the condition cap.
CMat zero_forcing(const CMat& A, const CMat& H);

/// Bound on tr(H_m^H Ahat H_m) implied by eta_m: T eta_m / (Nrx sigma_r2).
double sensing_trace_bound(const SystemConfig& cfg, int m);

/// Smallest radar power meeting eta_m: Ntx Nrx sigma_r2 / (T eta_m).
double alpha_star(const SystemConfig& cfg, int m);

/// sqrt(alpha_star) times the first Ntx rows of the K-point unitary DFT.
/// Throws shape-error when K < Ntx.
CMat radar_beamformer(const SystemConfig& cfg, int m);

/// Relaxed shared design: minimize sigma_c2 tr(Ahat) subject to the sensing
/// trace bounds and tr((H_m^H Ahat H_m)^{-1}) <= P, the latter lifted to
/// [[U_m, I], [I, H_m^H Ahat H_m]] >= 0 with tr(U_m) <= P. Ahat is stored
/// as Y[0] / (P g), g the mean squared channel entry, so that the program
/// is well scaled.
ConicProblem build_sdp_shared(const SystemConfig& cfg, const ChannelSet& ch);

/// Relaxed separated design: minimize sum_m alpha*_m tr(R_m^H Ahat R_m) +
/// sigma_c2 tr(Ahat) with tr((H_m^H Ahat H_m)^{-1}) <= P - Ntx alpha*_m, the
/// power left after the radar beamformer (tr(F_m F_m^H) = Ntx alpha*_m).
/// Throws radar-power-exceeds-budget when some Ntx alpha*_m >= P.
ConicProblem build_sdp_separated(const SystemConfig& cfg, const ChannelSet& ch);

/// Objective of the unrelaxed problem at A: sigma_c2 tr(A A^H), plus
/// sum_m alpha*_m tr(R_m^H A A^H R_m) in the separated scheme.
double design_objective(const SystemConfig& cfg, const ChannelSet& ch, const CMat& A);

/// Per-sensor power left for the data path: P, or P - Ntx alpha*_m.
double data_power_budget(const SystemConfig& cfg, int m);

struct RandomizationResult {
  CMat A;                    ///< Na x K
  double objective = 0.0;    ///< design_objective(A)
  int feasible_candidates = 0;
  int best_candidate = -1;   ///< 0 is the principal-eigenvector factor
};

/// Rank-K recovery from a relaxed solution. Candidate 0 is the factor built
/// from the K leading eigenpairs; candidates 1..n_samples are V S^{1/2} Z
/// with Z an Na x K standard complex Gaussian. Each candidate is scaled by
/// the smallest t with every constraint met (discarded when the sensing
/// bounds make that impossible) and the lowest objective wins. Throws
/// no-feasible-sample when no candidate survives.
RandomizationResult gaussian_randomization(const CMat& Ahat, const SystemConfig& cfg,
                                           const ChannelSet& ch, int n_samples,
                                           std::uint64_t seed);

/// Antenna-selection baseline: the K AP antennas with the largest row norms
/// of sum_m H_m, scaled to tr(A A^H) = reference_norm; zero-forcing
/// transmitters scaled down to the power budget when they exceed it.
BeamformerSet antenna_selection_baseline(const SystemConfig& cfg, const ChannelSet& ch,
                                         double reference_norm);

struct DesignResult {
  BeamformerSet bf;
  ConicSolution sdp;
  double sdr_bound = 0.0;         ///< relaxed optimum
  double objective = 0.0;         ///< design_objective of the returned A
  int feasible_candidates = 0;
};

/// Full pipeline: relaxed program, conic solve, randomization, zero-forcing
/// (plus radar beamformers in the separated scheme). Throws infeasible,
/// solver-failure, no-feasible-sample or radar-power-exceeds-budget.
DesignResult design_full(const SystemConfig& cfg, const ChannelSet& ch, int n_samples,
                         std::uint64_t seed, const SolverOptions& opt = {});

BeamformerSet design(const SystemConfig& cfg, const ChannelSet& ch, int n_samples,
                     std::uint64_t seed);

}  // namespace iscco
