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
#include <optional>
#include <string>
#include <vector>

#include "iscco/linalg.hpp"

namespace iscco {

enum class Scheme { shared, separated };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

/// Scalar parameters of one scenario. Powers are in watts.
struct SystemConfig {
  int M = 10;    ///< sensors
  int K = 10;    ///< functions (streams per sensor)
  int Na = 15;   ///< AP antennas
  int Ns = 12;   ///< sensor antennas
  int Ntx = 6;   ///< radar / dual transmit antennas
  int Nrx = 6;   ///< radar receive antennas
  int Nc = 0;    ///< data antennas, separated scheme only
  int T = 1000;  ///< slots per phase
  double P = 0.01;
  double sigma_r2 = 0.0;
  double sigma_c2 = 0.0;
  std::vector<double> eta;  ///< per-sensor sensing MSE thresholds
  Scheme scheme = Scheme::shared;
  double rician_mean = 1.0;
  double rician_var = 1.0;

  /// Transmit dimension of the data path: Ntx (shared) or Nc (separated).
  int data_tx() const { return scheme == Scheme::shared ? Ntx : Nc; }
};

/// Simulation defaults: T=1000, K=10, M=10, Ns=12, Na=15, P=10 mW and
/// -79.5 dBm on both noise channels. Shared splits 6/6, separated 4/4/4.
/// eta is filled with auto_eta(cfg).
SystemConfig default_config(Scheme scheme);

/// Default sensing threshold: factor * (Nrx sigma_r2 / T) * Ntx^2 / P,
/// i.e. `factor` times the MSE of an isotropic full-power radar beamformer.
double auto_eta(const SystemConfig& cfg, double factor = 2.0);

/// Resizes eta to M entries, all equal to auto_eta(cfg, factor).
void fill_auto_eta(SystemConfig& cfg, double factor = 2.0);

/// Returns cfg unchanged when every invariant holds; otherwise throws
/// ConfigError listing all violations.
SystemConfig validate_config(const SystemConfig& cfg);

double dbm_to_watts(double p_dbm);
double watts_to_dbm(double watts);

/// One realization of every channel. Grids are indexed [i][m]: the path
/// from sensor i's transmitter to sensor m's receiver. Q and O diagonals
/// (i == m) are drawn but never read by the receive equations; C includes
/// i == m.
struct ChannelSet {
  std::vector<CMat> H;                  ///< Na x data_tx, sensor -> AP
  std::vector<std::vector<CMat>> G;     ///< Nrx x Ntx target response
  std::vector<std::vector<CMat>> Q;     ///< Nrx x Ntx direct radar channel
  std::vector<CMat> R;                  ///< Na x Ntx, separated only
  std::vector<std::vector<CMat>> C;     ///< Nrx x Nc data reflection, separated only
  std::vector<std::vector<CMat>> O;     ///< Nrx x Nc direct data channel, separated only
};

/// Draws every entry as complex Gaussian with mean rician_mean + 0j and total
/// variance rician_var. Each matrix row has its own sub-stream keyed by
/// (seed, matrix, indices, row), so configurations that differ only in
/// antenna or sensor counts share the overlapping entries.
ChannelSet draw_channels(const SystemConfig& cfg, std::uint64_t seed);

/// K x T block of unit-variance symbols for one sensor and one role.
struct SymbolBlock {
  CMat values;
};

enum class SymbolRole { radar, data };

/// M independent blocks. Radar and data roles use disjoint sub-streams; in
/// the shared scheme the radar blocks are the dual-functional symbols.
std::vector<SymbolBlock> draw_symbols(const SystemConfig& cfg, SymbolRole role,
                                      std::uint64_t seed);

struct SymbolSet {
  std::vector<SymbolBlock> radar;  ///< s_m
  std::vector<SymbolBlock> data;   ///< d_m, separated only
};

SymbolSet draw_symbol_set(const SystemConfig& cfg, std::uint64_t seed);

/// Designed matrices for one scenario.
struct BeamformerSet {
  CMat A;                   ///< Na x K aggregation beamformer
  std::vector<CMat> W;      ///< data_tx x K per sensor
  std::vector<CMat> F;      ///< Ntx x K radar beamformers, separated only
  std::vector<double> alpha;  ///< radar power scalars, separated only
};

/// x = W s (shared) or [W d; F s] (separated).
CVec transmit(const SystemConfig& cfg, const CMat& W, const CMat* F, const CVec& s,
              const CVec* d);

struct ReceiveOptions {
  bool interference = true;  ///< include the other sensors' terms
  bool noise = true;
};

/// Echo at sensor m for slot t (0-based). Noise is drawn from
/// (noise_seed, m, t) so every slot is reproducible on its own.
CVec receive_at_sensor(const SystemConfig& cfg, const ChannelSet& ch, const BeamformerSet& bf,
                       const SymbolSet& sym, int t, int m, std::uint64_t noise_seed,
                       ReceiveOptions opt = {});

/// All T slots of receive_at_sensor as an Nrx x T matrix.
CMat receive_block_at_sensor(const SystemConfig& cfg, const ChannelSet& ch,
                             const BeamformerSet& bf, const SymbolSet& sym, int m,
                             std::uint64_t noise_seed, ReceiveOptions opt = {});

/// AP output z[t] (K entries) for slot t.
CVec receive_at_ap(const SystemConfig& cfg, const ChannelSet& ch, const BeamformerSet& bf,
                   const SymbolSet& sym, int t, std::uint64_t noise_seed, bool noise = true);

/// All slots of receive_at_ap as a K x T matrix.
CMat receive_block_at_ap(const SystemConfig& cfg, const ChannelSet& ch,
                         const BeamformerSet& bf, const SymbolSet& sym,
                         std::uint64_t noise_seed, bool noise = true);

}  // namespace iscco
