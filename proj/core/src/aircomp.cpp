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

#include "iscco/aircomp.hpp"

#include <limits>

#include "iscco/error.hpp"

namespace iscco {

AirCompReport aircomp_mse_closed(const SystemConfig& cfg, const ChannelSet& ch,
                                 const BeamformerSet& bf) {
  const int n = cfg.data_tx();
  if (bf.A.rows() != cfg.Na || bf.A.cols() != cfg.K || static_cast<int>(bf.W.size()) != cfg.M ||
      static_cast<int>(ch.H.size()) != cfg.M)
    throw Error(ErrorCode::dimension_mismatch, "aircomp_mse_closed: beamformer set shape");
  const bool separated = cfg.scheme == Scheme::separated;
  if (separated && (static_cast<int>(bf.F.size()) != cfg.M || static_cast<int>(ch.R.size()) != cfg.M))
    throw Error(ErrorCode::dimension_mismatch, "aircomp_mse_closed: separated needs F and R");

  AirCompReport rep;
  const CMat Ah = bf.A.adjoint();
  const CMat I = CMat::Identity(cfg.K, cfg.K);
  for (int m = 0; m < cfg.M; ++m) {
    if (bf.W[m].rows() != n || bf.W[m].cols() != cfg.K)
      throw Error(ErrorCode::dimension_mismatch, "aircomp_mse_closed: W_m shape");
    rep.misalignment_term += frobenius2(Ah * ch.H[m] * bf.W[m] - I);
    if (separated) rep.radar_leak_term += frobenius2(Ah * ch.R[m] * bf.F[m]);
  }
  rep.noise_term = cfg.sigma_c2 * frobenius2(bf.A);
  rep.mse_closed = rep.misalignment_term + rep.radar_leak_term + rep.noise_term;
  rep.mse_normalized = rep.mse_closed / cfg.M;
  rep.mse_empirical = std::numeric_limits<double>::quiet_NaN();
  return rep;
}

double aircomp_mse_empirical(const SystemConfig& cfg, const ChannelSet& ch,
                             const BeamformerSet& bf, int n_slots, std::uint64_t seed) {
  if (n_slots < 1) throw Error(ErrorCode::precondition, "aircomp_mse_empirical: n_slots >= 1");
  SystemConfig sim = cfg;
  sim.T = n_slots;
  const SymbolSet sym = draw_symbol_set(sim, seed);
  const CMat z = receive_block_at_ap(sim, ch, bf, sym, seed);
  CMat target = CMat::Zero(cfg.K, n_slots);
  const auto& carrier = cfg.scheme == Scheme::shared ? sym.radar : sym.data;
  for (const auto& blk : carrier) target += blk.values;
  return frobenius2(z - target) / n_slots;
}

}  // namespace iscco
