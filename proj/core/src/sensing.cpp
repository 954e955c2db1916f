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

#include "iscco/sensing.hpp"

#include "iscco/error.hpp"
#include "iscco/rng.hpp"

namespace iscco {

SufficientStatistic matched_filter(const CMat& y, const CMat& s, int m) {
  if (y.cols() != s.cols() || y.cols() == 0)
    throw Error(ErrorCode::dimension_mismatch, "matched_filter: slot counts differ or are zero");
  return {y * s.adjoint() / static_cast<double>(y.cols()), m};
}

TrmEstimate mle_trm(const SufficientStatistic& stat, const CMat& W) {
  if (stat.Yhat.cols() != W.cols())
    throw Error(ErrorCode::dimension_mismatch, "mle_trm: Yhat and W disagree on K");
  const CMat gram = W * W.adjoint();
  if (!hpd_inverse(gram))
    throw Error(ErrorCode::singular_beamformer, "mle_trm: W W^H is singular");
  // Solve Ghat (W W^H) = Yhat W^H without forming the inverse.
  const CMat rhs = stat.Yhat * W.adjoint();
  const CMat ghat = gram.ldlt().solve(rhs.adjoint()).adjoint();
  return {ghat, stat.m};
}

double sensing_mse_closed(const CMat& B, const SystemConfig& cfg) {
  const auto inv = hpd_inverse(B * B.adjoint());
  if (!inv) throw Error(ErrorCode::singular_beamformer, "sensing_mse_closed: B B^H is singular");
  return cfg.Nrx * cfg.sigma_r2 / cfg.T * inv->trace().real();
}

bool sensing_feasible(const CMat& B, const SystemConfig& cfg, int m, double slack) {
  if (m < 0 || m >= static_cast<int>(cfg.eta.size())) return false;
  try {
    return sensing_mse_closed(B, cfg) <= cfg.eta[m] * (1.0 + slack);
  } catch (const Error&) {
    return false;
  }
}

const CMat& radar_beamformer_of(const SystemConfig& cfg, const BeamformerSet& bf, int m) {
  return cfg.scheme == Scheme::shared ? bf.W.at(m) : bf.F.at(m);
}

std::vector<double> empirical_sensing_mse_per_sensor(const SystemConfig& cfg,
                                                     const ChannelSet& ch,
                                                     const BeamformerSet& bf, int n_trials,
                                                     std::uint64_t seed,
                                                     EmpiricalSensingOptions opt) {
  std::vector<double> acc(cfg.M, 0.0);
  if (n_trials <= 0) return acc;
  ReceiveOptions ropt;
  ropt.interference = opt.interference;
  for (int trial = 0; trial < n_trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(seed, Stream::empirical, {std::uint64_t(trial)});
    const SymbolSet sym = draw_symbol_set(cfg, trial_seed);
    for (int m = 0; m < cfg.M; ++m) {
      const CMat y = receive_block_at_sensor(cfg, ch, bf, sym, m, trial_seed, ropt);
      const TrmEstimate est =
          mle_trm(matched_filter(y, sym.radar[m].values, m), radar_beamformer_of(cfg, bf, m));
      acc[m] += frobenius2(ch.G[m][m] - est.Ghat);
    }
  }
  for (double& a : acc) a /= n_trials;
  return acc;
}

double empirical_sensing_mse(const SystemConfig& cfg, const ChannelSet& ch,
                             const BeamformerSet& bf, int n_trials, std::uint64_t seed,
                             EmpiricalSensingOptions opt) {
  const auto per = empirical_sensing_mse_per_sensor(cfg, ch, bf, n_trials, seed, opt);
  double s = 0.0;
  for (double v : per) s += v;
  return per.empty() ? 0.0 : s / static_cast<double>(per.size());
}

}  // namespace iscco
