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

#include "iscco/model.hpp"

#include <cmath>

#include "iscco/error.hpp"
#include "iscco/rng.hpp"

namespace iscco {

std::string to_string(Scheme s) { return s == Scheme::shared ? "shared" : "separated"; }

Scheme scheme_from_string(const std::string& s) {
  if (s == "shared") return Scheme::shared;
  if (s == "separated") return Scheme::separated;
  throw Error(ErrorCode::parse_error, "unknown scheme '" + s + "'");
}

double dbm_to_watts(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

SystemConfig default_config(Scheme scheme) {
  SystemConfig cfg;
  cfg.scheme = scheme;
  cfg.M = 10;
  cfg.K = 10;
  cfg.Na = 15;
  cfg.Ns = 12;
  cfg.T = 1000;
  cfg.P = dbm_to_watts(10.0);
  cfg.sigma_r2 = dbm_to_watts(-79.5);
  cfg.sigma_c2 = dbm_to_watts(-79.5);
  if (scheme == Scheme::shared) {
    cfg.Ntx = 6;
    cfg.Nrx = 6;
    cfg.Nc = 0;
  } else {
    cfg.Nc = 4;
    cfg.Ntx = 4;
    cfg.Nrx = 4;
  }
  fill_auto_eta(cfg);
  return cfg;
}

double auto_eta(const SystemConfig& cfg, double factor) {
  return factor * (cfg.Nrx * cfg.sigma_r2 / cfg.T) * double(cfg.Ntx) * cfg.Ntx / cfg.P;
}

void fill_auto_eta(SystemConfig& cfg, double factor) {
  cfg.eta.assign(static_cast<std::size_t>(std::max(cfg.M, 0)), auto_eta(cfg, factor));
}

SystemConfig validate_config(const SystemConfig& cfg) {
  std::vector<Violation> v;
  auto positive = [&](int value, const char* name) {
    if (value < 1)
      v.push_back({ErrorCode::nonpositive_parameter, std::string(name) + " must be >= 1"});
  };
  positive(cfg.M, "M");
  positive(cfg.K, "K");
  positive(cfg.Na, "Na");
  positive(cfg.Ns, "Ns");
  positive(cfg.Ntx, "Ntx");
  positive(cfg.Nrx, "Nrx");
  positive(cfg.T, "T");
  if (cfg.scheme == Scheme::shared) {
    if (cfg.Nc != 0)
      v.push_back({ErrorCode::dimension_mismatch, "Nc must be 0 in the shared scheme"});
    if (cfg.Ns != cfg.Ntx + cfg.Nrx)
      v.push_back({ErrorCode::dimension_mismatch,
                   "shared scheme requires Ns = Ntx + Nrx (" + std::to_string(cfg.Ns) +
                       " != " + std::to_string(cfg.Ntx) + " + " + std::to_string(cfg.Nrx) + ")"});
  } else {
    positive(cfg.Nc, "Nc");
    if (cfg.Ns != cfg.Nc + cfg.Ntx + cfg.Nrx)
      v.push_back({ErrorCode::dimension_mismatch,
                   "separated scheme requires Ns = Nc + Ntx + Nrx (" + std::to_string(cfg.Ns) +
                       " != " + std::to_string(cfg.Nc) + " + " + std::to_string(cfg.Ntx) +
                       " + " + std::to_string(cfg.Nrx) + ")"});
  }
  if (!(cfg.P > 0.0)) v.push_back({ErrorCode::nonpositive_parameter, "P must be > 0"});
  if (!(cfg.sigma_r2 > 0.0))
    v.push_back({ErrorCode::nonpositive_parameter, "sigma_r2 must be > 0"});
  if (!(cfg.sigma_c2 > 0.0))
    v.push_back({ErrorCode::nonpositive_parameter, "sigma_c2 must be > 0"});
  if (!(cfg.rician_var >= 0.0))
    v.push_back({ErrorCode::nonpositive_parameter, "rician_var must be >= 0"});
  if (cfg.M >= 1 && static_cast<int>(cfg.eta.size()) != cfg.M)
    v.push_back({ErrorCode::dimension_mismatch,
                 "eta has " + std::to_string(cfg.eta.size()) + " entries, expected M = " +
                     std::to_string(cfg.M)});
  for (std::size_t m = 0; m < cfg.eta.size(); ++m)
    if (!(cfg.eta[m] > 0.0))
      v.push_back({ErrorCode::nonpositive_parameter,
                   "eta[" + std::to_string(m) + "] must be > 0"});
  if (!v.empty()) throw ConfigError(std::move(v));
  return cfg;
}

namespace {

enum class ChannelKind : std::uint64_t { H = 1, G, Q, R, C, O };

CMat draw_matrix(std::uint64_t seed, ChannelKind kind, int a, int b, int rows, int cols,
                 cx mean, double var) {
  CMat out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    Engine eng = make_engine(seed, Stream::channels,
                             {static_cast<std::uint64_t>(kind), std::uint64_t(a),
                              std::uint64_t(b), std::uint64_t(r)});
    for (int c = 0; c < cols; ++c) out(r, c) = complex_gaussian(eng, mean, var);
  }
  return out;
}

std::vector<std::vector<CMat>> draw_grid(std::uint64_t seed, ChannelKind kind, int M, int rows,
                                         int cols, cx mean, double var) {
  std::vector<std::vector<CMat>> grid(M, std::vector<CMat>(M));
  for (int i = 0; i < M; ++i)
    for (int m = 0; m < M; ++m) grid[i][m] = draw_matrix(seed, kind, i, m, rows, cols, mean, var);
  return grid;
}

CVec slot_noise(std::uint64_t seed, Stream stream, std::uint64_t a, std::uint64_t b, int n,
                double var) {
  Engine eng = make_engine(seed, stream, {a, b});
  return complex_gaussian_matrix(eng, n, 1, {0.0, 0.0}, var).col(0);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::dimension_mismatch, what);
}

void check_beamformers(const SystemConfig& cfg, const BeamformerSet& bf) {
  require(static_cast<int>(bf.W.size()) == cfg.M, "need one W per sensor");
  for (const auto& w : bf.W)
    require(w.rows() == cfg.data_tx() && w.cols() == cfg.K, "W has wrong shape");
  if (cfg.scheme == Scheme::separated) {
    require(static_cast<int>(bf.F.size()) == cfg.M, "need one F per sensor");
    for (const auto& f : bf.F)
      require(f.rows() == cfg.Ntx && f.cols() == cfg.K, "F has wrong shape");
  }
}

void check_symbols(const SystemConfig& cfg, const SymbolSet& sym) {
  require(static_cast<int>(sym.radar.size()) == cfg.M, "need one radar block per sensor");
  if (cfg.scheme == Scheme::separated)
    require(static_cast<int>(sym.data.size()) == cfg.M, "need one data block per sensor");
}

}  // namespace

ChannelSet draw_channels(const SystemConfig& cfg, std::uint64_t seed) {
  const cx mean(cfg.rician_mean, 0.0);
  const double var = cfg.rician_var;
  ChannelSet ch;
  ch.H.resize(cfg.M);
  for (int m = 0; m < cfg.M; ++m)
    ch.H[m] = draw_matrix(seed, ChannelKind::H, m, 0, cfg.Na, cfg.data_tx(), mean, var);
  ch.G = draw_grid(seed, ChannelKind::G, cfg.M, cfg.Nrx, cfg.Ntx, mean, var);
  ch.Q = draw_grid(seed, ChannelKind::Q, cfg.M, cfg.Nrx, cfg.Ntx, mean, var);
  if (cfg.scheme == Scheme::separated) {
    ch.R.resize(cfg.M);
    for (int m = 0; m < cfg.M; ++m)
      ch.R[m] = draw_matrix(seed, ChannelKind::R, m, 0, cfg.Na, cfg.Ntx, mean, var);
    ch.C = draw_grid(seed, ChannelKind::C, cfg.M, cfg.Nrx, cfg.Nc, mean, var);
    ch.O = draw_grid(seed, ChannelKind::O, cfg.M, cfg.Nrx, cfg.Nc, mean, var);
  }
  return ch;
}

std::vector<SymbolBlock> draw_symbols(const SystemConfig& cfg, SymbolRole role,
                                      std::uint64_t seed) {
  const Stream stream = role == SymbolRole::radar ? Stream::radar_symbols : Stream::data_symbols;
  std::vector<SymbolBlock> out(cfg.M);
  for (int m = 0; m < cfg.M; ++m) {
    Engine eng = make_engine(seed, stream, {std::uint64_t(m)});
    out[m].values = complex_gaussian_matrix(eng, cfg.K, cfg.T);
  }
  return out;
}

SymbolSet draw_symbol_set(const SystemConfig& cfg, std::uint64_t seed) {
  SymbolSet s;
  s.radar = draw_symbols(cfg, SymbolRole::radar, seed);
  if (cfg.scheme == Scheme::separated) s.data = draw_symbols(cfg, SymbolRole::data, seed);
  return s;
}

CVec transmit(const SystemConfig& cfg, const CMat& W, const CMat* F, const CVec& s,
              const CVec* d) {
  if (cfg.scheme == Scheme::shared) {
    require(F == nullptr && d == nullptr, "shared scheme takes neither F nor d");
    require(W.rows() == cfg.Ntx && W.cols() == cfg.K && s.size() == cfg.K,
            "W must be Ntx x K and s of length K");
    return W * s;
  }
  require(F != nullptr && d != nullptr, "separated scheme needs F and d");
  require(W.rows() == cfg.Nc && W.cols() == cfg.K && F->rows() == cfg.Ntx &&
              F->cols() == cfg.K && s.size() == cfg.K && d->size() == cfg.K,
          "W must be Nc x K, F Ntx x K, and s, d of length K");
  CVec x(W.rows() + F->rows());
  x.head(W.rows()) = W * (*d);
  x.tail(F->rows()) = (*F) * s;
  return x;
}

CVec receive_at_sensor(const SystemConfig& cfg, const ChannelSet& ch, const BeamformerSet& bf,
                       const SymbolSet& sym, int t, int m, std::uint64_t noise_seed,
                       ReceiveOptions opt) {
  check_beamformers(cfg, bf);
  check_symbols(cfg, sym);
  require(m >= 0 && m < cfg.M, "sensor index out of range");
  require(t >= 0 && t < sym.radar[m].values.cols(), "slot index out of range");
  CVec y = CVec::Zero(cfg.Nrx);
  const bool shared = cfg.scheme == Scheme::shared;
  for (int i = 0; i < cfg.M; ++i) {
    if (i != m && !opt.interference) continue;
    const CVec s = sym.radar[i].values.col(t);
    if (shared) {
      y += ch.G[i][m] * (bf.W[i] * s);
      if (i != m) y += ch.Q[i][m] * (bf.W[i] * s);
    } else {
      const CVec d = sym.data[i].values.col(t);
      y += ch.G[i][m] * (bf.F[i] * s) + ch.C[i][m] * (bf.W[i] * d);
      if (i != m) y += ch.Q[i][m] * (bf.F[i] * s) + ch.O[i][m] * (bf.W[i] * d);
    }
  }
  if (opt.noise && cfg.sigma_r2 > 0.0)
    y += slot_noise(noise_seed, Stream::sensor_noise, m, t, cfg.Nrx, cfg.sigma_r2);
  return y;
}

CMat receive_block_at_sensor(const SystemConfig& cfg, const ChannelSet& ch,
                             const BeamformerSet& bf, const SymbolSet& sym, int m,
                             std::uint64_t noise_seed, ReceiveOptions opt) {
  check_beamformers(cfg, bf);
  check_symbols(cfg, sym);
  require(m >= 0 && m < cfg.M, "sensor index out of range");
  const auto T = sym.radar[m].values.cols();
  CMat y = CMat::Zero(cfg.Nrx, T);
  const bool shared = cfg.scheme == Scheme::shared;
  for (int i = 0; i < cfg.M; ++i) {
    if (i != m && !opt.interference) continue;
    if (shared) {
      CMat path = ch.G[i][m];
      if (i != m) path += ch.Q[i][m];
      y.noalias() += (path * bf.W[i]) * sym.radar[i].values;
    } else {
      CMat radar = ch.G[i][m];
      CMat data = ch.C[i][m];
      if (i != m) {
        radar += ch.Q[i][m];
        data += ch.O[i][m];
      }
      y.noalias() += (radar * bf.F[i]) * sym.radar[i].values;
      y.noalias() += (data * bf.W[i]) * sym.data[i].values;
    }
  }
  if (opt.noise && cfg.sigma_r2 > 0.0)
    for (Eigen::Index t = 0; t < T; ++t)
      y.col(t) += slot_noise(noise_seed, Stream::sensor_noise, m, t, cfg.Nrx, cfg.sigma_r2);
  return y;
}

CVec receive_at_ap(const SystemConfig& cfg, const ChannelSet& ch, const BeamformerSet& bf,
                   const SymbolSet& sym, int t, std::uint64_t noise_seed, bool noise) {
  check_beamformers(cfg, bf);
  check_symbols(cfg, sym);
  require(bf.A.rows() == cfg.Na && bf.A.cols() == cfg.K, "A must be Na x K");
  require(t >= 0 && t < sym.radar.front().values.cols(), "slot index out of range");
  CVec r = CVec::Zero(cfg.Na);
  for (int m = 0; m < cfg.M; ++m) {
    if (cfg.scheme == Scheme::shared) {
      r += ch.H[m] * (bf.W[m] * sym.radar[m].values.col(t));
    } else {
      r += ch.H[m] * (bf.W[m] * sym.data[m].values.col(t));
      r += ch.R[m] * (bf.F[m] * sym.radar[m].values.col(t));
    }
  }
  if (noise && cfg.sigma_c2 > 0.0)
    r += slot_noise(noise_seed, Stream::ap_noise, t, 0, cfg.Na, cfg.sigma_c2);
  return bf.A.adjoint() * r;
}

CMat receive_block_at_ap(const SystemConfig& cfg, const ChannelSet& ch,
                         const BeamformerSet& bf, const SymbolSet& sym,
                         std::uint64_t noise_seed, bool noise) {
  check_beamformers(cfg, bf);
  check_symbols(cfg, sym);
  require(bf.A.rows() == cfg.Na && bf.A.cols() == cfg.K, "A must be Na x K");
  const auto T = sym.radar.front().values.cols();
  const CMat Ah = bf.A.adjoint();
  CMat z = CMat::Zero(cfg.K, T);
  for (int m = 0; m < cfg.M; ++m) {
    if (cfg.scheme == Scheme::shared) {
      z.noalias() += (Ah * ch.H[m] * bf.W[m]) * sym.radar[m].values;
    } else {
      z.noalias() += (Ah * ch.H[m] * bf.W[m]) * sym.data[m].values;
      z.noalias() += (Ah * ch.R[m] * bf.F[m]) * sym.radar[m].values;
    }
  }
  if (noise && cfg.sigma_c2 > 0.0)
    for (Eigen::Index t = 0; t < T; ++t)
      z.col(t) += Ah * slot_noise(noise_seed, Stream::ap_noise, t, 0, cfg.Na, cfg.sigma_c2);
  return z;
}

}  // namespace iscco
