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

#include "iscco/beamform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "iscco/error.hpp"
#include "iscco/rng.hpp"

namespace iscco {

CMat zero_forcing(const CMat& A, const CMat& H) {
  if (A.rows() != H.rows())
    throw Error(ErrorCode::dimension_mismatch, "zero_forcing: A and H disagree on Na");
  const CMat HA = H.adjoint() * A;
  const auto inv = hpd_inverse(HA * HA.adjoint());
  if (!inv) throw Error(ErrorCode::singular_equalizer, "zero_forcing: H^H A A^H H is singular");
  return *inv * HA;
}

double sensing_trace_bound(const SystemConfig& cfg, int m) {
  const double denom = cfg.Nrx * cfg.sigma_r2;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return cfg.T * cfg.eta.at(m) / denom;
}

double alpha_star(const SystemConfig& cfg, int m) {
  return cfg.Ntx * cfg.Nrx * cfg.sigma_r2 / (cfg.T * cfg.eta.at(m));
}

CMat radar_beamformer(const SystemConfig& cfg, int m) {
  if (cfg.K < cfg.Ntx)
    throw Error(ErrorCode::shape_error, "radar_beamformer: needs K >= Ntx for orthonormal rows");
  return std::sqrt(alpha_star(cfg, m)) * unitary_dft(cfg.K).topRows(cfg.Ntx);
}

double data_power_budget(const SystemConfig& cfg, int m) {
  return cfg.scheme == Scheme::shared ? cfg.P : cfg.P - cfg.Ntx * alpha_star(cfg, m);
}

namespace {

void require_channels(const SystemConfig& cfg, const ChannelSet& ch) {
  if (static_cast<int>(ch.H.size()) != cfg.M)
    throw Error(ErrorCode::dimension_mismatch, "channel set has the wrong number of sensors");
  for (const auto& h : ch.H)
    if (h.rows() != cfg.Na || h.cols() != cfg.data_tx())
      throw Error(ErrorCode::dimension_mismatch, "H_m has the wrong shape");
  if (cfg.scheme == Scheme::separated && static_cast<int>(ch.R.size()) != cfg.M)
    throw Error(ErrorCode::dimension_mismatch, "separated scheme needs R_m");
}

/// Shared structure of both relaxed programs. power[m] is the bound on
/// tr((H_m^H Ahat H_m)^{-1}); trace_bound[m] (possibly inf) the bound on
/// tr(H_m^H Ahat H_m).
ConicProblem build_lifted(const SystemConfig& cfg, const ChannelSet& ch, const CMat& weight,
                          const std::vector<double>& power,
                          const std::vector<double>& trace_bound) {
  ConicProblem prob;
  // Ahat = kappa * Y0 with kappa chosen so that Y0 is O(1) for the typical
  // channel magnitude.
  double gain = 0.0;
  for (const auto& h : ch.H) gain += frobenius2(h) / static_cast<double>(h.size());
  gain /= cfg.M;
  const double kappa = 1.0 / (cfg.P * (gain > 0.0 ? gain : 1.0));
  prob.ahat_scale = kappa;
  prob.ahat_var = prob.add_variable("Ahat", cfg.Na);

  const double wscale = weight.trace().real() / cfg.Na;
  if (wscale > 0.0) {
    prob.objective.push_back({prob.ahat_var, weight / wscale});
    prob.objective_scale = kappa * wscale;
  }

  LmiBlock psd;
  psd.name = "Ahat_psd";
  psd.size = 2 * cfg.Na;
  psd.terms.push_back({prob.ahat_var, 1.0, {}, {}});
  prob.psd_blocks.push_back(psd);

  const int n = cfg.data_tx();
  std::vector<int> sub1, sub2;
  for (int r = 0; r < n; ++r) sub1.push_back(r);
  for (int r = 0; r < n; ++r) sub1.push_back(2 * n + r);
  for (int r = 0; r < n; ++r) sub2.push_back(n + r);
  for (int r = 0; r < n; ++r) sub2.push_back(3 * n + r);
  CMat offdiag = CMat::Zero(2 * n, 2 * n);
  offdiag.topRightCorner(n, n).setIdentity();
  offdiag.bottomLeftCorner(n, n).setIdentity();
  const RMat constant = embed(offdiag);

  for (int m = 0; m < cfg.M; ++m) {
    const int u = prob.add_variable("U_" + std::to_string(m), n);
    LmiBlock blk;
    blk.name = "schur_" + std::to_string(m);
    blk.size = 4 * n;
    blk.constant = constant;
    blk.terms.push_back({u, 1.0, {}, sub1});
    blk.terms.push_back({prob.ahat_var, 1.0, embed(ch.H[m].adjoint()), sub2});
    prob.psd_blocks.push_back(std::move(blk));

    LinearConstraint pw;
    pw.name = "power_" + std::to_string(m);
    pw.terms.push_back({u, CMat::Identity(n, n)});
    pw.rel = Relation::le;
    pw.bound = power[m] * kappa;
    prob.linear_constraints.push_back(std::move(pw));

    if (std::isfinite(trace_bound[m])) {
      LinearConstraint sc;
      sc.name = "sensing_" + std::to_string(m);
      sc.terms.push_back({prob.ahat_var, ch.H[m] * ch.H[m].adjoint()});
      sc.rel = Relation::le;
      sc.bound = trace_bound[m] / kappa;
      prob.linear_constraints.push_back(std::move(sc));
    }
  }
  return prob;
}

}  // namespace

ConicProblem build_sdp_shared(const SystemConfig& cfg, const ChannelSet& ch) {
  if (cfg.scheme != Scheme::shared)
    throw Error(ErrorCode::precondition, "build_sdp_shared: shared scheme required");
  require_channels(cfg, ch);
  std::vector<double> power(cfg.M, cfg.P), bound(cfg.M);
  for (int m = 0; m < cfg.M; ++m) bound[m] = sensing_trace_bound(cfg, m);
  ConicProblem prob =
      build_lifted(cfg, ch, cfg.sigma_c2 * CMat::Identity(cfg.Na, cfg.Na), power, bound);
  prob.provenance = Provenance::shared_p4;
  return prob;
}

ConicProblem build_sdp_separated(const SystemConfig& cfg, const ChannelSet& ch) {
  if (cfg.scheme != Scheme::separated)
    throw Error(ErrorCode::precondition, "build_sdp_separated: separated scheme required");
  require_channels(cfg, ch);
  std::vector<double> power(cfg.M);
  const std::vector<double> bound(cfg.M, std::numeric_limits<double>::infinity());
  CMat weight = cfg.sigma_c2 * CMat::Identity(cfg.Na, cfg.Na);
  for (int m = 0; m < cfg.M; ++m) {
    // tr(F F^H) = Ntx alpha* since the rows of D are orthonormal.
    const double a = alpha_star(cfg, m);
    const double radar = cfg.Ntx * a;
    if (radar >= cfg.P)
      throw Error(ErrorCode::radar_power_exceeds_budget,
                  "sensor " + std::to_string(m) + ": radar power " + std::to_string(radar) +
                      " W leaves no power for data");
    power[m] = cfg.P - radar;
    weight += a * ch.R[m] * ch.R[m].adjoint();
  }
  ConicProblem prob = build_lifted(cfg, ch, hermitian_part(weight), power, bound);
  prob.provenance = Provenance::separated_p8;
  return prob;
}

double design_objective(const SystemConfig& cfg, const ChannelSet& ch, const CMat& A) {
  double obj = cfg.sigma_c2 * frobenius2(A);
  if (cfg.scheme == Scheme::separated)
    for (int m = 0; m < cfg.M; ++m) obj += alpha_star(cfg, m) * frobenius2(A.adjoint() * ch.R[m]);
  return obj;
}

RandomizationResult gaussian_randomization(const CMat& Ahat, const SystemConfig& cfg,
                                           const ChannelSet& ch, int n_samples,
                                           std::uint64_t seed) {
  require_channels(cfg, ch);
  if (Ahat.rows() != cfg.Na || Ahat.cols() != cfg.Na)
    throw Error(ErrorCode::dimension_mismatch, "gaussian_randomization: Ahat must be Na x Na");
  if (cfg.Na < cfg.K)
    throw Error(ErrorCode::precondition, "gaussian_randomization: rank K needs Na >= K");

  const ClippedEigen eig = clipped_eigen(hermitian_part(Ahat));
  const CMat factor = eig.vectors * eig.values.cwiseSqrt().asDiagonal();

  std::vector<double> power(cfg.M), bound(cfg.M);
  for (int m = 0; m < cfg.M; ++m) {
    power[m] = data_power_budget(cfg, m);
    bound[m] = cfg.scheme == Scheme::shared ? sensing_trace_bound(cfg, m)
                                            : std::numeric_limits<double>::infinity();
  }

  RandomizationResult best;
  best.objective = std::numeric_limits<double>::infinity();
  Engine eng = make_engine(seed, Stream::randomization);
  for (int n = 0; n <= n_samples; ++n) {
    CMat A = n == 0 ? CMat(factor.rightCols(cfg.K))
                    : CMat(factor * complex_gaussian_matrix(eng, cfg.Na, cfg.K));
    double lower = 0.0, upper = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (int m = 0; m < cfg.M && ok; ++m) {
      const CMat HA = ch.H[m].adjoint() * A;
      const CMat X = HA * HA.adjoint();
      const auto inv = hpd_inverse(X);
      if (!inv) {
        ok = false;
        break;
      }
      lower = std::max(lower, inv->trace().real() / power[m]);
      if (std::isfinite(bound[m])) upper = std::min(upper, bound[m] / X.trace().real());
    }
    if (!ok || !(lower <= upper) || !(lower > 0.0)) continue;
    A *= std::sqrt(lower);
    if (numerical_rank(A) != cfg.K) continue;
    ++best.feasible_candidates;
    const double obj = design_objective(cfg, ch, A);
    if (obj < best.objective) {
      best.objective = obj;
      best.A = A;
      best.best_candidate = n;
    }
  }
  if (best.best_candidate < 0)
    throw Error(ErrorCode::no_feasible_sample,
                "no candidate out of " + std::to_string(n_samples + 1) + " admits a feasible scaling");
  return best;
}

BeamformerSet antenna_selection_baseline(const SystemConfig& cfg, const ChannelSet& ch,
                                         double reference_norm) {
  require_channels(cfg, ch);
  if (cfg.Na < cfg.K) throw Error(ErrorCode::precondition, "antenna selection needs Na >= K");
  CMat hsum = CMat::Zero(cfg.Na, cfg.data_tx());
  for (const auto& h : ch.H) hsum += h;
  const RVec gain = hsum.rowwise().norm();
  std::vector<int> order(cfg.Na);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return gain[a] > gain[b]; });
  std::vector<int> chosen(order.begin(), order.begin() + cfg.K);
  std::sort(chosen.begin(), chosen.end());

  BeamformerSet bf;
  bf.A = CMat::Zero(cfg.Na, cfg.K);
  for (int k = 0; k < cfg.K; ++k) bf.A(chosen[k], k) = 1.0;
  bf.A *= std::sqrt(reference_norm / cfg.K);
  for (int m = 0; m < cfg.M; ++m) {
    CMat W = zero_forcing(bf.A, ch.H[m]);
    const double budget = data_power_budget(cfg, m);
    const double pw = frobenius2(W);
    if (pw > budget) W *= std::sqrt(budget / pw);
    bf.W.push_back(std::move(W));
    if (cfg.scheme == Scheme::separated) {
      bf.F.push_back(radar_beamformer(cfg, m));
      bf.alpha.push_back(alpha_star(cfg, m));
    }
  }
  return bf;
}

DesignResult design_full(const SystemConfig& cfg, const ChannelSet& ch, int n_samples,
                         std::uint64_t seed, const SolverOptions& opt) {
  DesignResult out;
  const ConicProblem prob = cfg.scheme == Scheme::shared ? build_sdp_shared(cfg, ch)
                                                         : build_sdp_separated(cfg, ch);
  out.sdp = solve_conic(prob, opt);
  switch (out.sdp.status) {
    case ConicStatus::optimal: break;
    case ConicStatus::infeasible:
      throw Error(ErrorCode::infeasible, "relaxed design problem is infeasible");
    default:
      throw Error(ErrorCode::solver_failure,
                  "conic solver stopped with status " + to_string(out.sdp.status));
  }
  out.sdr_bound = out.sdp.objective_value;
  const RandomizationResult rnd = gaussian_randomization(out.sdp.Ahat, cfg, ch, n_samples, seed);
  out.objective = rnd.objective;
  out.feasible_candidates = rnd.feasible_candidates;
  out.bf.A = rnd.A;
  for (int m = 0; m < cfg.M; ++m) {
    out.bf.W.push_back(zero_forcing(rnd.A, ch.H[m]));
    if (cfg.scheme == Scheme::separated) {
      out.bf.F.push_back(radar_beamformer(cfg, m));
      out.bf.alpha.push_back(alpha_star(cfg, m));
    }
  }
  return out;
}

BeamformerSet design(const SystemConfig& cfg, const ChannelSet& ch, int n_samples,
                     std::uint64_t seed) {
  return design_full(cfg, ch, n_samples, seed).bf;
}

}  // namespace iscco
