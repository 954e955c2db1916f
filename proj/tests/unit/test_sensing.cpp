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

#include <gtest/gtest.h>

#include "../support/test_support.hpp"

namespace iscco {
namespace {

using testing::random_cmat;
using testing::small_separated;
using testing::small_shared;

TEST(MatchedFilter, HandEvaluatedScalar) {
  CMat y(1, 2), s(1, 2);
  y << 1.0, 2.0;
  s << 1.0, -1.0;
  const SufficientStatistic st = matched_filter(y, s, 3);
  EXPECT_NEAR(std::abs(st.Yhat(0, 0) - cx(-0.5, 0.0)), 0.0, 1e-15);
  EXPECT_EQ(st.m, 3);
}

TEST(MatchedFilter, ZeroInput) {
  std::mt19937_64 g(1);
  const SufficientStatistic st = matched_filter(CMat::Zero(3, 50), random_cmat(g, 2, 50));
  EXPECT_EQ(st.Yhat, CMat::Zero(3, 2));
}

TEST(MatchedFilter, DimensionMismatch) {
  try {
    matched_filter(CMat::Zero(3, 50), CMat::Zero(2, 49));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
}

TEST(MatchedFilter, ConvergesToEffectiveChannel) {
  const SystemConfig c = small_shared(1, 3, 2, 3, 4, 100000);
  std::mt19937_64 g(2);
  const CMat G = random_cmat(g, 4, 3, 1.0);
  const CMat W = random_cmat(g, 3, 3);
  const CMat S = draw_symbols(c, SymbolRole::radar, 3)[0].values;
  const CMat GW = G * W;
  const SufficientStatistic st = matched_filter(GW * S, S);
  EXPECT_LT((st.Yhat - GW).norm() / GW.norm(), 0.05);
}

TEST(MleTrm, IdentityBeamformerPassesThrough) {
  std::mt19937_64 g(4);
  const CMat Y = random_cmat(g, 3, 4);
  EXPECT_LT((mle_trm({Y, 0}, CMat::Identity(4, 4)).Ghat - Y).norm(), 1e-14);
}

TEST(MleTrm, NoiselessStatisticRecoversTrm) {
  std::mt19937_64 g(5);
  const CMat G = random_cmat(g, 4, 3, 1.0);
  const CMat W = random_cmat(g, 3, 6);
  EXPECT_LT((mle_trm({G * W, 0}, W).Ghat - G).norm(), 1e-10 * G.norm());
}

TEST(MleTrm, ScaledIdentityMatchesLeastSquaresOracle) {
  std::mt19937_64 g(6);
  const CMat Y = random_cmat(g, 3, 3);
  const CMat W = 2.0 * CMat::Identity(3, 3);
  const CMat Ghat = mle_trm({Y, 0}, W).Ghat;
  EXPECT_LT((Ghat - Y / 2.0).norm(), 1e-14);
  EXPECT_LT((Ghat - testing::least_squares_right(Y, W)).norm(), 1e-12);
}

TEST(MleTrm, WideBeamformerMatchesLeastSquaresOracle) {
  std::mt19937_64 g(7);
  const CMat Y = random_cmat(g, 4, 6);
  const CMat W = random_cmat(g, 3, 6);
  const CMat Ghat = mle_trm({Y, 0}, W).Ghat;
  EXPECT_LT((Ghat - testing::least_squares_right(Y, W)).norm(), 1e-10 * Ghat.norm());
}

TEST(MleTrm, StationarityOfLikelihood) {
  std::mt19937_64 g(8);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat Y = random_cmat(g, 4, 5);
    const CMat W = random_cmat(g, 3, 5);
    const CMat Ghat = mle_trm({Y, 0}, W).Ghat;
    const CMat YWh = Y * W.adjoint();
    // The likelihood gradient in G is proportional to G W W^H - Yhat W^H.
    EXPECT_LT((Ghat * W * W.adjoint() - YWh).norm(), 1e-10 * YWh.norm());
  }
}

TEST(MleTrm, SingularBeamformerRejected) {
  CMat W = CMat::Zero(2, 3);
  W(0, 0) = 1.0;
  W(1, 0) = 1.0;
  try {
    mle_trm({CMat::Ones(2, 3), 0}, W);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::singular_beamformer);
  }
}

TEST(MleTrm, UnbiasedOverNoiseTrials) {
  std::mt19937_64 g(9);
  const CMat G = random_cmat(g, 2, 2, 1.0);
  const CMat W = random_cmat(g, 2, 3);
  CMat mean = CMat::Zero(2, 2);
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) mean += mle_trm({G * W + 0.3 * random_cmat(g, 2, 3), 0}, W).Ghat;
  mean /= double(trials);
  const double per_entry_sd =
      0.3 * std::sqrt(testing::trace_inverse_by_eigen(W * W.adjoint()) / trials);
  EXPECT_LT((mean - G).cwiseAbs().maxCoeff(), 5.0 * per_entry_sd);
}

TEST(SensingMseClosed, IsotropicFullPower) {
  SystemConfig c = small_shared(1, 4, 4, 4, 3);
  const CMat B = std::sqrt(c.P / c.Ntx) * CMat::Identity(4, 4);
  const double expect = c.Nrx * c.sigma_r2 * c.Ntx * c.Ntx / (c.T * c.P);
  const double oracle = c.Nrx * c.sigma_r2 / c.T * testing::trace_inverse_by_eigen(B * B.adjoint());
  EXPECT_NEAR(sensing_mse_closed(B, c) / expect, 1.0, 1e-12);
  EXPECT_NEAR(oracle / expect, 1.0, 1e-12);
}

TEST(SensingMseClosed, ScaledRowOrthonormal) {
  SystemConfig c = small_separated(1, 6, 4, 2, 3, 2);
  const double alpha = 0.37;
  const CMat D = unitary_dft(6).topRows(3);
  const double expect = c.Nrx * c.sigma_r2 * c.Ntx / (c.T * alpha);
  EXPECT_NEAR(sensing_mse_closed(std::sqrt(alpha) * D, c) / expect, 1.0, 1e-12);
}

TEST(SensingMseClosed, InverseSquareHomogeneity) {
  const SystemConfig c = small_shared(1, 5, 4, 3, 2);
  std::mt19937_64 g(10);
  const CMat B = random_cmat(g, 3, 5);
  EXPECT_NEAR(sensing_mse_closed(3.0 * B, c) * 9.0 / sensing_mse_closed(B, c), 1.0, 1e-12);
}

TEST(SensingMseClosed, SingularBeamformerRejected) {
  const SystemConfig c = small_shared(1, 3, 4, 3, 2);
  EXPECT_THROW(sensing_mse_closed(CMat::Zero(3, 3), c), Error);
}

TEST(SensingFeasible, BoundaryAndSlack) {
  SystemConfig c = small_shared(1, 4, 4, 4, 3);
  std::mt19937_64 g(11);
  const CMat B = random_cmat(g, 4, 4);
  const double mse = sensing_mse_closed(B, c);
  c.eta = {mse};
  EXPECT_TRUE(sensing_feasible(B, c, 0));
  c.eta = {mse / (1.0 + 2.0 * kFeasibilitySlack)};
  EXPECT_FALSE(sensing_feasible(B, c, 0));
  EXPECT_FALSE(sensing_feasible(CMat::Zero(4, 4), c, 0));
}

TEST(SensingFeasible, MinimalRadarPowerMeetsThresholdExactly) {
  const SystemConfig c = default_config(Scheme::separated);
  for (int m = 0; m < c.M; ++m) {
    const CMat F = radar_beamformer(c, m);
    EXPECT_TRUE(sensing_feasible(F, c, m));
    EXPECT_NEAR(sensing_mse_closed(F, c) / c.eta[m], 1.0, 1e-9);
  }
}

/// Matched-filter noise N = (1/T) sum_t n[t] s[t]^H has covariance (sigma^2/T) I.
TEST(SensingNoise, MatchedFilterNoiseMoments) {
  SystemConfig c = small_shared(1, 4, 4, 4, 4, 100);
  c.sigma_r2 = 1.0;
  const ChannelSet ch = draw_channels(c, 1);
  BeamformerSet bf;
  bf.A = CMat::Zero(c.Na, c.K);
  bf.W = {CMat::Zero(c.Ntx, c.K)};
  const int trials = 20000, d = c.Nrx * c.K;
  CMat cov = CMat::Zero(d, d);
  CVec mean = CVec::Zero(d);
  for (int t = 0; t < trials; ++t) {
    const SymbolSet sym = draw_symbol_set(c, derive_seed(2, Stream::empirical, {std::uint64_t(t)}));
    const CMat y = receive_block_at_sensor(c, ch, bf, sym, 0, 1000 + t);
    const CMat N = matched_filter(y, sym.radar[0].values).Yhat;
    const CVec v = Eigen::Map<const CVec>(N.data(), d);
    mean += v;
    cov += v * v.adjoint();
  }
  mean /= double(trials);
  cov /= double(trials);
  const double s2 = c.sigma_r2 / c.T;
  const CMat expect = s2 * CMat::Identity(d, d);
  EXPECT_LT((cov - expect).norm() / expect.norm(), 0.05);
  const double se = std::sqrt(s2 / trials);
  EXPECT_LT(mean.cwiseAbs().maxCoeff(), 3.0 * se);
}

BeamformerSet isotropic(const SystemConfig& c) {
  BeamformerSet bf;
  bf.A = CMat::Zero(c.Na, c.K);
  for (int m = 0; m < c.M; ++m)
    bf.W.push_back(std::sqrt(c.P / c.Ntx) * CMat::Identity(c.Ntx, c.K));
  return bf;
}

TEST(EmpiricalSensing, AgreesWithClosedFormSingleSensor) {
  SystemConfig c = small_shared(1, 4, 4, 4, 4, 1000);
  c.sigma_r2 = 1.0;
  const ChannelSet ch = draw_channels(c, 3);
  const BeamformerSet bf = isotropic(c);
  const double emp = empirical_sensing_mse(c, ch, bf, 200, 4);
  const double closed = sensing_mse_closed(bf.W[0], c);
  EXPECT_LT(testing::rel_diff(emp, closed), 0.15);
}

TEST(EmpiricalSensing, DoublingSlotsHalvesError) {
  SystemConfig c = small_shared(1, 4, 4, 4, 4, 1000);
  c.sigma_r2 = 1.0;
  const ChannelSet ch = draw_channels(c, 5);
  const BeamformerSet bf = isotropic(c);
  const double e1 = empirical_sensing_mse(c, ch, bf, 200, 6);
  c.T = 2000;
  const double e2 = empirical_sensing_mse(c, ch, bf, 200, 6);
  EXPECT_NEAR(e2 / e1, 0.5, 0.5 * 0.15);
}

TEST(EmpiricalSensing, OrthogonalSymbolsNoiselessEstimateIsExact) {
  std::mt19937_64 g(12);
  const int K = 4, T = 8;
  const CMat G = random_cmat(g, 3, 4, 1.0);
  const CMat W = random_cmat(g, 4, K);
  const CMat S = std::sqrt(double(T)) * unitary_dft(T).topRows(K);
  const CMat Ghat = mle_trm(matched_filter(G * W * S, S), W).Ghat;
  EXPECT_LT((Ghat - G).norm(), 1e-12 * G.norm());
}

/// Without noise the residual is the finite-T symbol covariance term,
/// G W (S S^H / T - I) W^H (W W^H)^{-1}; it is reproduced here directly.
TEST(EmpiricalSensing, NoiselessResidualIsSymbolCovarianceTerm) {
  SystemConfig c = small_shared(1, 4, 4, 4, 3, 500);
  c.sigma_r2 = 0.0;
  const ChannelSet ch = draw_channels(c, 7);
  const BeamformerSet bf = isotropic(c);
  const int trials = 10;
  double oracle = 0.0;
  for (int t = 0; t < trials; ++t) {
    const SymbolSet sym =
        draw_symbol_set(c, derive_seed(8, Stream::empirical, {std::uint64_t(t)}));
    const CMat& S = sym.radar[0].values;
    const CMat& W = bf.W[0];
    const CMat E = S * S.adjoint() / double(c.T) - CMat::Identity(c.K, c.K);
    const CMat resid = ch.G[0][0] * W * E * W.adjoint() * (W * W.adjoint()).inverse();
    oracle += resid.squaredNorm();
  }
  oracle /= trials;
  const double emp = empirical_sensing_mse(c, ch, bf, trials, 8,
                                           EmpiricalSensingOptions{.interference = false});
  EXPECT_NEAR(emp / oracle, 1.0, 1e-9);

  c.T = 50000;
  const double emp_long = empirical_sensing_mse(c, ch, bf, trials, 8);
  EXPECT_LT(emp_long, emp / 20.0);
}

TEST(EmpiricalSensing, PerSensorLengthAndInterferenceFlag) {
  SystemConfig c = small_shared(3, 4, 4, 4, 3, 200);
  c.sigma_r2 = 1.0;
  const ChannelSet ch = draw_channels(c, 9);
  const BeamformerSet bf = isotropic(c);
  const auto with = empirical_sensing_mse_per_sensor(c, ch, bf, 5, 10);
  const auto without = empirical_sensing_mse_per_sensor(c, ch, bf, 5, 10, {.interference = false});
  ASSERT_EQ(with.size(), 3u);
  ASSERT_EQ(without.size(), 3u);
  for (int m = 0; m < 3; ++m) EXPECT_NE(with[m], without[m]);
}

}  // namespace
}  // namespace iscco
