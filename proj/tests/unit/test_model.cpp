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

using testing::small_separated;
using testing::small_shared;

ErrorCode config_error_code(const SystemConfig& c) {
  try {
    validate_config(c);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::precondition;
}

TEST(ValidateConfig, DefaultSharedSplitIsValid) {
  const SystemConfig c = default_config(Scheme::shared);
  EXPECT_EQ(c.Ns, 12);
  EXPECT_EQ(c.Ntx, 6);
  EXPECT_EQ(c.Nrx, 6);
  EXPECT_NO_THROW(validate_config(c));
}

TEST(ValidateConfig, DefaultSeparatedSplitIsValid) {
  const SystemConfig c = default_config(Scheme::separated);
  EXPECT_EQ(c.Nc, 4);
  EXPECT_EQ(c.Ntx, 4);
  EXPECT_EQ(c.Nrx, 4);
  EXPECT_NO_THROW(validate_config(c));
}

TEST(ValidateConfig, WrongSharedSplitIsDimensionMismatch) {
  SystemConfig c = default_config(Scheme::shared);
  c.Nrx = 5;
  EXPECT_EQ(config_error_code(c), ErrorCode::dimension_mismatch);
}

TEST(ValidateConfig, ReportsEveryViolation) {
  SystemConfig c = default_config(Scheme::shared);
  c.Nrx = 5;
  c.P = 0.0;
  c.sigma_c2 = -1.0;
  try {
    validate_config(c);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.violations().size(), 3u);
  }
}

TEST(ValidateConfig, NonpositiveEta) {
  SystemConfig c = default_config(Scheme::shared);
  c.eta[3] = 0.0;
  EXPECT_EQ(config_error_code(c), ErrorCode::nonpositive_parameter);
}

TEST(Units, DbmConversion) {
  EXPECT_DOUBLE_EQ(dbm_to_watts(30.0), 1.0);
  EXPECT_NEAR(dbm_to_watts(10.0), 0.01, 1e-15);
  EXPECT_NEAR(dbm_to_watts(-79.5), 1.122e-11, 1.122e-11 * 1e-3);
  EXPECT_NEAR(watts_to_dbm(dbm_to_watts(-59.5)), -59.5, 1e-12);
}

TEST(DrawChannels, DeterministicForSeed) {
  const SystemConfig c = default_config(Scheme::separated);
  const ChannelSet a = draw_channels(c, 42);
  const ChannelSet b = draw_channels(c, 42);
  const ChannelSet other = draw_channels(c, 43);
  for (int m = 0; m < c.M; ++m) {
    EXPECT_EQ(a.H[m], b.H[m]);
    EXPECT_EQ(a.R[m], b.R[m]);
    for (int i = 0; i < c.M; ++i) {
      EXPECT_EQ(a.G[m][i], b.G[m][i]);
      EXPECT_EQ(a.C[m][i], b.C[m][i]);
      EXPECT_EQ(a.O[m][i], b.O[m][i]);
    }
  }
  EXPECT_NE(a.H[0], other.H[0]);
}

TEST(DrawChannels, DimensionsMatchConfig) {
  const SystemConfig c = small_separated(3, 5, 7, 2, 3, 4);
  const ChannelSet ch = draw_channels(c, 1);
  ASSERT_EQ(ch.H.size(), 3u);
  ASSERT_EQ(ch.R.size(), 3u);
  EXPECT_EQ(ch.H[0].rows(), 7);
  EXPECT_EQ(ch.H[0].cols(), 2);
  EXPECT_EQ(ch.R[1].rows(), 7);
  EXPECT_EQ(ch.R[1].cols(), 3);
  EXPECT_EQ(ch.G[2][1].rows(), 4);
  EXPECT_EQ(ch.G[2][1].cols(), 3);
  EXPECT_EQ(ch.Q[0][2].rows(), 4);
  EXPECT_EQ(ch.C[1][1].cols(), 2);
  EXPECT_EQ(ch.O[2][0].rows(), 4);
  const ChannelSet shared = draw_channels(small_shared(2, 3, 4, 3, 2), 1);
  EXPECT_TRUE(shared.R.empty());
  EXPECT_TRUE(shared.C.empty());
}

TEST(DrawChannels, EntryMomentsMatchRician) {
  SystemConfig c = small_shared(10, 4, 1000, 50, 50);
  c.rician_mean = 1.0;
  c.rician_var = 1.0;
  const ChannelSet ch = draw_channels(c, 7);
  std::vector<cx> v;
  for (int m = 0; m < c.M; ++m) {
    v.insert(v.end(), ch.H[m].data(), ch.H[m].data() + ch.H[m].size());
    for (int i = 0; i < c.M; ++i) {
      v.insert(v.end(), ch.G[m][i].data(), ch.G[m][i].data() + ch.G[m][i].size());
      v.insert(v.end(), ch.Q[m][i].data(), ch.Q[m][i].data() + ch.Q[m][i].size());
    }
  }
  ASSERT_GE(v.size(), 1000000u);
  cx mean = 0.0;
  for (const cx& z : v) mean += z;
  mean /= double(v.size());
  double var = 0.0, re_var = 0.0;
  for (const cx& z : v) {
    var += std::norm(z - mean);
    re_var += (z.real() - mean.real()) * (z.real() - mean.real());
  }
  var /= double(v.size());
  re_var /= double(v.size());
  EXPECT_LT(std::abs(mean - cx(1.0, 0.0)), 0.01);
  EXPECT_NEAR(var, 1.0, 0.01);
  EXPECT_NEAR(re_var, 0.5, 0.01);
}

TEST(DrawSymbols, SampleCovarianceNearIdentity) {
  SystemConfig c = small_shared(2, 2, 2, 2, 2, 100000);
  const auto s = draw_symbols(c, SymbolRole::radar, 5);
  ASSERT_EQ(s.size(), 2u);
  ASSERT_EQ(s[0].values.rows(), 2);
  ASSERT_EQ(s[0].values.cols(), 100000);
  const CMat cov = s[0].values * s[0].values.adjoint() / double(c.T);
  EXPECT_LT((cov - CMat::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.05);
  const CMat cross = s[0].values * s[1].values.adjoint() / double(c.T);
  EXPECT_LT(cross.cwiseAbs().maxCoeff(), 0.05);
}

TEST(DrawSymbols, RadarAndDataStreamsIndependent) {
  SystemConfig c = small_separated(2, 2, 2, 2, 2, 2, 100000);
  const SymbolSet sym = draw_symbol_set(c, 9);
  ASSERT_EQ(sym.data.size(), 2u);
  for (int i = 0; i < 2; ++i)
    for (int m = 0; m < 2; ++m) {
      const CMat cross = sym.radar[i].values * sym.data[m].values.adjoint() / double(c.T);
      EXPECT_LT(cross.cwiseAbs().maxCoeff(), 0.05);
    }
}

TEST(DrawSymbols, Deterministic) {
  const SystemConfig c = small_shared(3, 2, 2, 2, 2, 50);
  const auto a = draw_symbols(c, SymbolRole::data, 11);
  const auto b = draw_symbols(c, SymbolRole::data, 11);
  for (int m = 0; m < 3; ++m) EXPECT_EQ(a[m].values, b[m].values);
  const auto r = draw_symbols(c, SymbolRole::radar, 11);
  EXPECT_NE(a[0].values, r[0].values);
}

TEST(Transmit, SharedIdentity) {
  const SystemConfig c = small_shared(1, 3, 3, 3, 1);
  const CVec e1 = CVec::Unit(3, 0);
  EXPECT_EQ(transmit(c, CMat::Identity(3, 3), nullptr, e1, nullptr), e1);
}

TEST(Transmit, SeparatedStacksDataOverRadar) {
  const SystemConfig c = small_separated(1, 2, 3, 2, 2, 1);
  const CMat W = CMat::Zero(2, 2);
  const CMat F = CMat::Identity(2, 2);
  const CVec s = CVec::Unit(2, 0);
  const CVec d = CVec::Constant(2, cx(3.0, 1.0));
  CVec expect = CVec::Zero(4);
  expect[2] = 1.0;
  EXPECT_EQ(transmit(c, W, &F, s, &d), expect);
}

TEST(Transmit, DimensionMismatch) {
  const SystemConfig c = small_shared(1, 3, 3, 3, 1);
  try {
    transmit(c, CMat::Identity(2, 3), nullptr, CVec::Zero(3), nullptr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
}

TEST(Transmit, AveragePowerMatchesBeamformerTrace) {
  SystemConfig c = small_separated(1, 3, 3, 2, 2, 1, 100000);
  std::mt19937_64 g(3);
  CMat W = testing::random_cmat(g, 2, 3);
  CMat F = testing::random_cmat(g, 2, 3);
  W *= std::sqrt(0.6 * c.P / frobenius2(W));
  F *= std::sqrt(0.4 * c.P / frobenius2(F));
  const SymbolSet sym = draw_symbol_set(c, 4);
  double acc = 0.0;
  for (int t = 0; t < c.T; ++t) {
    const CVec s = sym.radar[0].values.col(t);
    const CVec d = sym.data[0].values.col(t);
    acc += transmit(c, W, &F, s, &d).squaredNorm();
  }
  const double mean = acc / c.T;
  // ||x||^2 has variance of order P^2/K; three standard errors.
  const double tol = 3.0 * c.P / std::sqrt(double(c.T));
  EXPECT_NEAR(mean, c.P, tol);
}

BeamformerSet random_bf(const SystemConfig& c, std::mt19937_64& g) {
  BeamformerSet bf;
  bf.A = testing::random_cmat(g, c.Na, c.K);
  for (int m = 0; m < c.M; ++m) {
    bf.W.push_back(testing::random_cmat(g, c.data_tx(), c.K));
    if (c.scheme == Scheme::separated) {
      bf.F.push_back(testing::random_cmat(g, c.Ntx, c.K));
      bf.alpha.push_back(1.0);
    }
  }
  return bf;
}

TEST(ReceiveAtSensor, SingleSensorNoiselessIsOwnEcho) {
  const SystemConfig c = small_shared(1, 3, 4, 3, 2, 20);
  std::mt19937_64 g(1);
  const ChannelSet ch = draw_channels(c, 2);
  const BeamformerSet bf = random_bf(c, g);
  const SymbolSet sym = draw_symbol_set(c, 3);
  ReceiveOptions opt;
  opt.noise = false;
  for (int t = 0; t < c.T; ++t) {
    const CVec y = receive_at_sensor(c, ch, bf, sym, t, 0, 4, opt);
    const CVec expect = ch.G[0][0] * bf.W[0] * sym.radar[0].values.col(t);
    EXPECT_LT((y - expect).norm(), 1e-12 * (1.0 + expect.norm()));
  }
}

TEST(ReceiveAtSensor, SeparatedSingleSensorIncludesDataReflection) {
  const SystemConfig c = small_separated(1, 3, 4, 2, 3, 2, 10);
  std::mt19937_64 g(5);
  const ChannelSet ch = draw_channels(c, 6);
  const BeamformerSet bf = random_bf(c, g);
  const SymbolSet sym = draw_symbol_set(c, 7);
  ReceiveOptions opt;
  opt.noise = false;
  for (int t = 0; t < c.T; ++t) {
    const CVec y = receive_at_sensor(c, ch, bf, sym, t, 0, 8, opt);
    const CVec expect = ch.G[0][0] * bf.F[0] * sym.radar[0].values.col(t) +
                        ch.C[0][0] * bf.W[0] * sym.data[0].values.col(t);
    EXPECT_LT((y - expect).norm(), 1e-12 * (1.0 + expect.norm()));
  }
}

TEST(ReceiveAtSensor, InterferenceSumsOtherSensors) {
  const SystemConfig c = small_shared(3, 2, 3, 2, 2, 4);
  std::mt19937_64 g(9);
  const ChannelSet ch = draw_channels(c, 10);
  const BeamformerSet bf = random_bf(c, g);
  const SymbolSet sym = draw_symbol_set(c, 11);
  ReceiveOptions opt;
  opt.noise = false;
  const int m = 1, t = 2;
  CVec expect = ch.G[m][m] * bf.W[m] * sym.radar[m].values.col(t);
  for (int i = 0; i < c.M; ++i)
    if (i != m) expect += (ch.G[i][m] + ch.Q[i][m]) * bf.W[i] * sym.radar[i].values.col(t);
  const CVec y = receive_at_sensor(c, ch, bf, sym, t, m, 12, opt);
  EXPECT_LT((y - expect).norm(), 1e-12 * expect.norm());
}

TEST(ReceiveAtSensor, NoiseOnlyCovariance) {
  SystemConfig c = small_shared(1, 2, 2, 2, 3, 100000);
  c.sigma_r2 = 1.0;
  ChannelSet ch = draw_channels(c, 1);
  for (auto& row : ch.G)
    for (auto& x : row) x.setZero();
  for (auto& row : ch.Q)
    for (auto& x : row) x.setZero();
  BeamformerSet bf;
  bf.A = CMat::Zero(c.Na, c.K);
  bf.W = {CMat::Identity(2, 2)};
  const SymbolSet sym = draw_symbol_set(c, 2);
  const CMat y = receive_block_at_sensor(c, ch, bf, sym, 0, 3);
  const CMat cov = y * y.adjoint() / double(c.T);
  EXPECT_LT((cov - CMat::Identity(3, 3)).cwiseAbs().maxCoeff(), 0.02);
}

TEST(ReceiveAtAp, PerfectEqualizationReturnsSymbols) {
  SystemConfig c = small_shared(1, 3, 3, 3, 1, 10);
  std::mt19937_64 g(13);
  const ChannelSet ch = draw_channels(c, 14);
  BeamformerSet bf;
  bf.A = testing::random_cmat(g, 3, 3);
  bf.W = {(bf.A.adjoint() * ch.H[0]).inverse()};
  const SymbolSet sym = draw_symbol_set(c, 15);
  for (int t = 0; t < c.T; ++t) {
    const CVec z = receive_at_ap(c, ch, bf, sym, t, 16, false);
    EXPECT_LT((z - sym.radar[0].values.col(t)).norm(), 1e-10);
  }
}

TEST(ReceiveAtAp, ZeroAggregatorGivesZero) {
  const SystemConfig c = small_shared(2, 2, 3, 2, 1, 5);
  std::mt19937_64 g(17);
  const ChannelSet ch = draw_channels(c, 18);
  BeamformerSet bf = random_bf(c, g);
  bf.A.setZero();
  const SymbolSet sym = draw_symbol_set(c, 19);
  EXPECT_EQ(receive_at_ap(c, ch, bf, sym, 0, 20, true), CVec::Zero(2));
}

TEST(ReceiveAtAp, SeparatedWithoutRadarMatchesDataOnlyFormula) {
  const SystemConfig c = small_separated(3, 2, 4, 2, 2, 1, 5);
  std::mt19937_64 g(21);
  const ChannelSet ch = draw_channels(c, 22);
  BeamformerSet bf = random_bf(c, g);
  for (auto& f : bf.F) f.setZero();
  const SymbolSet sym = draw_symbol_set(c, 23);
  for (int t = 0; t < c.T; ++t) {
    CVec expect = CVec::Zero(c.K);
    for (int m = 0; m < c.M; ++m)
      expect += bf.A.adjoint() * ch.H[m] * bf.W[m] * sym.data[m].values.col(t);
    const CVec z = receive_at_ap(c, ch, bf, sym, t, 24, false);
    EXPECT_LT((z - expect).norm(), 1e-12 * expect.norm());
  }
}

TEST(ReceiveAtAp, SeparatedAddsRadarLeak) {
  const SystemConfig c = small_separated(2, 2, 3, 2, 2, 1, 3);
  std::mt19937_64 g(25);
  const ChannelSet ch = draw_channels(c, 26);
  const BeamformerSet bf = random_bf(c, g);
  const SymbolSet sym = draw_symbol_set(c, 27);
  CVec expect = CVec::Zero(c.K);
  for (int m = 0; m < c.M; ++m)
    expect += bf.A.adjoint() * (ch.H[m] * bf.W[m] * sym.data[m].values.col(1) +
                                ch.R[m] * bf.F[m] * sym.radar[m].values.col(1));
  const CVec z = receive_at_ap(c, ch, bf, sym, 1, 28, false);
  EXPECT_LT((z - expect).norm(), 1e-12 * expect.norm());
}

TEST(ReceiveAtAp, SlotNoiseReproducible) {
  const SystemConfig c = small_shared(2, 2, 3, 2, 1, 6);
  std::mt19937_64 g(29);
  const ChannelSet ch = draw_channels(c, 30);
  const BeamformerSet bf = random_bf(c, g);
  const SymbolSet sym = draw_symbol_set(c, 31);
  const CMat block = receive_block_at_ap(c, ch, bf, sym, 32);
  const CVec slot = receive_at_ap(c, ch, bf, sym, 4, 32);
  EXPECT_LT((block.col(4) - slot).norm(), 1e-12 * slot.norm());
  EXPECT_EQ(slot, receive_at_ap(c, ch, bf, sym, 4, 32));
}

}  // namespace
}  // namespace iscco
