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

#include <cmath>
#include <numbers>
#include <sstream>

#include "../support/test_support.hpp"

namespace iscco {
namespace {

using std::numbers::pi;
using testing::random_cmat;

// One sensor, one transmit antenna at y = 0 and one receive antenna at y = ry.
Geometry single_pair(double ry) {
  Geometry g;
  g.sensor_origin_y = {0.0};
  g.sensor_antenna_y = {{0.0, ry}};
  return g;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::precondition;
}

TEST(PhaseDelay, HandExamples) {
  EXPECT_NEAR(std::abs(phase_delay_matrix(single_pair(0.05), 0, 0.0, 1, 1)(0, 0) - cx(1, 0)), 0.0,
              1e-15);
  // Half-wavelength path at broadside end-fire: exp(-j pi/2) = -j.
  const cx v = phase_delay_matrix(single_pair(0.05), 0, pi / 2, 1, 1)(0, 0);
  EXPECT_NEAR(v.real(), 0.0, 1e-15);
  EXPECT_NEAR(v.imag(), -1.0, 1e-15);
}

TEST(PhaseDelay, EntriesMatchDirectFormula) {
  const Geometry g = default_geometry(3, 2, 3, 0.1);
  const double th = 0.37;
  const CMat phi = phase_delay_matrix(g, 1, th, 2, 3);
  ASSERT_EQ(phi.rows(), 3);
  ASSERT_EQ(phi.cols(), 2);
  const auto& y = g.sensor_antenna_y[1];
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 2; ++q) {
      const double ph = -2.0 * pi * (y[2 + p] + y[q]) * std::sin(th) / g.wavelength;
      EXPECT_NEAR(std::abs(phi(p, q) - std::polar(1.0, ph)), 0.0, 1e-12);
    }
  const cx beta(0.3, -1.2);
  EXPECT_NEAR((synth_trm(g, 1, beta, th, 2, 3) - beta * phi).norm(), 0.0, 1e-15);
}

TEST(BetaHat, RecoversReflectionFromNoiselessResponse) {
  const Geometry g = default_geometry(2, 2, 2);
  std::mt19937_64 r(1);
  const CMat W = random_cmat(r, 2, 2);
  const cx beta = std::polar(0.7, 2.1);
  const CMat G = synth_trm(g, 1, beta, -0.4, 2, 2);
  EXPECT_NEAR(std::abs(beta_hat(G, W, g, 1, -0.4) - beta), 0.0, 1e-12);
  EXPECT_EQ(code_of([&] { beta_hat(G, CMat::Zero(2, 2), g, 1, -0.4); }),
            ErrorCode::zero_denominator);
}

TEST(ThetaHat, OnGridTruthIsReturnedExactly) {
  const Geometry g = default_geometry(1, 2, 2);
  std::mt19937_64 r(2);
  const CMat W = random_cmat(r, 2, 2);
  const auto grid = default_theta_grid();
  ASSERT_EQ(grid.size(), 2001u);
  EXPECT_NEAR(grid.front(), -pi / 2 + 1e-3, 1e-15);
  EXPECT_NEAR(grid.back(), pi / 2 - 1e-3, 1e-15);
  for (std::size_t i : {300u, 1000u, 1622u}) {
    const CMat G = synth_trm(g, 0, cx(0.5, 0.5), grid[i], 2, 2);
    EXPECT_EQ(theta_hat(G, W, g, 0, grid, false), grid[i]);
    EXPECT_NEAR(theta_hat(G, W, g, 0, grid, true), grid[i], 1e-5);
  }
}

TEST(ThetaHat, RefinementResolvesOffGridTruth) {
  const Geometry g = default_geometry(1, 2, 2);
  std::mt19937_64 r(3);
  const CMat W = random_cmat(r, 2, 2);
  const auto grid = default_theta_grid();
  for (double th : {0.5403, -0.2718, 1.1}) {
    const CMat G = synth_trm(g, 0, cx(1.0, 0.0), th, 2, 2);
    EXPECT_LT(std::abs(theta_hat(G, W, g, 0, grid, true) - th), 1e-4) << th;
  }
}

TEST(ThetaHat, GridResultMaximizesObjectiveOverGrid) {
  const Geometry g = default_geometry(1, 2, 2);
  std::mt19937_64 r(4);
  const CMat W = random_cmat(r, 2, 2);
  const CMat G = random_cmat(r, 2, 2);
  const auto grid = default_theta_grid(401);
  const double th = theta_hat(G, W, g, 0, grid, false);
  const double best = angle_objective(G, W, g, 0, th);
  for (double t : grid) EXPECT_LE(angle_objective(G, W, g, 0, t), best);
  EXPECT_GE(angle_objective(G, W, g, 0, theta_hat(G, W, g, 0, grid, true)), best);
}

TEST(ThetaHat, InvariantToResponseScaling) {
  const Geometry g = default_geometry(1, 2, 2);
  std::mt19937_64 r(5);
  const CMat W = random_cmat(r, 2, 2);
  const CMat G = random_cmat(r, 2, 2);
  const auto grid = default_theta_grid();
  const cx c = std::polar(3.7, 0.9);
  const double th = theta_hat(G, W, g, 0, grid);
  EXPECT_NEAR(theta_hat(CMat(c * G), W, g, 0, grid), th, 1e-9);
  EXPECT_NEAR(std::abs(beta_hat(CMat(c * G), W, g, 0, th) - c * beta_hat(G, W, g, 0, th)), 0.0,
              1e-12);
  EXPECT_EQ(code_of([&] { theta_hat(G, W, g, 0, {}); }), ErrorCode::precondition);
}

TEST(LocalPosition, HandExamplesAndRoundTrip) {
  const Geometry g = default_geometry();
  const Position a = local_position(0.0, 10.0, g, 0);
  EXPECT_DOUBLE_EQ(a.x, 0.0);
  EXPECT_DOUBLE_EQ(a.y, 10.0);
  const Position b = local_position(pi / 2, 4.0, g, 3);
  EXPECT_NEAR(b.x, 4.0, 1e-15);
  EXPECT_NEAR(b.y, 6.0, 1e-12);
  for (int m = 0; m < g.sensors(); ++m) {
    const Position s = g.sensor_position(m);
    const double th = std::atan((g.target.x - s.x) / (g.target.y - s.y));
    const Position p = local_position(th, distance(s, g.target), g, m);
    EXPECT_NEAR(p.x, g.target.x, 1e-12);
    EXPECT_NEAR(p.y, g.target.y, 1e-12);
  }
}

TEST(Modulation, ReferenceMapsToZeroAndSumInverts) {
  const Position z = modulate({5.0, 30.0}, 5.0, 30.0);
  EXPECT_EQ(z.x, 0.0);
  EXPECT_EQ(z.y, 0.0);
  const std::vector<Position> pts = {{4.9, 30.2}, {5.3, 29.5}, {5.0, 31.0}};
  Position sum;
  double mx = 0.0, my = 0.0;
  for (const auto& p : pts) {
    const Position s = modulate(p, 5.0, 30.0);
    sum.x += s.x;
    sum.y += s.y;
    mx += p.x / 3.0;
    my += p.y / 3.0;
  }
  const Position back = demodulate(sum, 5.0, 30.0, 3);
  EXPECT_NEAR(back.x, mx, 1e-12);
  EXPECT_NEAR(back.y, my, 1e-12);
}

std::vector<Position> positions(const Geometry& g) {
  std::vector<Position> out;
  for (int m = 0; m < g.sensors(); ++m) out.push_back(g.sensor_position(m));
  return out;
}

std::vector<double> true_angles(const Geometry& g, const Position& t) {
  std::vector<double> out;
  for (const auto& s : positions(g)) out.push_back(std::atan((t.x - s.x) / (t.y - s.y)));
  return out;
}

TEST(AoaBaseline, TruthOnGridIsFoundExactly) {
  Geometry g = default_geometry();
  g.aoa_step = 0.05;
  const Position t{4.25, 27.5};
  const Position p = aoa_baseline(true_angles(g, t), positions(g), g);
  EXPECT_NEAR(p.x, t.x, 1e-9);
  EXPECT_NEAR(p.y, t.y, 1e-9);
}

TEST(AoaBaseline, OffGridResultBeatsCellsAroundTruth) {
  // Range is poorly conditioned for sensors on one line, so the check is on
  // the angle residual rather than on distance to the truth.
  Geometry g = default_geometry();
  g.aoa_step = 0.05;
  const Position t{6.1234, 33.3333};
  auto th = true_angles(g, t);
  for (std::size_t m = 0; m < th.size(); ++m) th[m] += (m % 2 ? 1e-5 : -1e-5);
  auto residual = [&](const Position& p) {
    double f = 0.0;
    const auto a = true_angles(g, p);
    for (std::size_t m = 0; m < th.size(); ++m) f += (th[m] - a[m]) * (th[m] - a[m]);
    return f;
  };
  const Position p = aoa_baseline(th, positions(g), g);
  const double x0 = std::floor(t.x / g.aoa_step) * g.aoa_step;
  const double y0 = std::floor(t.y / g.aoa_step) * g.aoa_step;
  for (double dx : {0.0, g.aoa_step})
    for (double dy : {0.0, g.aoa_step}) EXPECT_LE(residual(p), residual({x0 + dx, y0 + dy}));
  EXPECT_LT(distance(p, t), 0.5);
}

TEST(AoaBaseline, NeedsTwoSensors) {
  const Geometry g = default_geometry(1);
  EXPECT_EQ(code_of([&] { aoa_baseline({0.1}, positions(g), g); }), ErrorCode::precondition);
}

TEST(Geometry, DefaultLayout) {
  const Geometry g = default_geometry();
  ASSERT_EQ(g.sensors(), 10);
  EXPECT_DOUBLE_EQ(g.sensor_origin_y[9], 18.0);
  ASSERT_EQ(g.sensor_antenna_y[4].size(), 4u);
  EXPECT_NEAR(g.sensor_antenna_y[4][3] - g.sensor_antenna_y[4][0], 0.3, 1e-12);
  EXPECT_NO_THROW(validate_geometry(g));
}

TEST(Geometry, ValidationRejectsBadInput) {
  Geometry g = default_geometry(2);
  g.sensor_antenna_y[1] = {1.0, 0.5, 2.0, 3.0};
  EXPECT_EQ(code_of([&] { validate_geometry(g); }), ErrorCode::precondition);
  g = default_geometry(2);
  g.wavelength = 0.0;
  EXPECT_EQ(code_of([&] { validate_geometry(g); }), ErrorCode::precondition);
  g = default_geometry(2);
  g.sensor_origin_y.push_back(9.0);
  EXPECT_EQ(code_of([&] { validate_geometry(g); }), ErrorCode::precondition);
}

TEST(Geometry, FileRoundTripAndUnknownKey) {
  Geometry g = default_geometry(3);
  g.target = {4.0, 25.0};
  g.xbar = 4.5;
  g.ap_path_gain_db = -40.0;
  std::stringstream ss;
  write_geometry(ss, g);
  const Geometry back = read_geometry(ss, 2, 2);
  EXPECT_EQ(back.sensor_antenna_y, g.sensor_antenna_y);
  EXPECT_EQ(back.sensor_origin_y, g.sensor_origin_y);
  EXPECT_EQ(back.target.x, 4.0);
  EXPECT_EQ(back.xbar, 4.5);
  EXPECT_EQ(back.ybar, g.ybar);
  EXPECT_EQ(back.ap_path_gain_db, -40.0);

  std::istringstream bad("sensor_y = 0, 2\nfrobnicate = 1\n");
  EXPECT_EQ(code_of([&] { read_geometry(bad, 2, 2); }), ErrorCode::parse_error);
  std::istringstream offs("sensor_y = 0, 2\nantenna_spacing = 0.05\n");
  const Geometry s = read_geometry(offs, 1, 2);
  EXPECT_NEAR(s.sensor_antenna_y[1][2], 2.1, 1e-12);
}

TEST(RunLocalization, NoiselessPipelineIsConsistent) {
  const SystemConfig cfg = localization_config();
  const Geometry g = default_geometry();
  LocalizationOptions opt;
  opt.sensing_noise = false;
  opt.aircomp_noise = false;
  const LocalizationResult r = run_localization(cfg, g, 11, opt);
  ASSERT_EQ(r.locals.size(), 10u);
  Position mean;
  for (int m = 0; m < 10; ++m) {
    const Position s = g.sensor_position(m);
    EXPECT_NEAR(r.true_theta[m], std::atan((g.target.x - s.x) / (g.target.y - s.y)), 1e-12);
    // Only the finite-T symbol covariance perturbs the angle here.
    EXPECT_LT(std::abs(r.locals[m].theta_hat - r.true_theta[m]), 0.02);
    EXPECT_NEAR(std::abs(r.locals[m].beta_hat), g.reflection_gain, 0.1);
    mean.x += r.locals[m].position.x / 10.0;
    mean.y += r.locals[m].position.y / 10.0;
  }
  // With K = Ntx the zero-forcing transmitters align exactly, so noiseless
  // AirComp returns the mean of the local positions.
  EXPECT_NEAR(r.aggregated.x, mean.x, 1e-6);
  EXPECT_NEAR(r.aggregated.y, mean.y, 1e-6);
  EXPECT_LT(distance(r.aoa, g.target), 1.0);
}

TEST(RunLocalization, AggregateBeatsWorstSensorInNinetyPercentOfSeeds) {
  const SystemConfig cfg = localization_config();
  const Geometry g = default_geometry();
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const LocalizationResult r = run_localization_demo(g, cfg, -79.5, seed);
    double worst = 0.0;
    for (const auto& le : r.locals) worst = std::max(worst, distance(le.position, g.target));
    wins += distance(r.aggregated, g.target) < worst;
  }
  EXPECT_GE(wins, 45);
}

TEST(RunLocalization, DeterministicAndRejectsBadSetups) {
  const SystemConfig cfg = localization_config();
  const Geometry g = default_geometry();
  const LocalizationResult a = run_localization(cfg, g, 3);
  const LocalizationResult b = run_localization(cfg, g, 3);
  EXPECT_EQ(a.aggregated.x, b.aggregated.x);
  EXPECT_EQ(a.aggregated.y, b.aggregated.y);
  EXPECT_EQ(code_of([&] { run_localization(cfg, default_geometry(4), 3); }),
            ErrorCode::dimension_mismatch);
  SystemConfig sep = default_config(Scheme::separated);
  EXPECT_EQ(code_of([&] { run_localization(sep, g, 3); }), ErrorCode::precondition);
}

}  // namespace
}  // namespace iscco
