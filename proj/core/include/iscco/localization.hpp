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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "iscco/beamform.hpp"
#include "iscco/model.hpp"

namespace iscco {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Position& a, const Position& b);

/// Sensor layout for the localization use case. Sensors sit on the y axis
/// at (0, sensor_origin_y[m]); angles are measured from the y axis towards
/// +x. The first Ntx antenna coordinates of a sensor are its transmit
/// antennas, the next Nrx its receive antennas.
struct Geometry {
  std::vector<std::vector<double>> sensor_antenna_y;
  std::vector<double> sensor_origin_y;
  double wavelength = 0.2;
  Position target{5.0, 30.0};
  double xbar = 5.0;  ///< modulation reference, defaults to the target
  double ybar = 30.0;
  double reflection_gain = 1.0;  ///< |beta_m|; the phase is drawn per sensor
  /// Large-scale power gain (dB) of every sensor-to-AP channel H_m. The
  /// default is the free-space gain 20 log10(lambda / (4 pi d)) of an AP
  /// about 10 m away at lambda = 0.2 m.
  double ap_path_gain_db = -56.0;
  // Search area of the AoA baseline grid.
  double aoa_x_min = 0.0, aoa_x_max = 10.0;
  double aoa_y_min = 20.0, aoa_y_max = 40.0;
  double aoa_step = 0.02;

  int sensors() const { return static_cast<int>(sensor_origin_y.size()); }
  Position sensor_position(int m) const { return {0.0, sensor_origin_y.at(m)}; }
};

/// Throws precondition when antenna coordinates are not strictly increasing,
/// the wavelength is not positive or the lists disagree in length.
void validate_geometry(const Geometry& g);

/// Ten sensors at y = 0, 2, ..., 18 m with antennas every `spacing` metres
/// (Ntx + Nrx per sensor), wavelength 0.2 m, target (5, 30) m.
Geometry default_geometry(int sensors = 10, int ntx = 2, int nrx = 2, double spacing = 0.1);

/// Key = value geometry file, see the README for the keys.
Geometry read_geometry(std::istream& in, int ntx, int nrx, const std::string& origin = "<stream>");
Geometry load_geometry(const std::filesystem::path& path, int ntx, int nrx);
void write_geometry(std::ostream& out, const Geometry& g);

/// Phi(theta)(p, q) = exp(-2 pi j (y_rx[p] + y_tx[q]) sin(theta) / lambda),
/// an Nrx x Ntx matrix.
CMat phase_delay_matrix(const Geometry& g, int m, double theta, int ntx, int nrx);

/// G = beta * Phi(theta).
CMat synth_trm(const Geometry& g, int m, cx beta, double theta, int ntx, int nrx);

/// tr(W^H Phi^H Ghat W) / tr(W^H Phi^H Phi W). Throws zero-denominator.
cx beta_hat(const CMat& Ghat, const CMat& W, const Geometry& g, int m, double theta);

/// |tr(W^H Phi^H Ghat W)|^2 / tr(W^H Phi^H Phi W).
double angle_objective(const CMat& Ghat, const CMat& W, const Geometry& g, int m, double theta);

/// 2001 uniform angles on [-pi/2 + 1e-3, pi/2 - 1e-3].
std::vector<double> default_theta_grid(int points = 2001);

/// Grid maximizer of angle_objective (ties to the smaller angle), optionally
/// refined by golden-section search on the neighbouring cells to 1e-5 rad.
double theta_hat(const CMat& Ghat, const CMat& W, const Geometry& g, int m,
                 const std::vector<double>& grid, bool refine = true);

/// (d sin theta, y_1 + d cos theta).
Position local_position(double theta, double d, const Geometry& g, int m);

/// (x / xbar - 1, y / ybar - 1).
Position modulate(const Position& p, double xbar, double ybar);

/// Inverse of modulate applied to the mean of M summed symbols.
Position demodulate(const Position& received_sum, double xbar, double ybar, int M);

/// 2-D grid minimizer of sum_m |theta_m - atan((x0 - x_m) / (y0 - y_m))|^2;
/// ties go to the lexicographically smaller (x0, y0). Needs >= 2 sensors.
Position aoa_baseline(const std::vector<double>& theta_hats,
                      const std::vector<Position>& sensors, const Geometry& g);

struct LocalEstimate {
  double theta_hat = 0.0;
  cx beta_hat{0.0, 0.0};
  double d = 0.0;
  Position position;
  Position symbols;
};

struct LocalizationOptions {
  int n_samples = 200;          ///< randomization candidates for the design
  bool sensing_noise = true;
  bool aircomp_noise = true;
  std::vector<double> theta_grid = default_theta_grid();
  bool refine = true;
};

struct LocalizationResult {
  std::vector<LocalEstimate> locals;
  Position aggregated;
  Position aoa;
  std::vector<double> true_theta;
};

/// Per-sensor sensing (single-sensor echo model with G_mm = beta Phi), angle
/// and position estimates, AirComp of the modulated positions through the
/// designed shared beamformers, and the AoA baseline on the same angles.
LocalizationResult run_localization(const SystemConfig& cfg, const Geometry& g,
                                    std::uint64_t seed, const LocalizationOptions& opt = {});

/// Configuration of the localization demo: shared scheme, M sensors,
/// K = Ntx = Nrx = 2, Na = 15, default powers. With Ntx = K a rank-K
/// aggregation beamformer must keep every H_m^H A A^H H_m well conditioned,
/// which the default factor-2 threshold rarely allows; the demo uses a
/// looser sensing threshold (eta_factor).
SystemConfig localization_config(int M = 10, double eta_factor = 10.0);

}  // namespace iscco
