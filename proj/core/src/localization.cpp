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

#include "iscco/localization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>

#include "iscco/error.hpp"
#include "iscco/rng.hpp"
#include "iscco/scenario_io.hpp"
#include "iscco/sensing.hpp"

namespace iscco {

namespace {

constexpr double kPi = std::numbers::pi;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + g17(v[i]);
  return s;
}

}  // namespace

double distance(const Position& a, const Position& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void validate_geometry(const Geometry& g) {
  auto fail = [](const std::string& w) { throw Error(ErrorCode::precondition, "geometry: " + w); };
  if (!(g.wavelength > 0.0)) fail("wavelength must be positive");
  if (g.sensor_antenna_y.size() != g.sensor_origin_y.size())
    fail("one antenna list per sensor origin required");
  for (const auto& ant : g.sensor_antenna_y) {
    if (ant.empty()) fail("sensor without antennas");
    for (std::size_t i = 1; i < ant.size(); ++i)
      if (!(ant[i] > ant[i - 1])) fail("antenna coordinates must be strictly increasing");
  }
  if (!(g.xbar > 0.0) || !(g.ybar > 0.0)) fail("xbar and ybar must be positive");
  if (!(g.aoa_step > 0.0) || g.aoa_x_max < g.aoa_x_min || g.aoa_y_max < g.aoa_y_min)
    fail("bad AoA grid");
}

Geometry default_geometry(int sensors, int ntx, int nrx, double spacing) {
  Geometry g;
  for (int m = 0; m < sensors; ++m) {
    const double y0 = 2.0 * m;
    g.sensor_origin_y.push_back(y0);
    std::vector<double> ant;
    for (int k = 0; k < ntx + nrx; ++k) ant.push_back(y0 + spacing * k);
    g.sensor_antenna_y.push_back(ant);
  }
  return g;
}

Geometry read_geometry(std::istream& in, int ntx, int nrx, const std::string& origin) {
  const KeyValueFile kv = KeyValueFile::parse(in, origin);
  Geometry g;
  if (kv.has("wavelength")) g.wavelength = kv.number("wavelength");
  if (kv.has("target")) {
    const auto t = kv.numbers("target");
    if (t.size() != 2) throw Error(ErrorCode::parse_error, origin + ": target needs x, y");
    g.target = {t[0], t[1]};
  }
  g.xbar = kv.has("xbar") ? kv.number("xbar") : g.target.x;
  g.ybar = kv.has("ybar") ? kv.number("ybar") : g.target.y;
  if (kv.has("reflection_gain")) g.reflection_gain = kv.number("reflection_gain");
  if (kv.has("ap_path_gain_db")) g.ap_path_gain_db = kv.number("ap_path_gain_db");
  if (kv.has("aoa_grid")) {
    const auto a = kv.numbers("aoa_grid");
    if (a.size() != 5)
      throw Error(ErrorCode::parse_error, origin + ": aoa_grid needs xmin, xmax, ymin, ymax, step");
    g.aoa_x_min = a[0];
    g.aoa_x_max = a[1];
    g.aoa_y_min = a[2];
    g.aoa_y_max = a[3];
    g.aoa_step = a[4];
  }
  g.sensor_origin_y = kv.numbers("sensor_y");
  std::vector<double> offsets;
  if (kv.has("antenna_offsets")) offsets = kv.numbers("antenna_offsets");
  else {
    const double spacing = kv.has("antenna_spacing") ? kv.number("antenna_spacing") : 0.1;
    for (int k = 0; k < ntx + nrx; ++k) offsets.push_back(spacing * k);
  }
  for (std::size_t m = 0; m < g.sensor_origin_y.size(); ++m) {
    const std::string key = "antennas_" + std::to_string(m);
    if (kv.has(key)) {
      g.sensor_antenna_y.push_back(kv.numbers(key));
    } else {
      std::vector<double> ant;
      for (double o : offsets) ant.push_back(g.sensor_origin_y[m] + o);
      g.sensor_antenna_y.push_back(ant);
    }
    if (static_cast<int>(g.sensor_antenna_y.back().size()) != ntx + nrx)
      throw Error(ErrorCode::parse_error,
                  origin + ": sensor " + std::to_string(m) + " needs Ntx + Nrx antennas");
  }
  if (const auto extra = kv.unused_keys(); !extra.empty())
    throw Error(ErrorCode::parse_error, origin + ": unknown key '" + extra.front() + "'");
  validate_geometry(g);
  return g;
}

Geometry load_geometry(const std::filesystem::path& path, int ntx, int nrx) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  return read_geometry(in, ntx, nrx, path.string());
}

void write_geometry(std::ostream& out, const Geometry& g) {
  out << "wavelength = " << g17(g.wavelength) << '\n'
      << "target = " << g17(g.target.x) << ", " << g17(g.target.y) << '\n'
      << "xbar = " << g17(g.xbar) << '\n'
      << "ybar = " << g17(g.ybar) << '\n'
      << "reflection_gain = " << g17(g.reflection_gain) << '\n'
      << "ap_path_gain_db = " << g17(g.ap_path_gain_db) << '\n'
      << "aoa_grid = " << join({g.aoa_x_min, g.aoa_x_max, g.aoa_y_min, g.aoa_y_max, g.aoa_step})
      << '\n'
      << "sensor_y = " << join(g.sensor_origin_y) << '\n';
  for (std::size_t m = 0; m < g.sensor_antenna_y.size(); ++m)
    out << "antennas_" << m << " = " << join(g.sensor_antenna_y[m]) << '\n';
}

CMat phase_delay_matrix(const Geometry& g, int m, double theta, int ntx, int nrx) {
  const auto& ant = g.sensor_antenna_y.at(m);
  if (static_cast<int>(ant.size()) < ntx + nrx)
    throw Error(ErrorCode::dimension_mismatch, "phase_delay_matrix: too few antenna coordinates");
  const double k = 2.0 * kPi / g.wavelength * std::sin(theta);
  CMat phi(nrx, ntx);
  for (int p = 0; p < nrx; ++p)
    for (int q = 0; q < ntx; ++q) phi(p, q) = std::polar(1.0, -k * (ant[ntx + p] + ant[q]));
  return phi;
}

CMat synth_trm(const Geometry& g, int m, cx beta, double theta, int ntx, int nrx) {
  return beta * phase_delay_matrix(g, m, theta, ntx, nrx);
}

namespace {

struct AngleTerms {
  cx num;
  double den;
};

AngleTerms angle_terms(const CMat& Ghat, const CMat& W, const Geometry& g, int m, double theta) {
  const CMat phi = phase_delay_matrix(g, m, theta, static_cast<int>(W.rows()),
                                      static_cast<int>(Ghat.rows()));
  const CMat phiW = phi * W;
  return {(phiW.adjoint() * Ghat * W).trace(), phiW.squaredNorm()};
}

}  // namespace

cx beta_hat(const CMat& Ghat, const CMat& W, const Geometry& g, int m, double theta) {
  const AngleTerms t = angle_terms(Ghat, W, g, m, theta);
  if (!(t.den > 0.0)) throw Error(ErrorCode::zero_denominator, "beta_hat: tr(W^H Phi^H Phi W) = 0");
  return t.num / t.den;
}

double angle_objective(const CMat& Ghat, const CMat& W, const Geometry& g, int m, double theta) {
  const AngleTerms t = angle_terms(Ghat, W, g, m, theta);
  return t.den > 0.0 ? std::norm(t.num) / t.den : 0.0;
}

std::vector<double> default_theta_grid(int points) {
  std::vector<double> grid(points);
  const double lo = -kPi / 2 + 1e-3, hi = kPi / 2 - 1e-3;
  for (int i = 0; i < points; ++i)
    grid[i] = points == 1 ? 0.0 : lo + (hi - lo) * i / (points - 1);
  return grid;
}

double theta_hat(const CMat& Ghat, const CMat& W, const Geometry& g, int m,
                 const std::vector<double>& grid, bool refine) {
  if (grid.empty()) throw Error(ErrorCode::precondition, "theta_hat: empty grid");
  auto f = [&](double th) { return angle_objective(Ghat, W, g, m, th); };
  std::size_t best = 0;
  double fbest = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v > fbest) {
      fbest = v;
      best = i;
    }
  }
  if (!refine || grid.size() < 2) return grid[best];

  // Golden-section search on the two cells around the grid maximizer.
  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[best + 1 == grid.size() ? best : best + 1];
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-5) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  const double th = 0.5 * (a + b);
  return f(th) >= fbest ? th : grid[best];
}

Position local_position(double theta, double d, const Geometry& g, int m) {
  return {d * std::sin(theta), g.sensor_origin_y.at(m) + d * std::cos(theta)};
}

Position modulate(const Position& p, double xbar, double ybar) {
  return {p.x / xbar - 1.0, p.y / ybar - 1.0};
}

Position demodulate(const Position& s, double xbar, double ybar, int M) {
  return {(s.x / M + 1.0) * xbar, (s.y / M + 1.0) * ybar};
}

Position aoa_baseline(const std::vector<double>& theta_hats, const std::vector<Position>& sensors,
                      const Geometry& g) {
  if (sensors.size() < 2 || theta_hats.size() != sensors.size())
    throw Error(ErrorCode::precondition, "aoa_baseline: needs one angle per sensor and >= 2 sensors");
  const long nx = std::lround(std::floor((g.aoa_x_max - g.aoa_x_min) / g.aoa_step + 1e-9)) + 1;
  const long ny = std::lround(std::floor((g.aoa_y_max - g.aoa_y_min) / g.aoa_step + 1e-9)) + 1;
  Position best{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  double fbest = std::numeric_limits<double>::infinity();
  for (long i = 0; i < nx; ++i) {
    const double x0 = g.aoa_x_min + i * g.aoa_step;
    for (long j = 0; j < ny; ++j) {
      const double y0 = g.aoa_y_min + j * g.aoa_step;
      double f = 0.0;
      bool ok = true;
      for (std::size_t m = 0; m < sensors.size(); ++m) {
        const double dy = y0 - sensors[m].y;
        if (dy == 0.0) {
          ok = false;
          break;
        }
        const double e = theta_hats[m] - std::atan((x0 - sensors[m].x) / dy);
        f += e * e;
      }
      if (ok && f < fbest) {
        fbest = f;
        best = {x0, y0};
      }
    }
  }
  return best;
}

SystemConfig localization_config(int M, double eta_factor) {
  SystemConfig cfg = default_config(Scheme::shared);
  cfg.M = M;
  cfg.K = 2;
  cfg.Ntx = 2;
  cfg.Nrx = 2;
  cfg.Ns = 4;
  cfg.Na = 15;
  fill_auto_eta(cfg, eta_factor);
  return cfg;
}

LocalizationResult run_localization(const SystemConfig& cfg_in, const Geometry& g,
                                    std::uint64_t seed, const LocalizationOptions& opt) {
  const SystemConfig cfg = validate_config(cfg_in);
  validate_geometry(g);
  if (cfg.scheme != Scheme::shared)
    throw Error(ErrorCode::precondition, "run_localization: shared scheme required");
  if (g.sensors() != cfg.M)
    throw Error(ErrorCode::dimension_mismatch, "run_localization: geometry sensor count != M");
  if (cfg.K != 2) throw Error(ErrorCode::precondition, "run_localization: K = 2 carries (x, y)");

  ChannelSet ch = draw_channels(cfg, derive_seed(seed, Stream::localization, {1}));
  const double amp = std::pow(10.0, g.ap_path_gain_db / 20.0);
  for (auto& h : ch.H) h *= amp;
  const BeamformerSet bf =
      design(cfg, ch, opt.n_samples, derive_seed(seed, Stream::localization, {2}));

  LocalizationResult res;
  std::vector<Position> sensors;
  const std::uint64_t sense_seed = derive_seed(seed, Stream::localization, {3});
  const SymbolSet sym = draw_symbol_set(cfg, sense_seed);
  Engine phase_eng = make_engine(seed, Stream::localization, {4});
  ReceiveOptions ropt;
  ropt.interference = false;
  ropt.noise = opt.sensing_noise;
  for (int m = 0; m < cfg.M; ++m) {
    const Position s = g.sensor_position(m);
    sensors.push_back(s);
    const double theta = std::atan2(g.target.x - s.x, g.target.y - s.y);
    res.true_theta.push_back(theta);
    const double phase = std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(phase_eng);
    ch.G[m][m] = synth_trm(g, m, std::polar(g.reflection_gain, phase), theta, cfg.Ntx, cfg.Nrx);

    const CMat y = receive_block_at_sensor(cfg, ch, bf, sym, m, sense_seed, ropt);
    const TrmEstimate est = mle_trm(matched_filter(y, sym.radar[m].values, m), bf.W[m]);

    LocalEstimate le;
    le.theta_hat = theta_hat(est.Ghat, bf.W[m], g, m, opt.theta_grid, opt.refine);
    le.beta_hat = beta_hat(est.Ghat, bf.W[m], g, m, le.theta_hat);
    le.d = distance(s, g.target);
    le.position = local_position(le.theta_hat, le.d, g, m);
    le.symbols = modulate(le.position, g.xbar, g.ybar);
    res.locals.push_back(le);
  }

  // One AirComp slot carrying (x_m, y_m) from every sensor.
  SystemConfig one = cfg;
  one.T = 1;
  SymbolSet tx;
  for (const auto& le : res.locals) {
    CMat v(2, 1);
    v << le.symbols.x, le.symbols.y;
    tx.radar.push_back({v});
  }
  const CVec z = receive_at_ap(one, ch, bf, tx, 0, derive_seed(seed, Stream::localization, {5}),
                               opt.aircomp_noise);
  res.aggregated = demodulate({z[0].real(), z[1].real()}, g.xbar, g.ybar, cfg.M);

  std::vector<double> thetas;
  for (const auto& le : res.locals) thetas.push_back(le.theta_hat);
  res.aoa = aoa_baseline(thetas, sensors, g);
  return res;
}

}  // namespace iscco
