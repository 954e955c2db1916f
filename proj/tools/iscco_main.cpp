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

// iscco: command line front end for sweeps, sensing evaluation, localization
// and single-instance solves. Exit codes: 0 success, 1 usage or input error,
// 2 infeasible instance, 3 solver failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "iscco/iscco.hpp"

namespace {

using namespace iscco;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitSolver = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::infeasible:
    case ErrorCode::no_feasible_sample:
    case ErrorCode::radar_power_exceeds_budget:
      return kExitInfeasible;
    case ErrorCode::solver_failure:
      return kExitSolver;
    default:
      return kExitUsage;
  }
}

struct CommonOptions {
  std::string scheme = "both";
  std::optional<std::string> scenario;
  int realizations = 10;
  std::uint64_t seed = 1;
  int samples = 50;
  int slots = 10000;
  std::string out = "-";
  std::string format = "csv";
  bool baseline = false;
  bool summary = false;
  bool timing = false;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--scheme", o.scheme, "shared, separated or both")
      ->check(CLI::IsMember({"shared", "separated", "both"}));
  app->add_option("--scenario", o.scenario, "scenario file with base parameters")
      ->check(CLI::ExistingFile);
  app->add_option("--realizations", o.realizations, "channel realizations per cell")
      ->check(CLI::PositiveNumber);
  app->add_option("--seed", o.seed, "root seed");
  app->add_option("--samples", o.samples, "Gaussian randomization samples")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--slots", o.slots, "slots for the simulated AirComp MSE (0 = skip)")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--out", o.out, "output path, '-' for stdout");
  app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_flag("--baseline", o.baseline, "also run the antenna-selection baselines");
  app->add_flag("--summary", o.summary, "print per-cell means to stderr");
  app->add_flag("--timing", o.timing, "include wall_time in the output");
}

/// Base configurations and options from the common flags. A scenario fixes the
/// scheme and every system parameter; --scheme then only has to agree with it.
std::vector<SystemConfig> bases_from(const CommonOptions& o, ExperimentOptions& opt) {
  opt.realizations = o.realizations;
  opt.seed = o.seed;
  opt.baselines = o.baseline;
  opt.n_samples = o.samples;
  opt.empirical_slots = o.slots;
  if (o.scenario) {
    const Scenario sc = load_scenario(*o.scenario);
    if (o.scheme != "both" && scheme_from_string(o.scheme) != sc.cfg.scheme)
      throw Error(ErrorCode::precondition,
                  "--scheme " + o.scheme + " conflicts with the scenario's scheme");
    opt.eta_factor = sc.eta_factor;
    opt.eta_auto = sc.eta_auto;
    return {sc.cfg};
  }
  std::vector<SystemConfig> bases;
  if (o.scheme != "separated") bases.push_back(default_config(Scheme::shared));
  if (o.scheme != "shared") bases.push_back(default_config(Scheme::separated));
  return bases;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::io_error, "cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error(ErrorCode::io_error, "write failed: " + path);
}

void finish(const std::vector<ExperimentRecord>& records, const CommonOptions& o) {
  write_text(o.out, format_records(records, output_format_from_string(o.format), o.timing));
  if (o.summary) std::cerr << format_summary(summarize(records));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// One instance: the channel draw and randomization seed of realization 0 of a
/// sweep with the same root seed.
int run_solve(const std::string& scenario_path, const std::optional<std::string>& dump,
              int samples, const std::optional<std::uint64_t>& seed_override,
              const std::string& out) {
  Scenario sc = load_scenario(scenario_path);
  if (sc.eta_auto) fill_auto_eta(sc.cfg, sc.eta_factor);
  const SystemConfig cfg = validate_config(sc.cfg);
  const std::uint64_t seed = seed_override.value_or(sc.seed);
  const std::uint64_t real_seed = derive_seed(seed, Stream::realization, {0});
  const ChannelSet ch = draw_channels(cfg, real_seed);

  if (dump) {
    const ConicProblem prob =
        cfg.scheme == Scheme::shared ? build_sdp_shared(cfg, ch) : build_sdp_separated(cfg, ch);
    std::ostringstream s;
    write_sdpa(s, prob);
    write_text(*dump, s.str());
  }

  const std::uint64_t tag = cfg.scheme == Scheme::shared ? 0 : 1;
  const DesignResult d =
      design_full(cfg, ch, samples, derive_seed(real_seed, Stream::randomization, {tag}));
  const AirCompReport rep = aircomp_mse_closed(cfg, ch, d.bf);
  double worst_sensing = 0.0;
  for (int m = 0; m < cfg.M; ++m)
    worst_sensing = std::max(worst_sensing,
                             sensing_mse_closed(radar_beamformer_of(cfg, d.bf, m), cfg));

  std::ostringstream s;
  s << "scheme = " << to_string(cfg.scheme) << '\n'
    << "seed = " << seed << '\n'
    << "status = " << to_string(d.sdp.status) << '\n'
    << "iterations = " << d.sdp.iterations << '\n'
    << "gap = " << fmt(d.sdp.gap) << '\n'
    << "sdr_bound = " << fmt(d.sdr_bound) << '\n'
    << "objective = " << fmt(d.objective) << '\n'
    << "feasible_candidates = " << d.feasible_candidates << '\n'
    << "a_norm = " << fmt(frobenius2(d.bf.A)) << '\n'
    << "mse_closed = " << fmt(rep.mse_closed) << '\n'
    << "mse_normalized = " << fmt(rep.mse_normalized) << '\n'
    << "misalignment_term = " << fmt(rep.misalignment_term) << '\n'
    << "radar_leak_term = " << fmt(rep.radar_leak_term) << '\n'
    << "noise_term = " << fmt(rep.noise_term) << '\n'
    << "sensing_mse_max = " << fmt(worst_sensing) << '\n'
    << "eta = " << fmt(cfg.eta.front()) << '\n';
  write_text(out, s.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iscco: beamforming design and experiments for integrated sensing and "
               "over-the-air computation"};
  app.require_subcommand(1);

  CommonOptions sweep_o;
  std::string var;
  std::vector<int> values;
  auto* sweep = app.add_subcommand("sweep", "sweep one system parameter");
  sweep->add_option("--var", var, "na, ns, m or k")
      ->required()
      ->check(CLI::IsMember({"na", "ns", "m", "k"}));
  sweep->add_option("--values", values, "values of the swept parameter")
      ->required()
      ->delimiter(',');
  add_common(sweep, sweep_o);

  CommonOptions eval_o;
  std::vector<int> eval_na{12, 15, 18}, eval_ns{6, 12};
  auto* eval = app.add_subcommand("sensing-eval", "achieved sensing MSE over an (Na, Ns) grid");
  eval->add_option("--na", eval_na, "AP antenna counts")->delimiter(',');
  eval->add_option("--ns", eval_ns, "sensor antenna counts")->delimiter(',');
  add_common(eval, eval_o);

  std::optional<std::string> geometry_path;
  double noise_dbm = -79.5;
  std::uint64_t loc_seed = 1;
  int loc_samples = 200;
  std::string loc_out = "-";
  auto* loc = app.add_subcommand("localize", "distributed target localization demo");
  loc->add_option("--geometry", geometry_path, "geometry file (default layout if omitted)")
      ->check(CLI::ExistingFile);
  loc->add_option("--noise-dbm", noise_dbm, "AirComp receiver noise power in dBm");
  loc->add_option("--seed", loc_seed, "root seed");
  loc->add_option("--samples", loc_samples, "Gaussian randomization samples")
      ->check(CLI::NonNegativeNumber);
  loc->add_option("--out", loc_out, "output path, '-' for stdout");

  std::string solve_scenario;
  std::optional<std::string> dump;
  std::optional<std::uint64_t> solve_seed;
  int solve_samples = 50;
  std::string solve_out = "-";
  auto* solve = app.add_subcommand("solve", "design beamformers for one scenario");
  solve->add_option("--scenario", solve_scenario, "scenario file")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--dump-conic", dump, "write the relaxed program in SDPA sparse format");
  solve->add_option("--seed", solve_seed, "root seed (overrides the scenario)");
  solve->add_option("--samples", solve_samples, "Gaussian randomization samples")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--out", solve_out, "output path, '-' for stdout");

  std::string def_scheme = "shared";
  bool def_geometry = false;
  auto* defaults = app.add_subcommand("defaults", "print the default scenario or geometry");
  defaults->add_option("--scheme", def_scheme, "shared or separated")
      ->check(CLI::IsMember({"shared", "separated"}));
  defaults->add_flag("--geometry", def_geometry, "print the localization geometry instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sweep) {
      ExperimentOptions opt;
      const auto bases = bases_from(sweep_o, opt);
      finish(run_sweep(bases, sweep_var_from_string(var), values, opt), sweep_o);
    } else if (*eval) {
      ExperimentOptions opt;
      const auto bases = bases_from(eval_o, opt);
      finish(run_sensing_eval(bases, eval_na, eval_ns, opt), eval_o);
    } else if (*loc) {
      const SystemConfig probe = localization_config();
      const Geometry g = geometry_path ? load_geometry(*geometry_path, probe.Ntx, probe.Nrx)
                                       : default_geometry(10, probe.Ntx, probe.Nrx);
      const SystemConfig cfg = localization_config(g.sensors());
      LocalizationOptions lo;
      lo.n_samples = loc_samples;
      const LocalizationResult res = run_localization_demo(g, cfg, noise_dbm, loc_seed, lo);
      write_text(loc_out, format_localization_csv(res, g));
    } else if (*solve) {
      return run_solve(solve_scenario, dump, solve_samples, solve_seed, solve_out);
    } else if (*defaults) {
      if (def_geometry) {
        const SystemConfig c = localization_config();
        write_geometry(std::cout, default_geometry(10, c.Ntx, c.Nrx));
      } else {
        Scenario sc;
        sc.cfg = default_config(scheme_from_string(def_scheme));
        write_scenario(std::cout, sc);
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "iscco: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "iscco: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "iscco: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
