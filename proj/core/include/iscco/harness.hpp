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
#include <string>
#include <vector>

#include "iscco/conic.hpp"
#include "iscco/localization.hpp"
#include "iscco/model.hpp"

namespace iscco {

enum class SweepVar { na, ns, m, k };

std::string to_string(SweepVar v);
SweepVar sweep_var_from_string(const std::string& s);

/// Copy of cfg with the swept quantity set to value. An ns sweep re-splits
/// the sensor array: shared Ntx = Ns/2, separated Nc = Ntx = Ns/3, in both
/// cases rounding down and giving the remainder to Nrx.
SystemConfig apply_sweep_value(const SystemConfig& cfg, SweepVar var, int value);

/// One (cell, scheme, method, realization) outcome.
struct ExperimentRecord {
  std::string sweep_variable;
  int value = 0;
  Scheme scheme = Scheme::shared;
  std::string method;  ///< "optimized" or "antenna-selection"
  int realization = 0;
  std::uint64_t seed = 0;  ///< realization seed (channels, symbols, noise)

  int M = 0, K = 0, Na = 0, Ns = 0, Ntx = 0, Nrx = 0, Nc = 0, T = 0;
  double P = 0.0, sigma_r2 = 0.0, sigma_c2 = 0.0, eta = 0.0;

  std::string status;   ///< solver status, or "failed"
  std::string failure;  ///< reason when status is "failed"

  double mse_closed = 0.0;
  double mse_empirical = 0.0;  ///< NaN when not simulated
  double mse_normalized = 0.0;
  double misalignment_term = 0.0;
  double radar_leak_term = 0.0;
  double noise_term = 0.0;
  double a_norm = 0.0;        ///< tr(A A^H)
  double sdr_bound = 0.0;     ///< relaxed optimum (optimized rows)
  double objective = 0.0;     ///< design objective at the returned A
  double solver_gap = 0.0;
  int solver_iterations = 0;
  std::vector<double> sensing_mse;  ///< closed form, per sensor
  double wall_time = 0.0;     ///< seconds; emitted only on request

  bool ok() const { return status != "failed"; }
  double sensing_mse_max() const;
  double sensing_mse_mean() const;
};

/// Field-wise equality; NaN compares equal to NaN.
bool same_record(const ExperimentRecord& a, const ExperimentRecord& b);

struct ExperimentOptions {
  int realizations = 10;
  std::uint64_t seed = 1;
  bool baselines = true;
  int n_samples = 50;           ///< randomization candidates
  int empirical_slots = 10000;  ///< 0 skips the simulated AirComp MSE
  double eta_factor = 2.0;
  bool eta_auto = true;         ///< recompute eta for every cell
  SolverOptions solver;
};

/// For every value x realization x base config: draw channels once, run the
/// optimized design and (optionally) the antenna-selection baseline on them,
/// and record closed-form and simulated metrics. Failures are recorded and
/// the sweep continues. The realization seed does not depend on the cell,
/// so nested configurations share channel entries.
std::vector<ExperimentRecord> run_sweep(const std::vector<SystemConfig>& bases, SweepVar var,
                                        const std::vector<int>& values,
                                        const ExperimentOptions& opt);

/// Sensing MSE achieved by the designs on an Na grid (at the base Ns) and
/// an Ns grid (at the base Na). eta is held fixed over the grid at the
/// auto value of the most demanding cell, so the separated scheme's
/// constant-MSE property is observable.
std::vector<ExperimentRecord> run_sensing_eval(const std::vector<SystemConfig>& bases,
                                               const std::vector<int>& na_values,
                                               const std::vector<int>& ns_values,
                                               const ExperimentOptions& opt);

/// Mean normalized AirComp MSE per (variable, value, scheme, method).
struct SummaryRow {
  std::string sweep_variable;
  int value = 0;
  Scheme scheme = Scheme::shared;
  std::string method;
  int n_ok = 0;
  int n_failed = 0;
  double mean_mse_normalized = 0.0;
  double mean_sensing_mse = 0.0;
};

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records);

/// Sort key order: variable, value, scheme, method, realization.
void sort_records(std::vector<ExperimentRecord>& records);

enum class OutputFormat { csv, json };

OutputFormat output_format_from_string(const std::string& s);

/// Column names of the CSV output, in order. wall_time is appended only
/// when timing is requested.
std::vector<std::string> csv_columns(bool timing = false);

/// Throws nonempty-required for an empty list.
std::string format_records(const std::vector<ExperimentRecord>& records, OutputFormat fmt,
                           bool timing = false);
std::vector<ExperimentRecord> parse_records_json(const std::string& text);
std::string format_summary(const std::vector<SummaryRow>& rows);

/// Writes format_records to path; throws io-error when it cannot.
void emit(const std::vector<ExperimentRecord>& records, OutputFormat fmt,
          const std::filesystem::path& path, bool timing = false);

/// Localization demo with the data-channel noise set to noise_dbm.
LocalizationResult run_localization_demo(const Geometry& g, const SystemConfig& cfg,
                                         double noise_dbm, std::uint64_t seed,
                                         const LocalizationOptions& opt = {});

/// Scatter-ready CSV: label,x,y rows for the truth, each sensor, the
/// aggregated estimate and the AoA baseline.
std::string format_localization_csv(const LocalizationResult& res, const Geometry& g);

}  // namespace iscco
