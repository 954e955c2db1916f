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

#include "iscco/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "iscco/aircomp.hpp"
#include "iscco/beamform.hpp"
#include "iscco/error.hpp"
#include "iscco/rng.hpp"
#include "iscco/sensing.hpp"

namespace iscco {

namespace {

constexpr const char* kOptimized = "optimized";
constexpr const char* kBaseline = "antenna-selection";

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

ExperimentRecord blank_record(const SystemConfig& cfg, const std::string& var, int value,
                              const std::string& method, int realization, std::uint64_t seed) {
  ExperimentRecord r;
  r.sweep_variable = var;
  r.value = value;
  r.scheme = cfg.scheme;
  r.method = method;
  r.realization = realization;
  r.seed = seed;
  r.M = cfg.M;
  r.K = cfg.K;
  r.Na = cfg.Na;
  r.Ns = cfg.Ns;
  r.Ntx = cfg.Ntx;
  r.Nrx = cfg.Nrx;
  r.Nc = cfg.Nc;
  r.T = cfg.T;
  r.P = cfg.P;
  r.sigma_r2 = cfg.sigma_r2;
  r.sigma_c2 = cfg.sigma_c2;
  r.eta = cfg.eta.empty() ? std::numeric_limits<double>::quiet_NaN() : cfg.eta.front();
  r.mse_empirical = std::numeric_limits<double>::quiet_NaN();
  return r;
}

void mark_failed(ExperimentRecord& r, const std::string& why) {
  r.status = "failed";
  r.failure = why;
}

void fill_metrics(ExperimentRecord& r, const SystemConfig& cfg, const ChannelSet& ch,
                  const BeamformerSet& bf, const ExperimentOptions& opt, std::uint64_t emp_seed) {
  const AirCompReport rep = aircomp_mse_closed(cfg, ch, bf);
  r.mse_closed = rep.mse_closed;
  r.mse_normalized = rep.mse_normalized;
  r.misalignment_term = rep.misalignment_term;
  r.radar_leak_term = rep.radar_leak_term;
  r.noise_term = rep.noise_term;
  r.a_norm = frobenius2(bf.A);
  if (opt.empirical_slots > 0)
    r.mse_empirical = aircomp_mse_empirical(cfg, ch, bf, opt.empirical_slots, emp_seed);
  r.sensing_mse.clear();
  for (int m = 0; m < cfg.M; ++m) {
    double v = std::numeric_limits<double>::infinity();
    try {
      v = sensing_mse_closed(radar_beamformer_of(cfg, bf, m), cfg);
    } catch (const Error&) {
    }
    r.sensing_mse.push_back(v);
  }
}

/// Optimized design and baseline on one channel draw.
void run_cell(const SystemConfig& cfg_in, const std::string& var, int value, int realization,
              std::uint64_t real_seed, const ExperimentOptions& opt,
              std::vector<ExperimentRecord>& out) {
  const std::uint64_t scheme_tag = cfg_in.scheme == Scheme::shared ? 0 : 1;
  ExperimentRecord rec = blank_record(cfg_in, var, value, kOptimized, realization, real_seed);
  ExperimentRecord base = blank_record(cfg_in, var, value, kBaseline, realization, real_seed);
  SystemConfig cfg;
  try {
    cfg = validate_config(cfg_in);
  } catch (const Error& e) {
    mark_failed(rec, e.what());
    out.push_back(rec);
    if (opt.baselines) {
      mark_failed(base, e.what());
      out.push_back(base);
    }
    return;
  }
  const ChannelSet ch = draw_channels(cfg, real_seed);

  bool have_reference = false;
  double t0 = now_seconds();
  try {
    const DesignResult d =
        design_full(cfg, ch, opt.n_samples,
                    derive_seed(real_seed, Stream::randomization, {scheme_tag}), opt.solver);
    rec.status = to_string(d.sdp.status);
    rec.sdr_bound = d.sdr_bound;
    rec.objective = d.objective;
    rec.solver_gap = d.sdp.gap;
    rec.solver_iterations = d.sdp.iterations;
    fill_metrics(rec, cfg, ch, d.bf, opt,
                 derive_seed(real_seed, Stream::empirical, {scheme_tag, 0}));
    have_reference = true;
  } catch (const Error& e) {
    mark_failed(rec, e.what());
  }
  rec.wall_time = now_seconds() - t0;
  out.push_back(rec);

  if (!opt.baselines) return;
  t0 = now_seconds();
  if (!have_reference) {
    mark_failed(base, "no optimized design to match the aggregation norm");
  } else {
    try {
      const BeamformerSet bf = antenna_selection_baseline(cfg, ch, rec.a_norm);
      base.status = "baseline";
      base.objective = design_objective(cfg, ch, bf.A);
      fill_metrics(base, cfg, ch, bf, opt,
                   derive_seed(real_seed, Stream::empirical, {scheme_tag, 1}));
    } catch (const Error& e) {
      mark_failed(base, e.what());
    }
  }
  base.wall_time = now_seconds() - t0;
  out.push_back(base);
}

SystemConfig with_eta(SystemConfig cfg, const ExperimentOptions& opt) {
  if (opt.eta_auto) {
    fill_auto_eta(cfg, opt.eta_factor);
  } else {
    const double e = cfg.eta.empty() ? auto_eta(cfg, opt.eta_factor) : cfg.eta.front();
    cfg.eta.assign(std::max(cfg.M, 0), e);
  }
  return cfg;
}

}  // namespace

std::string to_string(SweepVar v) {
  switch (v) {
    case SweepVar::na: return "na";
    case SweepVar::ns: return "ns";
    case SweepVar::m: return "m";
    case SweepVar::k: return "k";
  }
  return "unknown";
}

SweepVar sweep_var_from_string(const std::string& s) {
  if (s == "na") return SweepVar::na;
  if (s == "ns") return SweepVar::ns;
  if (s == "m") return SweepVar::m;
  if (s == "k") return SweepVar::k;
  throw Error(ErrorCode::parse_error, "unknown sweep variable '" + s + "'");
}

SystemConfig apply_sweep_value(const SystemConfig& in, SweepVar var, int value) {
  SystemConfig cfg = in;
  switch (var) {
    case SweepVar::na: cfg.Na = value; break;
    case SweepVar::m: cfg.M = value; break;
    case SweepVar::k: cfg.K = value; break;
    case SweepVar::ns:
      cfg.Ns = value;
      if (cfg.scheme == Scheme::shared) {
        cfg.Nc = 0;
        cfg.Ntx = value / 2;
        cfg.Nrx = value - cfg.Ntx;
      } else {
        cfg.Nc = value / 3;
        cfg.Ntx = value / 3;
        cfg.Nrx = value - 2 * (value / 3);
      }
      break;
  }
  return cfg;
}

double ExperimentRecord::sensing_mse_max() const {
  double v = 0.0;
  for (double s : sensing_mse) v = std::max(v, s);
  return sensing_mse.empty() ? std::numeric_limits<double>::quiet_NaN() : v;
}

double ExperimentRecord::sensing_mse_mean() const {
  double v = 0.0;
  for (double s : sensing_mse) v += s;
  return sensing_mse.empty() ? std::numeric_limits<double>::quiet_NaN()
                             : v / static_cast<double>(sensing_mse.size());
}

bool same_record(const ExperimentRecord& a, const ExperimentRecord& b) {
  auto eq = [](double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; };
  if (a.sensing_mse.size() != b.sensing_mse.size()) return false;
  for (std::size_t i = 0; i < a.sensing_mse.size(); ++i)
    if (!eq(a.sensing_mse[i], b.sensing_mse[i])) return false;
  return a.sweep_variable == b.sweep_variable && a.value == b.value && a.scheme == b.scheme &&
         a.method == b.method && a.realization == b.realization && a.seed == b.seed &&
         a.M == b.M && a.K == b.K && a.Na == b.Na && a.Ns == b.Ns && a.Ntx == b.Ntx &&
         a.Nrx == b.Nrx && a.Nc == b.Nc && a.T == b.T && eq(a.P, b.P) &&
         eq(a.sigma_r2, b.sigma_r2) && eq(a.sigma_c2, b.sigma_c2) && eq(a.eta, b.eta) &&
         a.status == b.status && a.failure == b.failure && eq(a.mse_closed, b.mse_closed) &&
         eq(a.mse_empirical, b.mse_empirical) && eq(a.mse_normalized, b.mse_normalized) &&
         eq(a.misalignment_term, b.misalignment_term) &&
         eq(a.radar_leak_term, b.radar_leak_term) && eq(a.noise_term, b.noise_term) &&
         eq(a.a_norm, b.a_norm) && eq(a.sdr_bound, b.sdr_bound) && eq(a.objective, b.objective) &&
         eq(a.solver_gap, b.solver_gap) && a.solver_iterations == b.solver_iterations &&
         eq(a.wall_time, b.wall_time);
}

std::vector<ExperimentRecord> run_sweep(const std::vector<SystemConfig>& bases, SweepVar var,
                                        const std::vector<int>& values,
                                        const ExperimentOptions& opt) {
  std::vector<ExperimentRecord> out;
  for (int value : values)
    for (int r = 0; r < opt.realizations; ++r) {
      const std::uint64_t real_seed =
          derive_seed(opt.seed, Stream::realization, {std::uint64_t(r)});
      for (const SystemConfig& base : bases)
        run_cell(with_eta(apply_sweep_value(base, var, value), opt), to_string(var), value, r,
                 real_seed, opt, out);
    }
  sort_records(out);
  return out;
}

std::vector<ExperimentRecord> run_sensing_eval(const std::vector<SystemConfig>& bases,
                                               const std::vector<int>& na_values,
                                               const std::vector<int>& ns_values,
                                               const ExperimentOptions& opt) {
  std::vector<ExperimentRecord> out;
  for (const SystemConfig& base : bases) {
    std::vector<std::pair<SweepVar, int>> cells;
    for (int v : na_values) cells.emplace_back(SweepVar::na, v);
    for (int v : ns_values) cells.emplace_back(SweepVar::ns, v);
    // Fixed threshold: the loosest auto value over the grid keeps every cell feasible.
    double eta = 0.0;
    for (const auto& [var, v] : cells)
      eta = std::max(eta, auto_eta(apply_sweep_value(base, var, v), opt.eta_factor));
    if (!opt.eta_auto && !base.eta.empty()) eta = base.eta.front();
    for (const auto& [var, v] : cells)
      for (int r = 0; r < opt.realizations; ++r) {
        SystemConfig cfg = apply_sweep_value(base, var, v);
        cfg.eta.assign(std::max(cfg.M, 0), eta);
        const std::uint64_t real_seed =
            derive_seed(opt.seed, Stream::realization, {std::uint64_t(r)});
        run_cell(cfg, to_string(var), v, r, real_seed, opt, out);
      }
  }
  sort_records(out);
  return out;
}

void sort_records(std::vector<ExperimentRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) {
                     return std::make_tuple(a.sweep_variable, a.value, int(a.scheme), a.method,
                                            a.realization) <
                            std::make_tuple(b.sweep_variable, b.value, int(b.scheme), b.method,
                                            b.realization);
                   });
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
  std::map<std::tuple<std::string, int, int, std::string>, SummaryRow> groups;
  for (const auto& r : records) {
    SummaryRow& row = groups[{r.sweep_variable, r.value, int(r.scheme), r.method}];
    row.sweep_variable = r.sweep_variable;
    row.value = r.value;
    row.scheme = r.scheme;
    row.method = r.method;
    if (!r.ok()) {
      ++row.n_failed;
      continue;
    }
    ++row.n_ok;
    row.mean_mse_normalized += r.mse_normalized;
    row.mean_sensing_mse += r.sensing_mse_mean();
  }
  std::vector<SummaryRow> out;
  for (auto& [key, row] : groups) {
    if (row.n_ok > 0) {
      row.mean_mse_normalized /= row.n_ok;
      row.mean_sensing_mse /= row.n_ok;
    } else {
      row.mean_mse_normalized = row.mean_sensing_mse = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(row);
  }
  return out;
}

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw Error(ErrorCode::parse_error, "unknown output format '" + s + "'");
}

std::vector<std::string> csv_columns(bool timing) {
  std::vector<std::string> cols = {
      "sweep_variable", "value", "scheme", "method", "realization", "seed", "M", "K", "Na", "Ns",
      "Ntx", "Nrx", "Nc", "T", "P", "sigma_r2", "sigma_c2", "eta", "status", "failure",
      "mse_closed", "mse_empirical", "mse_normalized", "misalignment_term", "radar_leak_term",
      "noise_term", "a_norm", "sdr_bound", "objective", "solver_gap", "solver_iterations",
      "sensing_mse_mean", "sensing_mse_max", "sensing_mse"};
  if (timing) cols.push_back("wall_time");
  return cols;
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

using nlohmann::json;

// JSON has no NaN or infinity: NaN becomes null, infinities the strings "inf"/"-inf".
json num(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double from_num(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string())
    return (j.get<std::string>() == "-inf" ? -1.0 : 1.0) * std::numeric_limits<double>::infinity();
  return j.get<double>();
}

json to_json(const ExperimentRecord& r, bool timing) {
  json j;
  j["sweep_variable"] = r.sweep_variable;
  j["value"] = r.value;
  j["scheme"] = to_string(r.scheme);
  j["method"] = r.method;
  j["realization"] = r.realization;
  j["seed"] = r.seed;
  j["M"] = r.M;
  j["K"] = r.K;
  j["Na"] = r.Na;
  j["Ns"] = r.Ns;
  j["Ntx"] = r.Ntx;
  j["Nrx"] = r.Nrx;
  j["Nc"] = r.Nc;
  j["T"] = r.T;
  j["P"] = num(r.P);
  j["sigma_r2"] = num(r.sigma_r2);
  j["sigma_c2"] = num(r.sigma_c2);
  j["eta"] = num(r.eta);
  j["status"] = r.status;
  j["failure"] = r.failure;
  j["mse_closed"] = num(r.mse_closed);
  j["mse_empirical"] = num(r.mse_empirical);
  j["mse_normalized"] = num(r.mse_normalized);
  j["misalignment_term"] = num(r.misalignment_term);
  j["radar_leak_term"] = num(r.radar_leak_term);
  j["noise_term"] = num(r.noise_term);
  j["a_norm"] = num(r.a_norm);
  j["sdr_bound"] = num(r.sdr_bound);
  j["objective"] = num(r.objective);
  j["solver_gap"] = num(r.solver_gap);
  j["solver_iterations"] = r.solver_iterations;
  json s = json::array();
  for (double v : r.sensing_mse) s.push_back(num(v));
  j["sensing_mse"] = s;
  if (timing) j["wall_time"] = num(r.wall_time);
  return j;
}

ExperimentRecord from_json(const json& j) {
  ExperimentRecord r;
  r.sweep_variable = j.at("sweep_variable").get<std::string>();
  r.value = j.at("value").get<int>();
  r.scheme = scheme_from_string(j.at("scheme").get<std::string>());
  r.method = j.at("method").get<std::string>();
  r.realization = j.at("realization").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.M = j.at("M").get<int>();
  r.K = j.at("K").get<int>();
  r.Na = j.at("Na").get<int>();
  r.Ns = j.at("Ns").get<int>();
  r.Ntx = j.at("Ntx").get<int>();
  r.Nrx = j.at("Nrx").get<int>();
  r.Nc = j.at("Nc").get<int>();
  r.T = j.at("T").get<int>();
  r.P = from_num(j.at("P"));
  r.sigma_r2 = from_num(j.at("sigma_r2"));
  r.sigma_c2 = from_num(j.at("sigma_c2"));
  r.eta = from_num(j.at("eta"));
  r.status = j.at("status").get<std::string>();
  r.failure = j.at("failure").get<std::string>();
  r.mse_closed = from_num(j.at("mse_closed"));
  r.mse_empirical = from_num(j.at("mse_empirical"));
  r.mse_normalized = from_num(j.at("mse_normalized"));
  r.misalignment_term = from_num(j.at("misalignment_term"));
  r.radar_leak_term = from_num(j.at("radar_leak_term"));
  r.noise_term = from_num(j.at("noise_term"));
  r.a_norm = from_num(j.at("a_norm"));
  r.sdr_bound = from_num(j.at("sdr_bound"));
  r.objective = from_num(j.at("objective"));
  r.solver_gap = from_num(j.at("solver_gap"));
  r.solver_iterations = j.at("solver_iterations").get<int>();
  for (const auto& v : j.at("sensing_mse")) r.sensing_mse.push_back(from_num(v));
  if (j.contains("wall_time")) r.wall_time = from_num(j.at("wall_time"));
  return r;
}

}  // namespace

std::string format_records(const std::vector<ExperimentRecord>& records, OutputFormat fmt,
                           bool timing) {
  if (records.empty()) throw Error(ErrorCode::nonempty_required, "no records to emit");
  if (fmt == OutputFormat::json) {
    json doc;
    doc["format"] = "iscco-records";
    doc["version"] = 1;
    json arr = json::array();
    for (const auto& r : records) arr.push_back(to_json(r, timing));
    doc["records"] = arr;
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  const auto cols = csv_columns(timing);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : records) {
    std::string sens;
    for (std::size_t i = 0; i < r.sensing_mse.size(); ++i) sens += (i ? ";" : "") + g17(r.sensing_mse[i]);
    out << r.sweep_variable << ',' << r.value << ',' << to_string(r.scheme) << ',' << r.method
        << ',' << r.realization << ',' << r.seed << ',' << r.M << ',' << r.K << ',' << r.Na << ','
        << r.Ns << ',' << r.Ntx << ',' << r.Nrx << ',' << r.Nc << ',' << r.T << ',' << g17(r.P)
        << ',' << g17(r.sigma_r2) << ',' << g17(r.sigma_c2) << ',' << g17(r.eta) << ','
        << csv_quote(r.status) << ',' << csv_quote(r.failure) << ',' << g17(r.mse_closed) << ','
        << g17(r.mse_empirical) << ',' << g17(r.mse_normalized) << ','
        << g17(r.misalignment_term) << ',' << g17(r.radar_leak_term) << ','
        << g17(r.noise_term) << ',' << g17(r.a_norm) << ',' << g17(r.sdr_bound) << ','
        << g17(r.objective) << ',' << g17(r.solver_gap) << ',' << r.solver_iterations << ','
        << g17(r.sensing_mse_mean()) << ',' << g17(r.sensing_mse_max()) << ',' << sens;
    if (timing) out << ',' << g17(r.wall_time);
    out << '\n';
  }
  return out.str();
}

std::vector<ExperimentRecord> parse_records_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("records json: ") + e.what());
  }
  std::vector<ExperimentRecord> out;
  try {
    for (const auto& j : doc.at("records")) out.push_back(from_json(j));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("records json: ") + e.what());
  }
  return out;
}

std::string format_summary(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "sweep_variable,value,scheme,method,n_ok,n_failed,mean_mse_normalized,mean_sensing_mse\n";
  for (const auto& r : rows)
    out << r.sweep_variable << ',' << r.value << ',' << to_string(r.scheme) << ',' << r.method
        << ',' << r.n_ok << ',' << r.n_failed << ',' << g17(r.mean_mse_normalized) << ','
        << g17(r.mean_sensing_mse) << '\n';
  return out.str();
}

void emit(const std::vector<ExperimentRecord>& records, OutputFormat fmt,
          const std::filesystem::path& path, bool timing) {
  const std::string text = format_records(records, fmt, timing);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

LocalizationResult run_localization_demo(const Geometry& g, const SystemConfig& cfg,
                                         double noise_dbm, std::uint64_t seed,
                                         const LocalizationOptions& opt) {
  SystemConfig c = cfg;
  c.sigma_c2 = dbm_to_watts(noise_dbm);
  return run_localization(c, g, seed, opt);
}

std::string format_localization_csv(const LocalizationResult& res, const Geometry& g) {
  std::ostringstream out;
  out << "label,x,y\n";
  out << "truth," << g17(g.target.x) << ',' << g17(g.target.y) << '\n';
  for (std::size_t m = 0; m < res.locals.size(); ++m)
    out << "sensor_" << m << ',' << g17(res.locals[m].position.x) << ','
        << g17(res.locals[m].position.y) << '\n';
  out << "aggregated," << g17(res.aggregated.x) << ',' << g17(res.aggregated.y) << '\n';
  out << "aoa," << g17(res.aoa.x) << ',' << g17(res.aoa.y) << '\n';
  return out.str();
}

}  // namespace iscco
