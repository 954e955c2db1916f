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

#include "iscco/scenario_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "iscco/error.hpp"

namespace iscco {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& context) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse_error, context + ": not a number: '" + t + "'");
  }
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  std::string piece;
  while (in >> piece) {
    std::istringstream sub(piece);
    while (std::getline(sub, token, ','))
      if (!trim(token).empty()) out.push_back(parse_double(token, "list"));
  }
  return out;
}

KeyValueFile KeyValueFile::parse(std::istream& in, const std::string& origin) {
  KeyValueFile kv;
  kv.origin_ = origin;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::parse_error,
                  origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw Error(ErrorCode::parse_error, origin + ":" + std::to_string(lineno) + ": empty key");
    if (!kv.values_.emplace(key, value).second)
      throw Error(ErrorCode::parse_error,
                  origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  return parse(in, path.string());
}

const std::string& KeyValueFile::raw(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end())
    throw Error(ErrorCode::parse_error, origin_ + ": missing key '" + key + "'");
  used_[key] = true;
  return it->second;
}

double KeyValueFile::number(const std::string& key) const {
  return parse_double(raw(key), origin_ + ": " + key);
}

long long KeyValueFile::integer(const std::string& key) const {
  const std::string& t = raw(key);
  long long v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw Error(ErrorCode::parse_error, origin_ + ": " + key + ": not an integer: '" + t + "'");
  return v;
}

std::vector<double> KeyValueFile::numbers(const std::string& key) const {
  return parse_number_list(raw(key));
}

std::vector<std::string> KeyValueFile::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_)
    if (!used_.count(k)) out.push_back(k);
  return out;
}

Scenario read_scenario(std::istream& in, const std::string& origin) {
  const KeyValueFile kv = KeyValueFile::parse(in, origin);
  Scenario sc;
  const Scheme scheme = kv.has("scheme") ? scheme_from_string(kv.raw("scheme")) : Scheme::shared;
  sc.cfg = default_config(scheme);
  SystemConfig& c = sc.cfg;

  auto int_key = [&](const char* key, int& field) {
    if (kv.has(key)) field = static_cast<int>(kv.integer(key));
  };
  int_key("M", c.M);
  int_key("K", c.K);
  int_key("Na", c.Na);
  int_key("Ns", c.Ns);
  int_key("Ntx", c.Ntx);
  int_key("Nrx", c.Nrx);
  int_key("Nc", c.Nc);
  int_key("T", c.T);

  auto power_key = [&](const char* key, double& field) {
    const std::string dbm = std::string(key) + "_dbm";
    if (kv.has(key) && kv.has(dbm))
      throw Error(ErrorCode::parse_error, origin + ": both " + key + " and " + dbm + " given");
    if (kv.has(key)) field = kv.number(key);
    if (kv.has(dbm)) field = dbm_to_watts(kv.number(dbm));
  };
  power_key("P", c.P);
  power_key("sigma_r2", c.sigma_r2);
  power_key("sigma_c2", c.sigma_c2);
  if (kv.has("rician_mean")) c.rician_mean = kv.number("rician_mean");
  if (kv.has("rician_var")) c.rician_var = kv.number("rician_var");
  if (kv.has("seed")) sc.seed = static_cast<std::uint64_t>(kv.integer("seed"));
  if (kv.has("eta_factor")) sc.eta_factor = kv.number("eta_factor");

  sc.eta_auto = true;
  if (kv.has("eta") && trim(kv.raw("eta")) != "auto") {
    sc.eta_auto = false;
    c.eta = kv.numbers("eta");
    if (c.eta.size() == 1 && c.M > 1) c.eta.assign(c.M, c.eta.front());
  }
  if (sc.eta_auto) fill_auto_eta(c, sc.eta_factor);

  if (const auto extra = kv.unused_keys(); !extra.empty())
    throw Error(ErrorCode::parse_error, origin + ": unknown key '" + extra.front() + "'");
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  return read_scenario(in, path.string());
}

void write_scenario(std::ostream& out, const Scenario& sc) {
  const SystemConfig& c = sc.cfg;
  out << "scheme = " << to_string(c.scheme) << '\n'
      << "M = " << c.M << '\n'
      << "K = " << c.K << '\n'
      << "Na = " << c.Na << '\n'
      << "Ns = " << c.Ns << '\n'
      << "Ntx = " << c.Ntx << '\n'
      << "Nrx = " << c.Nrx << '\n'
      << "Nc = " << c.Nc << '\n'
      << "T = " << c.T << '\n'
      << "P = " << fmt17(c.P) << '\n'
      << "sigma_r2 = " << fmt17(c.sigma_r2) << '\n'
      << "sigma_c2 = " << fmt17(c.sigma_c2) << '\n'
      << "rician_mean = " << fmt17(c.rician_mean) << '\n'
      << "rician_var = " << fmt17(c.rician_var) << '\n'
      << "eta = ";
  for (std::size_t i = 0; i < c.eta.size(); ++i) out << (i ? ", " : "") << fmt17(c.eta[i]);
  out << '\n' << "seed = " << sc.seed << '\n';
}

}  // namespace iscco
