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

#include "iscco/linalg.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "iscco/error.hpp"

namespace iscco {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::nonpositive_parameter: return "nonpositive-parameter";
    case ErrorCode::singular_beamformer: return "singular-beamformer";
    case ErrorCode::singular_equalizer: return "singular-equalizer";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::no_feasible_sample: return "no-feasible-sample";
    case ErrorCode::radar_power_exceeds_budget: return "radar-power-exceeds-budget";
    case ErrorCode::shape_error: return "shape-error";
    case ErrorCode::zero_denominator: return "zero-denominator";
    case ErrorCode::solver_failure: return "solver-failure";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::nonempty_required: return "nonempty-required";
    case ErrorCode::precondition: return "precondition";
  }
  return "unknown";
}

namespace {
std::string join_violations(const std::vector<Violation>& v) {
  std::string out;
  for (const auto& item : v) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(item.code)) + ": " + item.message;
  }
  return out;
}
}  // namespace

ConfigError::ConfigError(std::vector<Violation> violations)
    : Error(violations.empty() ? ErrorCode::precondition : violations.front().code,
            join_violations(violations)),
      violations_(std::move(violations)) {}

RMat embed(const CMat& a) {
  const auto r = a.rows();
  const auto c = a.cols();
  RMat out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = a.real();
  out.topRightCorner(r, c) = -a.imag();
  out.bottomLeftCorner(r, c) = a.imag();
  out.bottomRightCorner(r, c) = a.real();
  return out;
}

CMat unembed(const RMat& r) {
  const auto n = r.rows() / 2;
  const auto m = r.cols() / 2;
  const RMat re = 0.5 * (r.topLeftCorner(n, m) + r.bottomRightCorner(n, m));
  const RMat im = 0.5 * (r.bottomLeftCorner(n, m) - r.topRightCorner(n, m));
  CMat out(n, m);
  out.real() = re;
  out.imag() = im;
  return out;
}

CMat hermitian_part(const CMat& a) { return 0.5 * (a + a.adjoint()); }

std::optional<CMat> hpd_inverse(const CMat& a, double cap) {
  if (a.rows() != a.cols() || a.rows() == 0) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a));
  if (es.info() != Eigen::Success) return std::nullopt;
  const RVec& ev = es.eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (!(lo > 0.0) || hi / lo > cap) return std::nullopt;
  const RVec inv = ev.cwiseInverse();
  return CMat(es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint());
}

double hermitian_condition(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return es.eigenvalues().maxCoeff() / lo;
}

ClippedEigen clipped_eigen(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a));
  return {es.eigenvalues().cwiseMax(0.0), es.eigenvectors()};
}

int numerical_rank(const CMat& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(a);
  const RVec& s = svd.singularValues();
  if (s(0) <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

CMat unitary_dft(int n) {
  CMat f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      // reduce r*c mod n first so large products keep full phase accuracy
      const double phase = -2.0 * std::numbers::pi * static_cast<double>((r * c) % n) / n;
      f(r, c) = std::polar(scale, phase);
    }
  return f;
}

double frobenius2(const CMat& a) { return a.squaredNorm(); }

}  // namespace iscco
