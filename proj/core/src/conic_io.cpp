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

#include <cmath>
#include <cstdio>
#include <ostream>

#include "iscco/conic.hpp"

namespace iscco {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_sdpa(std::ostream& out, const ConicProblem& problem) {
  problem.check();
  const int p = problem.num_coordinates();
  const int nlp = static_cast<int>(problem.linear_constraints.size());
  const int nblk = static_cast<int>(problem.psd_blocks.size()) + (nlp > 0 ? 1 : 0);

  std::vector<int> offset;
  int acc = 0;
  for (const auto& v : problem.variables) {
    offset.push_back(acc);
    acc += v.n * v.n;
  }
  auto unit_vars = [&](int var, int k) {
    std::vector<CMat> vars;
    for (const auto& v : problem.variables) vars.push_back(CMat::Zero(v.n, v.n));
    RVec coords = RVec::Zero(problem.variables[var].n * problem.variables[var].n);
    coords[k] = 1.0;
    vars[var] = hermitian_from_coords(coords.data(), problem.variables[var].n);
    return vars;
  };

  out << "\"iscco " << to_string(problem.provenance) << ": minimize c'x s.t. sum x_i F_i - F_0 >= 0\n";
  out << "\"objective_scale " << g17(problem.objective_scale) << " ahat_scale "
      << g17(problem.ahat_scale) << '\n';
  out << p << '\n' << nblk << '\n';
  for (const auto& b : problem.psd_blocks) out << b.size << ' ';
  if (nlp > 0) out << -nlp;
  out << '\n';

  std::vector<CMat> zero;
  for (const auto& v : problem.variables) zero.push_back(CMat::Zero(v.n, v.n));
  std::vector<double> cvec(p, 0.0);
  for (std::size_t var = 0; var < problem.variables.size(); ++var)
    for (int k = 0; k < problem.variables[var].n * problem.variables[var].n; ++k)
      cvec[offset[var] + k] = evaluate_objective(problem, unit_vars(static_cast<int>(var), k));
  for (int i = 0; i < p; ++i) out << g17(cvec[i]) << (i + 1 < p ? ' ' : '\n');

  auto emit_matrix = [&](int matno, int blkno, const RMat& m, double sign) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index q = r; q < m.cols(); ++q)
        if (m(r, q) != 0.0)
          out << matno << ' ' << blkno << ' ' << r + 1 << ' ' << q + 1 << ' ' << g17(sign * m(r, q))
              << '\n';
  };
  auto lp_values = [&](const std::vector<CMat>& vars, bool with_bound) {
    RVec vals(nlp);
    for (int l = 0; l < nlp; ++l) {
      const auto& lc = problem.linear_constraints[l];
      double val = 0.0;
      for (const auto& t : lc.terms) val += (t.weight * vars[t.var]).trace().real();
      if (with_bound) val = -lc.bound;
      // Stored as bound - a.x >= 0 (le) or a.x - bound >= 0 (ge).
      vals[l] = lc.rel == Relation::le ? -val : val;
    }
    return vals;
  };

  // F_0 = -constant.
  for (std::size_t j = 0; j < problem.psd_blocks.size(); ++j)
    emit_matrix(0, static_cast<int>(j) + 1, evaluate_block(problem, static_cast<int>(j), zero), -1.0);
  if (nlp > 0) {
    const RVec f0 = lp_values(zero, true);
    for (int l = 0; l < nlp; ++l)
      if (f0[l] != 0.0) out << 0 << ' ' << nblk << ' ' << l + 1 << ' ' << l + 1 << ' ' << g17(-f0[l]) << '\n';
  }
  for (std::size_t var = 0; var < problem.variables.size(); ++var) {
    for (int k = 0; k < problem.variables[var].n * problem.variables[var].n; ++k) {
      const auto vars = unit_vars(static_cast<int>(var), k);
      const int matno = offset[var] + k + 1;
      for (std::size_t j = 0; j < problem.psd_blocks.size(); ++j) {
        const RMat fi = evaluate_block(problem, static_cast<int>(j), vars) -
                        evaluate_block(problem, static_cast<int>(j), zero);
        emit_matrix(matno, static_cast<int>(j) + 1, fi, 1.0);
      }
      if (nlp > 0) {
        const RVec fi = lp_values(vars, false);
        for (int l = 0; l < nlp; ++l)
          if (fi[l] != 0.0)
            out << matno << ' ' << nblk << ' ' << l + 1 << ' ' << l + 1 << ' ' << g17(fi[l]) << '\n';
      }
    }
  }
}

}  // namespace iscco
