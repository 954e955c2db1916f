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

#include <iosfwd>
#include <string>
#include <vector>

#include "iscco/linalg.hpp"

namespace iscco {

// Linear conic programs over complex Hermitian matrix variables.
//
// A variable Y (n x n Hermitian) is parametrized by n^2 real coordinates:
// the n diagonal entries, then for every pair a < b the real and the
// imaginary part of Y(a, b). Constraints are linear matrix inequalities
// on real symmetric blocks,
//
//   constant + sum_t coef_t * map_t * embed(Y_var(t)) * map_t^T  >= 0,
//
// where each term lands on a chosen subset of block rows, and scalar
// inequalities on Re tr(weight * Y). The objective Re sum tr(weight * Y) is
// minimized.

enum class Relation { le, ge };

enum class ConicStatus { optimal, infeasible, unbounded, max_iter };

std::string to_string(ConicStatus s);

/// Which program a ConicProblem encodes; only used for reporting.
enum class Provenance { generic, shared_p4, separated_p8 };

std::string to_string(Provenance p);

struct HermitianVariable {
  std::string name;
  int n = 0;
};

struct LmiTerm {
  int var = 0;
  double coef = 1.0;
  RMat map;               ///< rows.size() x 2n; empty means identity
  std::vector<int> rows;  ///< block rows receiving the term; empty means 0..2n-1
};

struct LmiBlock {
  std::string name;
  int size = 0;  ///< real dimension
  RMat constant;  ///< size x size, symmetric; empty means zero
  std::vector<LmiTerm> terms;
};

/// Re tr(weight * Y_var); weight is n x n Hermitian.
struct LinearTerm {
  int var = 0;
  CMat weight;
};

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Relation rel = Relation::le;
  double bound = 0.0;
};

struct ConicProblem {
  Provenance provenance = Provenance::generic;
  std::vector<HermitianVariable> variables;
  std::vector<LinearTerm> objective;  ///< minimized
  std::vector<LmiBlock> psd_blocks;
  std::vector<LinearConstraint> linear_constraints;

  // Unit conversion back to the caller's problem.
  double objective_scale = 1.0;  ///< reported objective = scale * internal
  double ahat_scale = 1.0;       ///< Ahat = ahat_scale * Y[ahat_var]
  int ahat_var = 0;

  int add_variable(std::string name, int n);
  int num_coordinates() const;
  /// Throws shape-error when a term references a missing variable or has
  /// inconsistent dimensions.
  void check() const;
};

struct SolverOptions {
  double tol = 1e-9;             ///< relative primal/dual residual and gap
  double tol_infeasible = 1e-8;  ///< certificate accuracy
  double tol_inaccurate = 1e-6;  ///< accepted as optimal when the solver stalls
  int max_iter = 100;
};

struct ConicSolution {
  ConicStatus status = ConicStatus::max_iter;
  std::vector<CMat> variables;  ///< internal units
  CMat Ahat;                    ///< ahat_scale * variables[ahat_var]
  double objective_value = 0.0;  ///< caller units
  double dual_bound = 0.0;       ///< caller units; lower bound at optimality
  double gap = 0.0;              ///< relative duality gap
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double max_constraint_violation = 0.0;  ///< relative, see constraint_violation()
  int iterations = 0;
};

/// Homogeneous self-dual interior-point method (HKM direction with a
/// Mehrotra predictor-corrector). Deterministic for a given problem.
ConicSolution solve_conic(const ConicProblem& problem, const SolverOptions& opt = {});
ConicSolution solve_conic(const ConicProblem& problem, double tol);

/// Hermitian coordinate maps.
CMat hermitian_from_coords(const double* coords, int n);
RVec coords_from_hermitian(const CMat& y);

/// Internal objective value at the given variables.
double evaluate_objective(const ConicProblem& problem, const std::vector<CMat>& vars);

/// Largest relative violation: for an LMI block, max(0, -lambda_min) over
/// max(1, ||constant||_2); for a linear row, the excess over max(1, |bound|).
double constraint_violation(const ConicProblem& problem, const std::vector<CMat>& vars);

/// Value of an LMI block at the given variables.
RMat evaluate_block(const ConicProblem& problem, int block, const std::vector<CMat>& vars);

/// SDPA sparse format (".dat-s"): minimize c^T x subject to
/// sum_i x_i F_i - F_0 >= 0, one real coordinate per x_i, linear rows as a
/// diagonal block. Indices are 1-based; only upper triangles are written.
void write_sdpa(std::ostream& out, const ConicProblem& problem);

}  // namespace iscco
