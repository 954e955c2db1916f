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

#include <complex>
#include <optional>

#include <Eigen/Dense>

namespace iscco {

using cx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Condition-number cap above which a Gram matrix is treated as singular.
inline constexpr double kConditionCap = 1e12;

/// Real embedding of a complex matrix: [[Re, -Im], [Im, Re]]. It is a
/// *-homomorphism, so embed(A B) = embed(A) embed(B) and embed(A^H) =
/// embed(A)^T; a Hermitian matrix is PSD iff its embedding is.
RMat embed(const CMat& a);

/// Inverse of embed() for matrices with the embedded structure. Averages the
/// redundant copies, so it also projects a slightly perturbed embedding.
CMat unembed(const RMat& r);

/// Hermitian part (A + A^H) / 2.
CMat hermitian_part(const CMat& a);

/// Inverse of a Hermitian positive definite matrix, or nullopt when its
/// condition number exceeds `cap` or it is not positive definite.
std::optional<CMat> hpd_inverse(const CMat& a, double cap = kConditionCap);

/// Ratio of extreme eigenvalues of a Hermitian matrix; +inf when the
/// smallest is not positive.
double hermitian_condition(const CMat& a);

/// Eigenvalues of a Hermitian matrix with negative ones clipped to zero,
/// returned with the matching eigenvectors (ascending order).
struct ClippedEigen {
  RVec values;
  CMat vectors;
};
ClippedEigen clipped_eigen(const CMat& a);

/// Numerical rank via singular values relative to the largest.
int numerical_rank(const CMat& a, double rel_tol = 1e-10);

/// Unitary DFT matrix of size n: F(r, c) = exp(-2 pi j r c / n) / sqrt(n).
CMat unitary_dft(int n);

double frobenius2(const CMat& a);

}  // namespace iscco
