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

#include "iscco/conic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iscco/error.hpp"

namespace iscco {

std::string to_string(ConicStatus s) {
  switch (s) {
    case ConicStatus::optimal: return "optimal";
    case ConicStatus::infeasible: return "infeasible";
    case ConicStatus::unbounded: return "unbounded";
    case ConicStatus::max_iter: return "max-iter";
  }
  return "unknown";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::generic: return "generic";
    case Provenance::shared_p4: return "shared-P4";
    case Provenance::separated_p8: return "separated-P8";
  }
  return "unknown";
}

int ConicProblem::add_variable(std::string name, int n) {
  variables.push_back({std::move(name), n});
  return static_cast<int>(variables.size()) - 1;
}

int ConicProblem::num_coordinates() const {
  int p = 0;
  for (const auto& v : variables) p += v.n * v.n;
  return p;
}

void ConicProblem::check() const {
  const int nv = static_cast<int>(variables.size());
  auto bad = [](const std::string& what) { throw Error(ErrorCode::shape_error, what); };
  auto check_weight = [&](const LinearTerm& t, const std::string& where) {
    if (t.var < 0 || t.var >= nv) bad(where + ": unknown variable");
    const int n = variables[t.var].n;
    if (t.weight.rows() != n || t.weight.cols() != n) bad(where + ": weight size");
  };
  for (const auto& t : objective) check_weight(t, "objective");
  for (const auto& c : linear_constraints)
    for (const auto& t : c.terms) check_weight(t, "constraint " + c.name);
  for (const auto& b : psd_blocks) {
    if (b.size <= 0) bad("block " + b.name + ": size");
    if (b.constant.size() != 0 && (b.constant.rows() != b.size || b.constant.cols() != b.size))
      bad("block " + b.name + ": constant size");
    for (const auto& t : b.terms) {
      if (t.var < 0 || t.var >= nv) bad("block " + b.name + ": unknown variable");
      const int n2 = 2 * variables[t.var].n;
      const Eigen::Index rows = t.rows.empty() ? n2 : static_cast<Eigen::Index>(t.rows.size());
      if (t.map.size() != 0 && (t.map.rows() != rows || t.map.cols() != n2))
        bad("block " + b.name + ": map shape");
      if (t.map.size() == 0 && rows != n2) bad("block " + b.name + ": identity map needs 2n rows");
      for (int r : t.rows)
        if (r < 0 || r >= b.size) bad("block " + b.name + ": row out of range");
    }
  }
}

CMat hermitian_from_coords(const double* y, int n) {
  CMat out(n, n);
  int k = 0;
  for (int a = 0; a < n; ++a) out(a, a) = y[k++];
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const cx v(y[k], y[k + 1]);
      k += 2;
      out(a, b) = v;
      out(b, a) = std::conj(v);
    }
  return out;
}

RVec coords_from_hermitian(const CMat& y) {
  const int n = static_cast<int>(y.rows());
  RVec out(n * n);
  int k = 0;
  for (int a = 0; a < n; ++a) out[k++] = y(a, a).real();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const cx v = 0.5 * (y(a, b) + std::conj(y(b, a)));
      out[k++] = v.real();
      out[k++] = v.imag();
    }
  return out;
}

namespace {

struct BasisEntry {
  int r, c;
  double v;
};

/// Embedded (2n x 2n) basis matrices of the Hermitian coordinates.
std::vector<std::vector<BasisEntry>> embedded_basis(int n) {
  std::vector<std::vector<BasisEntry>> basis;
  basis.reserve(n * n);
  for (int a = 0; a < n; ++a) basis.push_back({{a, a, 1.0}, {n + a, n + a, 1.0}});
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      basis.push_back({{a, b, 1.0}, {b, a, 1.0}, {n + a, n + b, 1.0}, {n + b, n + a, 1.0}});
      basis.push_back({{a, n + b, -1.0}, {b, n + a, 1.0}, {n + a, b, 1.0}, {n + b, a, -1.0}});
    }
  return basis;
}

/// Coefficients of Re tr(W Y) with respect to the coordinates of Y.
RVec linear_coefficients(const CMat& w) {
  const int n = static_cast<int>(w.rows());
  RVec out(n * n);
  int k = 0;
  for (int a = 0; a < n; ++a) out[k++] = w(a, a).real();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      out[k++] = (w(a, b) + w(b, a)).real();
      out[k++] = w(a, b).imag() - w(b, a).imag();
    }
  return out;
}

RMat embedded_from_coords(const double* y, int n) { return embed(hermitian_from_coords(y, n)); }

struct Term {
  int var;
  double coef;
  RMat map;  // rows x 2n (identity materialized)
  std::vector<int> rows;
};

struct Block {
  int size;
  RMat C;
  std::vector<Term> terms;
};

struct Var {
  int n;
  int offset;
  std::vector<std::vector<BasisEntry>> basis;
};

/// Problem in the form: maximize b^T y s.t. C - A^T y = S >= 0, with the
/// linear rows as c_lp - A_lp y >= 0. A_i is minus the term sum.
struct Compiled {
  int p = 0;
  std::vector<Var> vars;
  std::vector<Block> blocks;
  RMat Alp;
  RVec clp;
  RVec b;
  double nu = 0.0;
};

Compiled compile(const ConicProblem& prob) {
  prob.check();
  Compiled c;
  for (const auto& v : prob.variables) {
    c.vars.push_back({v.n, c.p, embedded_basis(v.n)});
    c.p += v.n * v.n;
  }
  c.b = RVec::Zero(c.p);
  for (const auto& t : prob.objective)
    c.b.segment(c.vars[t.var].offset, c.vars[t.var].n * c.vars[t.var].n) -=
        linear_coefficients(t.weight);

  for (const auto& lb : prob.psd_blocks) {
    Block blk;
    blk.size = lb.size;
    blk.C = lb.constant.size() ? RMat(0.5 * (lb.constant + lb.constant.transpose()))
                               : RMat::Zero(lb.size, lb.size);
    for (const auto& t : lb.terms) {
      const int n2 = 2 * prob.variables[t.var].n;
      Term term{t.var, t.coef, t.map.size() ? t.map : RMat(RMat::Identity(n2, n2)), t.rows};
      if (term.rows.empty())
        for (int r = 0; r < n2; ++r) term.rows.push_back(r);
      blk.terms.push_back(std::move(term));
    }
    c.nu += lb.size;
    c.blocks.push_back(std::move(blk));
  }

  const int nlp = static_cast<int>(prob.linear_constraints.size());
  c.Alp = RMat::Zero(nlp, c.p);
  c.clp = RVec::Zero(nlp);
  for (int l = 0; l < nlp; ++l) {
    const auto& lc = prob.linear_constraints[l];
    RVec row = RVec::Zero(c.p);
    for (const auto& t : lc.terms)
      row.segment(c.vars[t.var].offset, c.vars[t.var].n * c.vars[t.var].n) +=
          linear_coefficients(t.weight);
    double bound = lc.bound;
    if (lc.rel == Relation::ge) {
      row = -row;
      bound = -bound;
    }
    // Row scaling leaves the feasible set unchanged and evens out the data.
    const double nrm = row.norm();
    if (nrm > 0.0) {
      row /= nrm;
      bound /= nrm;
    }
    c.Alp.row(l) = row.transpose();
    c.clp[l] = bound;
  }
  c.nu += nlp;
  return c;
}

/// Primal or dual conic point: one matrix per block plus the linear part.
struct Point {
  std::vector<RMat> blk;
  RVec lp;
};

Point zeros_like(const Compiled& c) {
  Point p;
  for (const auto& b : c.blocks) p.blk.push_back(RMat::Zero(b.size, b.size));
  p.lp = RVec::Zero(c.Alp.rows());
  return p;
}

Point identity_like(const Compiled& c) {
  Point p;
  for (const auto& b : c.blocks) p.blk.push_back(RMat::Identity(b.size, b.size));
  p.lp = RVec::Ones(c.Alp.rows());
  return p;
}

double dot(const Point& a, const Point& b) {
  double s = a.lp.dot(b.lp);
  for (std::size_t j = 0; j < a.blk.size(); ++j) s += (a.blk[j].array() * b.blk[j].array()).sum();
  return s;
}

double norm(const Point& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const Point& x, Point& y) {
  for (std::size_t j = 0; j < y.blk.size(); ++j) y.blk[j] += alpha * x.blk[j];
  y.lp += alpha * x.lp;
}

Point constant_point(const Compiled& c) {
  Point p;
  for (const auto& b : c.blocks) p.blk.push_back(b.C);
  p.lp = c.clp;
  return p;
}

/// A(G)_i = <A_i, G>; G need not be symmetric.
RVec apply_A(const Compiled& c, const Point& g) {
  RVec out = c.Alp.transpose() * g.lp;
  for (std::size_t j = 0; j < c.blocks.size(); ++j) {
    const Block& blk = c.blocks[j];
    for (const Term& t : blk.terms) {
      const RMat sub = t.map.transpose() * g.blk[j](t.rows, t.rows) * t.map;
      const Var& v = c.vars[t.var];
      for (std::size_t k = 0; k < v.basis.size(); ++k) {
        double s = 0.0;
        for (const auto& e : v.basis[k]) s += e.v * sub(e.c, e.r);
        out[v.offset + k] -= t.coef * s;
      }
    }
  }
  return out;
}

/// A^T y = sum_i y_i A_i.
Point apply_AT(const Compiled& c, const RVec& y) {
  Point out = zeros_like(c);
  out.lp = c.Alp * y;
  for (std::size_t j = 0; j < c.blocks.size(); ++j) {
    for (const Term& t : c.blocks[j].terms) {
      const Var& v = c.vars[t.var];
      const RMat ey = embedded_from_coords(y.data() + v.offset, v.n);
      out.blk[j](t.rows, t.rows) -= t.coef * (t.map * ey * t.map.transpose());
    }
  }
  return out;
}

/// Schur matrix M_ij = <A_i, X A_j Z> (HKM).
RMat schur_matrix(const Compiled& c, const Point& X, const Point& Z) {
  RMat M = c.Alp.transpose() * (X.lp.cwiseProduct(Z.lp)).asDiagonal() * c.Alp;
  for (std::size_t j = 0; j < c.blocks.size(); ++j) {
    const Block& blk = c.blocks[j];
    const std::size_t nt = blk.terms.size();
    for (std::size_t t1 = 0; t1 < nt; ++t1) {
      for (std::size_t t2 = t1; t2 < nt; ++t2) {
        const Term& a = blk.terms[t1];
        const Term& b = blk.terms[t2];
        const RMat P = a.map.transpose() * X.blk[j](a.rows, b.rows) * b.map;
        const RMat Q = b.map.transpose() * Z.blk[j](b.rows, a.rows) * a.map;
        const Var& va = c.vars[a.var];
        const Var& vb = c.vars[b.var];
        const double cc = a.coef * b.coef;
        const std::size_t na = va.basis.size(), nb = vb.basis.size();
        for (std::size_t i = 0; i < na; ++i) {
          const auto& Ei = va.basis[i];
          const std::size_t j0 = (t1 == t2) ? i : 0;
          for (std::size_t k = j0; k < nb; ++k) {
            double s = 0.0;
            for (const auto& e : Ei)
              for (const auto& f : vb.basis[k]) s += e.v * f.v * P(e.c, f.r) * Q(f.c, e.r);
            s *= cc;
            const Eigen::Index r = va.offset + i, q = vb.offset + k;
            if (t1 == t2) {
              M(r, q) += s;
              if (r != q) M(q, r) += s;
            } else {
              M(r, q) += s;
              M(q, r) += s;
            }
          }
        }
      }
    }
  }
  return M;
}

struct Factor {
  Eigen::LLT<RMat> llt;
  bool ok = false;
};

Factor factor_schur(RMat M) {
  Factor f;
  const double scale = std::max(1e-300, M.diagonal().cwiseAbs().maxCoeff());
  double reg = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (reg > 0.0) M.diagonal().array() += reg;
    f.llt.compute(M);
    if (f.llt.info() == Eigen::Success) {
      f.ok = true;
      return f;
    }
    reg = (reg == 0.0) ? 1e-14 * scale : reg * 100.0;
  }
  return f;
}

Point sym_product(const Point& X, const Point& D, const Point& Z) {
  Point out;
  for (std::size_t j = 0; j < X.blk.size(); ++j) {
    const RMat m = X.blk[j] * D.blk[j] * Z.blk[j];
    out.blk.push_back(0.5 * (m + m.transpose()));
  }
  out.lp = X.lp.cwiseProduct(D.lp).cwiseProduct(Z.lp);
  return out;
}

/// Largest step keeping X + alpha dX >= 0 (inf when unbounded).
double max_step(const Point& X, const Point& dX) {
  double amax = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < X.blk.size(); ++j) {
    Eigen::LLT<RMat> llt(X.blk[j]);
    RMat w = llt.matrixL().solve(dX.blk[j]);
    w = llt.matrixL().solve(w.transpose()).transpose();
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (w + w.transpose()), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()[0];
    if (lmin < 0.0) amax = std::min(amax, -1.0 / lmin);
  }
  for (Eigen::Index l = 0; l < X.lp.size(); ++l)
    if (dX.lp[l] < 0.0) amax = std::min(amax, -X.lp[l] / dX.lp[l]);
  return amax;
}

Point inverse(const Point& S) {
  Point Z;
  for (const auto& s : S.blk) {
    Eigen::LLT<RMat> llt(s);
    Z.blk.push_back(llt.solve(RMat::Identity(s.rows(), s.cols())));
    Z.blk.back() = 0.5 * (Z.blk.back() + Z.blk.back().transpose()).eval();
  }
  Z.lp = S.lp.cwiseInverse();
  return Z;
}

bool finite(const Point& p) {
  for (const auto& b : p.blk)
    if (!b.allFinite()) return false;
  return p.lp.allFinite();
}

struct Direction {
  Point dX, dS;
  RVec dy;
  double dtau = 0.0, dkappa = 0.0;
};

std::vector<CMat> unpack(const Compiled& c, const RVec& y) {
  std::vector<CMat> vars;
  for (const auto& v : c.vars) vars.push_back(hermitian_from_coords(y.data() + v.offset, v.n));
  return vars;
}

}  // namespace

double evaluate_objective(const ConicProblem& problem, const std::vector<CMat>& vars) {
  double s = 0.0;
  for (const auto& t : problem.objective) s += (t.weight * vars.at(t.var)).trace().real();
  return s;
}

RMat evaluate_block(const ConicProblem& problem, int block, const std::vector<CMat>& vars) {
  const LmiBlock& b = problem.psd_blocks.at(block);
  RMat val = b.constant.size() ? b.constant : RMat::Zero(b.size, b.size);
  for (const auto& t : b.terms) {
    const RMat ey = embed(vars.at(t.var));
    const RMat contrib = t.map.size() ? RMat(t.map * ey * t.map.transpose()) : ey;
    if (t.rows.empty())
      val += t.coef * contrib;
    else
      val(t.rows, t.rows) += t.coef * contrib;
  }
  return 0.5 * (val + val.transpose());
}

double constraint_violation(const ConicProblem& problem, const std::vector<CMat>& vars) {
  double worst = 0.0;
  for (std::size_t j = 0; j < problem.psd_blocks.size(); ++j) {
    const RMat v = evaluate_block(problem, static_cast<int>(j), vars);
    Eigen::SelfAdjointEigenSolver<RMat> es(v, Eigen::EigenvaluesOnly);
    const LmiBlock& b = problem.psd_blocks[j];
    double cnorm = 1.0;
    if (b.constant.size()) {
      Eigen::SelfAdjointEigenSolver<RMat> ec(b.constant, Eigen::EigenvaluesOnly);
      cnorm = std::max(1.0, ec.eigenvalues().cwiseAbs().maxCoeff());
    }
    worst = std::max(worst, -es.eigenvalues()[0] / cnorm);
  }
  for (const auto& lc : problem.linear_constraints) {
    double val = 0.0;
    for (const auto& t : lc.terms) val += (t.weight * vars.at(t.var)).trace().real();
    const double excess = lc.rel == Relation::le ? val - lc.bound : lc.bound - val;
    worst = std::max(worst, excess / std::max(1.0, std::abs(lc.bound)));
  }
  return std::max(worst, 0.0);
}

ConicSolution solve_conic(const ConicProblem& problem, double tol) {
  SolverOptions opt;
  opt.tol = tol;
  return solve_conic(problem, opt);
}

ConicSolution solve_conic(const ConicProblem& problem, const SolverOptions& opt) {
  const Compiled c = compile(problem);
  const Point C = constant_point(c);
  const double normb = 1.0 + c.b.norm();
  const double normC = 1.0 + norm(C);

  Point X = identity_like(c), S = identity_like(c);
  RVec y = RVec::Zero(c.p);
  double tau = 1.0, kappa = 1.0;

  ConicSolution sol;
  struct Snapshot {
    RVec y;
    Point X;
    double tau = 1.0;
    double merit = std::numeric_limits<double>::infinity();
  } best;

  double pres = 0.0, dres = 0.0, gap = 0.0;
  int stall = 0;
  int iter = 0;
  bool done = false;

  for (; iter <= opt.max_iter && !done; ++iter) {
    // Residuals of the homogeneous embedding.
    const RVec AX = apply_A(c, X);
    const RVec Rp = AX - c.b * tau;
    const Point ATy = apply_AT(c, y);
    Point Rd = C;
    for (std::size_t j = 0; j < Rd.blk.size(); ++j) Rd.blk[j] = C.blk[j] * tau - ATy.blk[j] - S.blk[j];
    Rd.lp = C.lp * tau - ATy.lp - S.lp;
    const double CX = dot(C, X);
    const double by = c.b.dot(y);
    const double Rg = by - CX - kappa;
    const double mu = (dot(X, S) + tau * kappa) / (c.nu + 1.0);

    pres = Rp.norm() / tau / normb;
    dres = norm(Rd) / tau / normC;
    const double pobj = CX / tau, dobj = by / tau;
    gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    const double merit = std::max({pres, dres, gap});
    if (merit < best.merit) best = {y, X, tau, merit};

    if (pres < opt.tol && dres < opt.tol && gap < opt.tol) {
      sol.status = ConicStatus::optimal;
      done = true;
      break;
    }
    if (tau < kappa) {
      if (CX < 0.0 && AX.norm() / (-CX) < opt.tol_infeasible) {
        sol.status = ConicStatus::infeasible;
        done = true;
        break;
      }
      Point cert = ATy;
      axpy(1.0, S, cert);
      if (by > 0.0 && norm(cert) / by < opt.tol_infeasible) {
        sol.status = ConicStatus::unbounded;
        done = true;
        break;
      }
    }
    if (iter == opt.max_iter) break;

    const Point Z = inverse(S);
    const Factor fac = factor_schur(schur_matrix(c, X, Z));
    if (!fac.ok) break;

    Point XCZ;
    for (std::size_t j = 0; j < X.blk.size(); ++j) XCZ.blk.push_back(X.blk[j] * C.blk[j] * Z.blk[j]);
    XCZ.lp = X.lp.cwiseProduct(C.lp).cwiseProduct(Z.lp);
    const RVec g = apply_A(c, XCZ);
    const double h = dot(C, XCZ);
    const RVec v = fac.llt.solve(g + c.b);
    const Point XRdZ = sym_product(X, Rd, Z);

    auto direction = [&](double sigma, double eta, const Point* corrX, double corr_tk) {
      Direction d;
      Point Rc = Z;
      for (std::size_t j = 0; j < Rc.blk.size(); ++j) {
        Rc.blk[j] = sigma * mu * Z.blk[j] - X.blk[j] - eta * XRdZ.blk[j];
        if (corrX) Rc.blk[j] -= corrX->blk[j];
      }
      Rc.lp = sigma * mu * Z.lp - X.lp - eta * XRdZ.lp;
      if (corrX) Rc.lp -= corrX->lp;
      const RVec u = fac.llt.solve(-eta * Rp - apply_A(c, Rc));
      const double comp = sigma * mu - tau * kappa - corr_tk;
      d.dtau = (-eta * Rg + dot(C, Rc) + comp / tau + (g - c.b).dot(u)) /
               ((c.b - g).dot(v) + h + kappa / tau);
      d.dy = u + d.dtau * v;
      const Point ATdy = apply_AT(c, d.dy);
      d.dS = Rd;
      for (std::size_t j = 0; j < d.dS.blk.size(); ++j)
        d.dS.blk[j] = eta * Rd.blk[j] - ATdy.blk[j] + C.blk[j] * d.dtau;
      d.dS.lp = eta * Rd.lp - ATdy.lp + C.lp * d.dtau;
      const Point XdSZ = sym_product(X, d.dS, Z);
      d.dX = Z;
      for (std::size_t j = 0; j < d.dX.blk.size(); ++j) {
        d.dX.blk[j] = sigma * mu * Z.blk[j] - X.blk[j] - XdSZ.blk[j];
        if (corrX) d.dX.blk[j] -= corrX->blk[j];
      }
      d.dX.lp = sigma * mu * Z.lp - X.lp - XdSZ.lp;
      if (corrX) d.dX.lp -= corrX->lp;
      d.dkappa = (comp - kappa * d.dtau) / tau;
      return d;
    };

    auto step_limit = [&](const Direction& d) {
      double a = std::min(max_step(X, d.dX), max_step(S, d.dS));
      if (d.dtau < 0.0) a = std::min(a, -tau / d.dtau);
      if (d.dkappa < 0.0) a = std::min(a, -kappa / d.dkappa);
      return a;
    };

    // Predictor.
    const Direction aff = direction(0.0, 1.0, nullptr, 0.0);
    const double a_aff = std::min(1.0, step_limit(aff));
    Point Xa = X, Sa = S;
    axpy(a_aff, aff.dX, Xa);
    axpy(a_aff, aff.dS, Sa);
    const double mu_aff =
        (dot(Xa, Sa) + (tau + a_aff * aff.dtau) * (kappa + a_aff * aff.dkappa)) / (c.nu + 1.0);
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    // Corrector.
    const Point corr = sym_product(aff.dX, aff.dS, Z);
    const Direction d = direction(sigma, 1.0 - sigma, &corr, aff.dtau * aff.dkappa);
    if (!finite(d.dX) || !finite(d.dS) || !d.dy.allFinite() || !std::isfinite(d.dtau)) break;
    const double alpha = std::min(1.0, 0.98 * step_limit(d));

    axpy(alpha, d.dX, X);
    axpy(alpha, d.dS, S);
    y += alpha * d.dy;
    tau += alpha * d.dtau;
    kappa += alpha * d.dkappa;

    stall = alpha < 1e-8 ? stall + 1 : 0;
    if (stall >= 3) break;
  }

  sol.iterations = iter;
  if (!done) {
    // Stalled or out of iterations: fall back to the best iterate seen.
    y = best.y;
    X = best.X;
    tau = best.tau;
    if (best.merit < opt.tol_inaccurate) sol.status = ConicStatus::optimal;
  }
  sol.primal_residual = pres;
  sol.dual_residual = dres;
  sol.gap = gap;

  if (sol.status == ConicStatus::infeasible || sol.status == ConicStatus::unbounded) {
    sol.variables = unpack(c, RVec::Zero(c.p));
    return sol;
  }
  const RVec yy = y / tau;
  sol.variables = unpack(c, yy);
  if (!sol.variables.empty() && problem.ahat_var >= 0 &&
      problem.ahat_var < static_cast<int>(sol.variables.size()))
    sol.Ahat = problem.ahat_scale * sol.variables[problem.ahat_var];
  sol.objective_value = problem.objective_scale * (-c.b.dot(yy));
  sol.dual_bound = problem.objective_scale * (-dot(C, X) / tau);
  sol.max_constraint_violation = constraint_violation(problem, sol.variables);
  return sol;
}

}  // namespace iscco
