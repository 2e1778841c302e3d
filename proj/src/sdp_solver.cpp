// Copyright 2026 The risbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "risbf/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace risbf::sdp {

// ---------------------------------------------------------------------------
// SymCoefficient

SymCoefficient SymCoefficient::Dense(RMat m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("dense coefficient must be square");
  }
  SymCoefficient c;
  c.size_ = static_cast<int>(m.rows());
  c.dense_ = true;
  c.matrix_ = std::move(m);
  return c;
}

SymCoefficient SymCoefficient::Sparse(int size, std::vector<SymEntry> entries) {
  SymCoefficient c;
  c.size_ = size;
  for (auto& e : entries) {
    if (e.row > e.col) std::swap(e.row, e.col);
    if (e.row < 0 || e.col >= size) {
      throw std::invalid_argument("sparse coefficient entry out of range");
    }
  }
  // Merge duplicates.
  std::sort(entries.begin(), entries.end(), [](const SymEntry& a, const SymEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (const auto& e : entries) {
    if (!c.entries_.empty() && c.entries_.back().row == e.row &&
        c.entries_.back().col == e.col) {
      c.entries_.back().value += e.value;
    } else {
      c.entries_.push_back(e);
    }
  }
  return c;
}

SymCoefficient SymCoefficient::Entry(int size, int row, int col, double value) {
  return Sparse(size, {{row, col, value}});
}

double SymCoefficient::Inner(const RMat& x) const {
  if (dense_) return matrix_.cwiseProduct(x).sum();
  double acc = 0.0;
  for (const auto& e : entries_) {
    acc += e.row == e.col ? e.value * x(e.row, e.col)
                          : e.value * (x(e.row, e.col) + x(e.col, e.row));
  }
  return acc;
}

void SymCoefficient::AddTo(RMat& out, double scale) const {
  if (dense_) {
    out.noalias() += scale * matrix_;
    return;
  }
  for (const auto& e : entries_) {
    out(e.row, e.col) += scale * e.value;
    if (e.row != e.col) out(e.col, e.row) += scale * e.value;
  }
}

double SymCoefficient::FrobeniusNormSquared() const {
  if (dense_) return matrix_.squaredNorm();
  double acc = 0.0;
  for (const auto& e : entries_) {
    acc += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
  }
  return acc;
}

RMat SymCoefficient::ToDense() const {
  RMat out = RMat::Zero(size_, size_);
  AddTo(out, 1.0);
  return out;
}

// ---------------------------------------------------------------------------
// SdpProblem

int SdpProblem::AddBlock(int size) {
  if (size <= 0) throw std::invalid_argument("block size must be positive");
  block_sizes.push_back(size);
  return static_cast<int>(block_sizes.size()) - 1;
}

namespace {

void ValidateTerm(const SdpProblem& p, const BlockTerm& t) {
  if (t.block < 0 || t.block >= static_cast<int>(p.block_sizes.size())) {
    throw std::invalid_argument("term references unknown block");
  }
  if (t.coeff.size() != p.block_sizes[t.block]) {
    throw std::invalid_argument("term size does not match its block");
  }
  if (t.coeff.is_dense()) {
    const RMat& m = t.coeff.dense();
    if (!m.allFinite()) throw std::invalid_argument("non-finite coefficient");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
      throw std::invalid_argument("dense coefficient is not symmetric");
    }
  } else {
    for (const auto& e : t.coeff.entries()) {
      if (!std::isfinite(e.value)) {
        throw std::invalid_argument("non-finite coefficient");
      }
    }
  }
}

}  // namespace

void SdpProblem::Validate() const {
  if (block_sizes.empty()) throw std::invalid_argument("problem has no blocks");
  if (constraints.empty()) {
    throw std::invalid_argument("problem has no constraints");
  }
  for (const auto& t : objective) ValidateTerm(*this, t);
  for (const auto& c : constraints) {
    if (!std::isfinite(c.rhs)) throw std::invalid_argument("non-finite rhs");
    for (const auto& t : c.terms) ValidateTerm(*this, t);
  }
}

const char* ToString(SdpStatus status) {
  switch (status) {
    case SdpStatus::kOptimal: return "optimal";
    case SdpStatus::kPrimalInfeasible: return "primal_infeasible";
    case SdpStatus::kDualInfeasible: return "dual_infeasible";
    case SdpStatus::kMaxIterations: return "max_iterations";
    case SdpStatus::kNumericalError: return "numerical_error";
  }
  return "unknown";
}

double KktResiduals::Max() const {
  return std::max({primal_infeasibility, dual_infeasibility, complementarity, gap});
}

namespace {

using Blocks = std::vector<RMat>;

// Equality-only standard form with slack blocks appended for ">=" rows.
struct StandardForm {
  std::vector<int> sizes;
  int num_user_blocks = 0;
  std::vector<std::vector<BlockTerm>> rows;
  RVec b;
  std::vector<RMat> c;  // dense objective per block
  std::vector<int> slack_block_of_row;  // -1 for equality rows
};

StandardForm ToStandardForm(const SdpProblem& p) {
  StandardForm f;
  f.sizes = p.block_sizes;
  f.num_user_blocks = static_cast<int>(p.block_sizes.size());
  const int m = static_cast<int>(p.constraints.size());
  f.rows.resize(m);
  f.b.resize(m);
  f.slack_block_of_row.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    const Constraint& con = p.constraints[i];
    f.rows[i] = con.terms;
    f.b(i) = con.rhs;
    if (con.sense == Sense::kGreaterEqual) {
      const int k = static_cast<int>(f.sizes.size());
      f.sizes.push_back(1);
      f.rows[i].push_back({k, SymCoefficient::Entry(1, 0, 0, -1.0)});
      f.slack_block_of_row[i] = k;
    }
  }
  for (int s : f.sizes) f.c.push_back(RMat::Zero(s, s));
  for (const auto& t : p.objective) t.coeff.AddTo(f.c[t.block], 1.0);
  return f;
}

double InnerBlocks(const Blocks& x, const Blocks& z) {
  double acc = 0.0;
  for (size_t k = 0; k < x.size(); ++k) acc += x[k].cwiseProduct(z[k]).sum();
  return acc;
}

double FrobBlocks(const Blocks& x) {
  double acc = 0.0;
  for (const auto& m : x) acc += m.squaredNorm();
  return std::sqrt(acc);
}

RVec ApplyA(const StandardForm& f, const Blocks& x) {
  RVec out(f.rows.size());
  for (size_t i = 0; i < f.rows.size(); ++i) {
    double acc = 0.0;
    for (const auto& t : f.rows[i]) acc += t.coeff.Inner(x[t.block]);
    out(i) = acc;
  }
  return out;
}

Blocks ApplyAT(const StandardForm& f, const RVec& y) {
  Blocks out;
  for (int s : f.sizes) out.push_back(RMat::Zero(s, s));
  for (size_t i = 0; i < f.rows.size(); ++i) {
    for (const auto& t : f.rows[i]) t.coeff.AddTo(out[t.block], y(i));
  }
  return out;
}

RMat Sym(const RMat& m) { return 0.5 * (m + m.transpose()); }

// Largest alpha with x + alpha * dx PSD (infinity if unbounded).
double MaxStep(const RMat& x, const RMat& dx) {
  Eigen::LLT<RMat> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const RMat linv_dx = llt.matrixL().solve(dx);
  const RMat s = llt.matrixL().solve(linv_dx.transpose());
  Eigen::SelfAdjointEigenSolver<RMat> eig(Sym(s), Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues()(0);
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

// Per-block Nesterov-Todd scaling data.
struct NtScaling {
  RMat w;        // W with W Z W = X
  RMat g;        // W^{1/2}
  RMat g_inv;    // W^{-1/2}
  RMat v_vecs;   // eigenvectors of V = G Z G = G^{-1} X G^{-1}
  RVec v_vals;
};

bool ComputeNt(const RMat& x, const RMat& z, NtScaling& out) {
  Eigen::LLT<RMat> llt(x);
  if (llt.info() != Eigen::Success) return false;
  const RMat l = llt.matrixL();
  Eigen::SelfAdjointEigenSolver<RMat> eig_lzl(Sym(l.transpose() * z * l));
  const RVec lam = eig_lzl.eigenvalues();
  if (lam.minCoeff() <= 0.0) return false;
  const RMat lq = l * eig_lzl.eigenvectors();
  out.w = Sym(lq * lam.cwiseSqrt().cwiseInverse().asDiagonal() * lq.transpose());
  Eigen::SelfAdjointEigenSolver<RMat> eig_w(out.w);
  const RVec om = eig_w.eigenvalues();
  if (om.minCoeff() <= 0.0) return false;
  const RMat& p = eig_w.eigenvectors();
  out.g = Sym(p * om.cwiseSqrt().asDiagonal() * p.transpose());
  out.g_inv = Sym(p * om.cwiseSqrt().cwiseInverse().asDiagonal() * p.transpose());
  Eigen::SelfAdjointEigenSolver<RMat> eig_v(Sym(out.g * z * out.g));
  out.v_vecs = eig_v.eigenvectors();
  out.v_vals = eig_v.eigenvalues();
  return out.v_vals.minCoeff() > 0.0;
}

// Solves V E + E V = rhs for E in the eigenbasis of V.
RMat SolveLyapunov(const NtScaling& nt, const RMat& rhs) {
  const RMat& q = nt.v_vecs;
  RMat r = q.transpose() * rhs * q;
  for (int i = 0; i < r.rows(); ++i) {
    for (int j = 0; j < r.cols(); ++j) r(i, j) /= nt.v_vals(i) + nt.v_vals(j);
  }
  return Sym(q * r * q.transpose());
}

// <A, W B W> for two sparse coefficients.
double SparseSchur(const SymCoefficient& a, const SymCoefficient& b, const RMat& w) {
  double acc = 0.0;
  for (const auto& ea : a.entries()) {
    for (const auto& eb : b.entries()) {
      // Expand both symmetric entries into their full position lists.
      const int ar[2] = {ea.row, ea.col};
      const int ac[2] = {ea.col, ea.row};
      const int br[2] = {eb.row, eb.col};
      const int bc[2] = {eb.col, eb.row};
      const int na = ea.row == ea.col ? 1 : 2;
      const int nb = eb.row == eb.col ? 1 : 2;
      double s = 0.0;
      for (int u = 0; u < na; ++u) {
        for (int v = 0; v < nb; ++v) s += w(ar[u], br[v]) * w(bc[v], ac[u]);
      }
      acc += ea.value * eb.value * s;
    }
  }
  return acc;
}

RMat BuildSchur(const StandardForm& f, const std::vector<NtScaling>& nt) {
  const int m = static_cast<int>(f.rows.size());
  RMat schur = RMat::Zero(m, m);
  const int nb = static_cast<int>(f.sizes.size());
  struct Ref {
    int row;
    const SymCoefficient* coeff;
  };
  std::vector<std::vector<Ref>> per_block(nb);
  for (int i = 0; i < m; ++i) {
    for (const auto& t : f.rows[i]) per_block[t.block].push_back({i, &t.coeff});
  }
  for (int k = 0; k < nb; ++k) {
    const auto& refs = per_block[k];
    const RMat& w = nt[k].w;
    std::vector<RMat> g(refs.size());
    for (size_t a = 0; a < refs.size(); ++a) {
      if (refs[a].coeff->is_dense()) {
        g[a] = Sym(w * refs[a].coeff->dense() * w);
      }
    }
    for (size_t a = 0; a < refs.size(); ++a) {
      for (size_t b = 0; b <= a; ++b) {
        double val;
        if (refs[b].coeff->is_dense()) {
          val = refs[a].coeff->Inner(g[b]);
        } else if (refs[a].coeff->is_dense()) {
          val = refs[b].coeff->Inner(g[a]);
        } else {
          val = SparseSchur(*refs[a].coeff, *refs[b].coeff, w);
        }
        schur(refs[a].row, refs[b].row) += val;
        if (a != b) schur(refs[b].row, refs[a].row) += val;
      }
    }
  }
  return schur;
}

struct Direction {
  Blocks dx;
  RVec dy;
  Blocks dz;
};

// Solves for (dX, dy, dZ) given the complementarity right-hand side
// R_c (so that dX + W dZ W = R_c), the primal residual rp = b - A(X) and
// the dual residual rd = C - A'y + Z.
bool SolveDirection(const StandardForm& f, const std::vector<NtScaling>& nt,
                    const Eigen::LDLT<RMat>& schur, const Blocks& rc,
                    const RVec& rp, const Blocks& rd, Direction& out) {
  const size_t nb = f.sizes.size();
  Blocks t(nb);
  for (size_t k = 0; k < nb; ++k) t[k] = rc[k] + nt[k].w * rd[k] * nt[k].w;
  const RVec rhs = ApplyA(f, t) - rp;
  out.dy = schur.solve(rhs);
  if (!out.dy.allFinite()) return false;
  const Blocks aty = ApplyAT(f, out.dy);
  out.dz.resize(nb);
  out.dx.resize(nb);
  for (size_t k = 0; k < nb; ++k) {
    out.dz[k] = Sym(aty[k] - rd[k]);
    out.dx[k] = Sym(rc[k] - nt[k].w * out.dz[k] * nt[k].w);
  }
  return true;
}

double StepLength(const Blocks& x, const Blocks& dx) {
  double step = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < x.size(); ++k) step = std::min(step, MaxStep(x[k], dx[k]));
  return step;
}

struct ScaledResult {
  Blocks x;
  RVec y;
  Blocks z;
  SdpStatus status = SdpStatus::kNumericalError;
  int iterations = 0;
};

}  // namespace

KktResiduals ComputeKktResiduals(const SdpProblem& problem,
                                 const SdpSolution& solution) {
  KktResiduals r;
  const size_t nb = problem.block_sizes.size();
  const size_t m = problem.constraints.size();
  if (solution.primal.size() != nb || static_cast<size_t>(solution.dual.size()) != m) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf, inf, inf};
  }
  double b_norm2 = 0.0;
  double c_norm2 = 0.0;
  double primal_violation2 = 0.0;
  double sign_violation2 = 0.0;
  double slack_compl = 0.0;
  Blocks z;
  for (int s : problem.block_sizes) z.push_back(RMat::Zero(s, s));
  for (const auto& t : problem.objective) {
    t.coeff.AddTo(z[t.block], -1.0);
    c_norm2 += t.coeff.FrobeniusNormSquared();
  }
  double dual_obj = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const Constraint& con = problem.constraints[i];
    double ax = 0.0;
    for (const auto& t : con.terms) {
      ax += t.coeff.Inner(solution.primal[t.block]);
      t.coeff.AddTo(z[t.block], solution.dual(i));
    }
    const double yi = solution.dual(i);
    b_norm2 += con.rhs * con.rhs;
    dual_obj += con.rhs * yi;
    if (con.sense == Sense::kEqual) {
      primal_violation2 += (ax - con.rhs) * (ax - con.rhs);
    } else {
      const double v = std::max(0.0, con.rhs - ax);
      primal_violation2 += v * v;
      const double s = std::max(0.0, yi);
      sign_violation2 += s * s;
      slack_compl += std::abs(yi * (ax - con.rhs));
    }
  }
  double primal_obj = 0.0;
  for (const auto& t : problem.objective) {
    primal_obj += t.coeff.Inner(solution.primal[t.block]);
  }
  double psd_x2 = 0.0;
  double psd_z2 = 0.0;
  double block_compl = 0.0;
  for (size_t k = 0; k < nb; ++k) {
    const RMat& x = solution.primal[k];
    Eigen::SelfAdjointEigenSolver<RMat> ex(Sym(x), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<RMat> ez(Sym(z[k]), Eigen::EigenvaluesOnly);
    for (int i = 0; i < ex.eigenvalues().size(); ++i) {
      const double nx = std::min(0.0, ex.eigenvalues()(i));
      const double nz = std::min(0.0, ez.eigenvalues()(i));
      psd_x2 += nx * nx;
      psd_z2 += nz * nz;
    }
    block_compl += std::abs(x.cwiseProduct(z[k]).sum());
  }
  const double scale = 1.0 + std::abs(primal_obj) + std::abs(dual_obj);
  r.primal_infeasibility =
      std::sqrt(primal_violation2 + psd_x2) / (1.0 + std::sqrt(b_norm2));
  r.dual_infeasibility =
      std::sqrt(psd_z2 + sign_violation2) / (1.0 + std::sqrt(c_norm2));
  r.complementarity = (block_compl + slack_compl) / scale;
  r.gap = std::abs(dual_obj - primal_obj) / scale;
  return r;
}

namespace {

SdpSolution Unscale(const SdpProblem& problem, const StandardForm& f,
                    const ScaledResult& res, const RVec& row_scale,
                    double obj_scale) {
  SdpSolution sol;
  sol.status = res.status;
  sol.iterations = res.iterations;
  for (int k = 0; k < f.num_user_blocks; ++k) {
    sol.primal.push_back(res.x[k]);
    sol.dual_slack.push_back(obj_scale * res.z[k]);
  }
  sol.dual = obj_scale * res.y.cwiseQuotient(row_scale);
  sol.primal_objective = 0.0;
  for (const auto& t : problem.objective) {
    sol.primal_objective += t.coeff.Inner(sol.primal[t.block]);
  }
  sol.dual_objective = 0.0;
  for (size_t i = 0; i < problem.constraints.size(); ++i) {
    sol.dual_objective += problem.constraints[i].rhs * sol.dual(i);
  }
  sol.residuals = ComputeKktResiduals(problem, sol);
  return sol;
}

}  // namespace

SdpSolution SolveSdp(const SdpProblem& problem, const SdpOptions& options) {
  problem.Validate();
  StandardForm f = ToStandardForm(problem);
  const int m = static_cast<int>(f.rows.size());
  const size_t nb = f.sizes.size();

  // Row and objective normalization.
  RVec row_scale(m);
  for (int i = 0; i < m; ++i) {
    double n2 = 0.0;
    for (const auto& t : f.rows[i]) n2 += t.coeff.FrobeniusNormSquared();
    row_scale(i) = n2 > 0.0 ? std::sqrt(n2) : 1.0;
    for (auto& t : f.rows[i]) {
      t.coeff = t.coeff.is_dense()
                    ? SymCoefficient::Dense(t.coeff.dense() / row_scale(i))
                    : [&] {
                        auto e = t.coeff.entries();
                        for (auto& x : e) x.value /= row_scale(i);
                        return SymCoefficient::Sparse(t.coeff.size(), std::move(e));
                      }();
    }
    f.b(i) /= row_scale(i);
  }
  const double c_norm = FrobBlocks(f.c);
  const double obj_scale = c_norm > 0.0 ? c_norm : 1.0;
  for (auto& c : f.c) c /= obj_scale;

  int n_total = 0;
  for (int s : f.sizes) n_total += s;
  const double b_norm = f.b.norm();
  double max_b = 0.0;
  for (int i = 0; i < m; ++i) max_b = std::max(max_b, 1.0 + std::abs(f.b(i)));
  const double xi = std::max({10.0, std::sqrt(static_cast<double>(n_total)),
                              n_total * max_b / 2.0});
  const double eta = std::max({10.0, std::sqrt(static_cast<double>(n_total)), 1.0});

  ScaledResult res;
  for (int s : f.sizes) {
    res.x.push_back(xi * RMat::Identity(s, s));
    res.z.push_back(eta * RMat::Identity(s, s));
  }
  res.y = RVec::Zero(m);

  std::vector<NtScaling> nt(nb);
  double prev_step = 1.0;
  int stalled = 0;
  for (int iter = 0; iter <= options.max_iters; ++iter) {
    res.iterations = iter;
    const RVec ax = ApplyA(f, res.x);
    const RVec rp = f.b - ax;
    const Blocks aty = ApplyAT(f, res.y);
    Blocks rd(nb);
    for (size_t k = 0; k < nb; ++k) rd[k] = f.c[k] - aty[k] + res.z[k];
    const double xz = InnerBlocks(res.x, res.z);
    const double mu = xz / n_total;
    const double pobj = InnerBlocks(f.c, res.x);
    const double dobj = f.b.dot(res.y);
    const double pinf = rp.norm() / (1.0 + b_norm);
    const double dinf = FrobBlocks(rd) / 2.0;  // ||C|| is 1 after scaling
    const double rel_gap =
        std::max(std::abs(xz), std::abs(dobj - pobj)) /
        (1.0 + std::abs(pobj) + std::abs(dobj));

    if (pinf <= options.tol && dinf <= options.tol && rel_gap <= options.tol) {
      SdpSolution sol = Unscale(problem, f, res, row_scale, obj_scale);
      if (sol.residuals.Max() <= options.tol) {
        sol.status = SdpStatus::kOptimal;
        return sol;
      }
    }
    // Farkas certificates on the scaled data.
    if (dobj < 0.0) {
      Blocks cert(nb);
      for (size_t k = 0; k < nb; ++k) cert[k] = aty[k] - res.z[k];
      if (FrobBlocks(cert) / -dobj < 1e-8 && res.y.norm() > 1e3) {
        res.status = SdpStatus::kPrimalInfeasible;
        return Unscale(problem, f, res, row_scale, obj_scale);
      }
    }
    if (pobj > 0.0 && ax.norm() / pobj < 1e-8 && FrobBlocks(res.x) > 1e3 * xi) {
      res.status = SdpStatus::kDualInfeasible;
      return Unscale(problem, f, res, row_scale, obj_scale);
    }
    if (iter == options.max_iters) break;

    bool ok = true;
    for (size_t k = 0; k < nb && ok; ++k) ok = ComputeNt(res.x[k], res.z[k], nt[k]);
    if (!ok) {
      res.status = SdpStatus::kNumericalError;
      break;
    }
    RMat schur = BuildSchur(f, nt);
    Eigen::LDLT<RMat> ldlt(schur);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      const double reg = 1e-14 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
      schur.diagonal().array() += reg;
      ldlt.compute(schur);
      if (ldlt.info() != Eigen::Success) {
        res.status = SdpStatus::kNumericalError;
        break;
      }
    }

    // Predictor.
    Blocks rc(nb);
    for (size_t k = 0; k < nb; ++k) rc[k] = -res.x[k];
    Direction aff;
    if (!SolveDirection(f, nt, ldlt, rc, rp, rd, aff)) {
      res.status = SdpStatus::kNumericalError;
      break;
    }
    const double ap_aff = std::min(1.0, StepLength(res.x, aff.dx));
    const double ad_aff = std::min(1.0, StepLength(res.z, aff.dz));
    double xz_aff = 0.0;
    for (size_t k = 0; k < nb; ++k) {
      xz_aff += (res.x[k] + ap_aff * aff.dx[k]).cwiseProduct(res.z[k] + ad_aff * aff.dz[k]).sum();
    }
    const double mu_aff = std::max(0.0, xz_aff / n_total);
    double sigma = mu > 0.0 ? std::pow(mu_aff / mu, 3) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);
    if (std::max(pinf, dinf) > 1e-2) sigma = std::max(sigma, 0.1 * (1.0 - prev_step));

    // Corrector.
    for (size_t k = 0; k < nb; ++k) {
      const int s = f.sizes[k];
      const RMat dxs = nt[k].g_inv * aff.dx[k] * nt[k].g_inv;
      const RMat dzs = nt[k].g * aff.dz[k] * nt[k].g;
      const RMat v2 = nt[k].v_vecs * nt[k].v_vals.cwiseAbs2().asDiagonal() *
                      nt[k].v_vecs.transpose();
      const RMat rhs = 2.0 * sigma * mu * RMat::Identity(s, s) - 2.0 * v2 -
                       (dxs * dzs + dzs * dxs);
      rc[k] = Sym(nt[k].g * SolveLyapunov(nt[k], rhs) * nt[k].g);
    }
    Direction dir;
    if (!SolveDirection(f, nt, ldlt, rc, rp, rd, dir)) {
      res.status = SdpStatus::kNumericalError;
      break;
    }
    const double gamma = std::max(0.9, std::min(0.98, 1.0 - 0.5 * mu_aff / std::max(mu, 1e-300)));
    const double ap = std::min(1.0, gamma * StepLength(res.x, dir.dx));
    const double ad = std::min(1.0, gamma * StepLength(res.z, dir.dz));
    for (size_t k = 0; k < nb; ++k) {
      res.x[k] = Sym(res.x[k] + ap * dir.dx[k]);
      res.z[k] = Sym(res.z[k] + ad * dir.dz[k]);
    }
    res.y += ad * dir.dy;
    prev_step = std::min(ap, ad);
    stalled = prev_step < 1e-10 ? stalled + 1 : 0;
    if (stalled >= 5) {
      res.status = SdpStatus::kNumericalError;
      break;
    }
    res.status = SdpStatus::kMaxIterations;
  }
  return Unscale(problem, f, res, row_scale, obj_scale);
}

void WriteSdpaSparse(const SdpProblem& problem, std::ostream& out) {
  problem.Validate();
  const StandardForm f = ToStandardForm(problem);
  out.precision(17);
  out << "* risbf SDP dump\n";
  out << f.rows.size() << "\n" << f.sizes.size() << "\n";
  for (size_t k = 0; k < f.sizes.size(); ++k) {
    out << f.sizes[k] << (k + 1 == f.sizes.size() ? "\n" : " ");
  }
  for (int i = 0; i < f.b.size(); ++i) {
    out << f.b(i) << (i + 1 == f.b.size() ? "\n" : " ");
  }
  const auto emit = [&](size_t mat, int block, const RMat& a) {
    for (int r = 0; r < a.rows(); ++r) {
      for (int c = r; c < a.cols(); ++c) {
        if (a(r, c) != 0.0) {
          out << mat << " " << block + 1 << " " << r + 1 << " " << c + 1 << " "
              << a(r, c) << "\n";
        }
      }
    }
  };
  for (size_t k = 0; k < f.sizes.size(); ++k) emit(0, static_cast<int>(k), f.c[k]);
  for (size_t i = 0; i < f.rows.size(); ++i) {
    for (const auto& t : f.rows[i]) emit(i + 1, t.block, t.coeff.ToDense());
  }
}

}  // namespace risbf::sdp
