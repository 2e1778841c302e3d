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

#ifndef RISBF_SDP_HPP_
#define RISBF_SDP_HPP_

// Small dense semidefinite programs in the primal form
//
//   maximize   sum_k <C_k, X_k>
//   subject to sum_k <A_ik, X_k>  (= or >=)  b_i,   X_k PSD,
//
// with dual  minimize b'y  s.t.  sum_i y_i A_ik - C_k = Z_k PSD
// (y_i <= 0 for ">=" rows). Solved by an infeasible primal-dual
// path-following method with Nesterov-Todd scaling and a Mehrotra
// predictor-corrector step.

#include <iosfwd>
#include <string>
#include <vector>

#include "risbf/types.hpp"

namespace risbf::sdp {

struct SymEntry {
  int row;
  int col;
  double value;  // stored once; mirrored to (col, row) when row != col
};

/// Symmetric coefficient matrix of one block, held either densely or as
/// a list of upper-triangular entries.
class SymCoefficient {
 public:
  SymCoefficient() = default;
  static SymCoefficient Dense(RMat m);
  static SymCoefficient Sparse(int size, std::vector<SymEntry> entries);
  /// Single entry; off-diagonal entries contribute 2 * value * X(r, c).
  static SymCoefficient Entry(int size, int row, int col, double value);

  int size() const { return size_; }
  bool is_dense() const { return dense_; }
  const RMat& dense() const { return matrix_; }
  const std::vector<SymEntry>& entries() const { return entries_; }

  /// <A, X> = trace(A X).
  double Inner(const RMat& x) const;
  /// Adds scale * A into `out`.
  void AddTo(RMat& out, double scale) const;
  double FrobeniusNormSquared() const;
  RMat ToDense() const;

 private:
  int size_ = 0;
  bool dense_ = false;
  RMat matrix_;
  std::vector<SymEntry> entries_;
};

struct BlockTerm {
  int block;
  SymCoefficient coeff;
};

enum class Sense { kEqual, kGreaterEqual };

struct Constraint {
  std::vector<BlockTerm> terms;
  Sense sense = Sense::kEqual;
  double rhs = 0.0;
  std::string label;
};

struct SdpProblem {
  std::vector<int> block_sizes;
  std::vector<BlockTerm> objective;
  std::vector<Constraint> constraints;

  int AddBlock(int size);
  /// Throws std::invalid_argument on inconsistent dimensions, non-symmetric
  /// dense coefficients, or an empty constraint list.
  void Validate() const;
};

enum class SdpStatus {
  kOptimal,
  kPrimalInfeasible,
  kDualInfeasible,
  kMaxIterations,
  kNumericalError,
};

const char* ToString(SdpStatus status);

struct KktResiduals {
  double primal_infeasibility = 0.0;  // relative, includes PSD violation
  double dual_infeasibility = 0.0;    // relative, includes PSD/sign violation
  double complementarity = 0.0;       // relative
  double gap = 0.0;                   // |dual - primal| / (1 + |p| + |d|)
  double Max() const;
};

struct SdpSolution {
  std::vector<RMat> primal;      // X_k, user blocks only
  RVec dual;                     // y_i, one per constraint
  std::vector<RMat> dual_slack;  // Z_k, user blocks only
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  SdpStatus status = SdpStatus::kNumericalError;
  KktResiduals residuals;
  int iterations = 0;
};

struct SdpOptions {
  double tol = 1e-8;
  int max_iters = 200;
};

SdpSolution SolveSdp(const SdpProblem& problem, const SdpOptions& options = {});

/// Recomputes feasibility, complementarity and gap of (X, y) from scratch;
/// Z is rebuilt from y rather than taken from the solution.
KktResiduals ComputeKktResiduals(const SdpProblem& problem,
                                 const SdpSolution& solution);

/// Writes the problem in SDPA sparse format after slack conversion of ">="
/// rows. The SDPA dual "max tr(F0 Y) s.t. tr(Fi Y) = ci" matches the primal
/// form above.
void WriteSdpaSparse(const SdpProblem& problem, std::ostream& out);

}  // namespace risbf::sdp

#endif  // RISBF_SDP_HPP_
