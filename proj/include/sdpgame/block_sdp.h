// Copyright 2026 The sdpgame Authors.
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

// Block-diagonal standard-form SDP:
//
//   min (or max) <c, x>  s.t.  <a_j, x> = beta_j,  j = 1..p,
//   x = (x_1, ..., x_B),  each x_b a psd matrix, a nonnegative vector or a
//   free scalar.
//
// The conic dual of the minimization form is
//
//   max beta^T y  s.t.  c - sum_j y_j a_j = s,  s in the dual cone
//
// where the dual cone is psd / nonnegative on cone blocks and {0} on free
// scalars.

#ifndef SDPGAME_BLOCK_SDP_H_
#define SDPGAME_BLOCK_SDP_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "sdpgame/sym_mat.h"

namespace sdpgame {

enum class BlockKind { kMatrix, kDiag, kFree };

struct BlockSpec {
  BlockKind kind;
  int size;  // k x k matrix, k nonnegative scalars, or 1 for a free scalar

  bool operator==(const BlockSpec&) const = default;
};

// Block values: a k x k matrix for kMatrix, a k x 1 column for kDiag and a
// 1 x 1 matrix for kFree.
using BlockVector = std::vector<Matrix>;

class BlockStructure {
 public:
  BlockStructure() = default;
  // Throws std::invalid_argument on a matrix block smaller than 2, an empty
  // diagonal block or a free block whose size is not 1.
  explicit BlockStructure(std::vector<BlockSpec> blocks);

  int AddMatrix(int k);
  int AddDiag(int k);
  int AddFree();
  // Matrix block for k >= 2, one-entry diagonal block for k == 1.
  int AddPsd(int k);

  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const BlockSpec& block(int b) const { return blocks_[b]; }
  const std::vector<BlockSpec>& blocks() const { return blocks_; }

  // sum k(k+1)/2 over matrix blocks + sum k over diag blocks + #free.
  int ScalarDimension() const;

  BlockVector Zero() const;
  bool Conforms(const BlockVector& v) const;

  bool operator==(const BlockStructure&) const = default;

 private:
  std::vector<BlockSpec> blocks_;
};

double BlockInner(const BlockVector& a, const BlockVector& b);

// Symmetric n x n matrix E with <E, M> = M(k, l) for every symmetric M.
Matrix EntrySelector(int n, int k, int l);

struct LinearConstraint {
  BlockVector coeffs;
  double rhs = 0.0;
};

enum class Sense { kMinimize, kMaximize };

struct StandardSdp {
  BlockStructure structure;
  BlockVector objective;
  std::vector<LinearConstraint> constraints;
  Sense sense = Sense::kMinimize;

  StandardSdp() = default;
  StandardSdp(BlockStructure s, Sense sense);

  // Appends an all-zero constraint and returns its index.
  int AddConstraint(double rhs);
  // Coefficient of x_b(i, j) + x_b(j, i) for i != j is 2 * value; for i == j
  // the diagonal entry gets coefficient value. Diag/free blocks use j == 0.
  void SetCoeff(int constraint, int block, int i, int j, double value);
  // Adds value * m to a matrix block coefficient (m symmetric).
  void AddMatrixCoeff(int constraint, int block, const Matrix& m, double value);
  void SetObjective(int block, int i, int j, double value);

  // Throws std::invalid_argument if the objective or any constraint does not
  // conform to the structure or a right-hand side is not finite.
  void Validate() const;
};

struct SolverOptions {
  double tol = 1e-8;
  int max_iters = 200;
  double step_fraction = 0.98;
  // Scale of the identity cold start; <= 0 selects 1 + max|beta| for the
  // primal and 1 + max|c| for the dual slack.
  double initial_scale = 0.0;
  // Check the residual-corrected weak duality identity at every iterate and
  // throw std::logic_error on violation.
  bool debug_checks = false;
  bool record_trace = false;
};

enum class SolveStatus {
  kOptimal,
  // The method broke down before reaching tol; the best iterate seen meets
  // the optimality conditions to within kNearOptimalFactor * tol.
  kNearOptimal,
  kPrimalInfeasibleDetected,
  kDualInfeasibleDetected,
  kMaxIterations,
  kNumericalFailure,
};

inline constexpr double kNearOptimalFactor = 1e3;

std::string ToString(SolveStatus status);

// kOptimal or kNearOptimal.
inline bool HasOptimalPoint(SolveStatus status) {
  return status == SolveStatus::kOptimal ||
         status == SolveStatus::kNearOptimal;
}

// Raised by higher-level routines when an inner solve ends without a usable
// answer.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(SolveStatus status, const std::string& context)
      : std::runtime_error(context + ": " + ToString(status)), status_(status) {}
  SolveStatus status() const { return status_; }

 private:
  SolveStatus status_;
};

struct IterationStats {
  int iteration = 0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double complementarity = 0.0;  // <x, s> over cone blocks
  // pobj - dobj with the infeasibility terms removed; equals the
  // complementarity up to rounding, hence weak duality.
  double corrected_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double primal_step = 0.0;
  double dual_step = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kNumericalFailure;
  BlockVector primal;
  Vector dual;
  BlockVector dual_slack;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  // pobj - dobj for minimization, dobj - pobj for maximization.
  double gap = 0.0;
  // ||beta - A x|| / (1 + ||beta||)
  double primal_infeasibility = 0.0;
  // ||c - A^T y - s|| / (1 + ||c||)
  double dual_infeasibility = 0.0;
  int iterations = 0;
  std::vector<std::string> warnings;
  std::vector<IterationStats> trace;
};

}  // namespace sdpgame

#endif  // SDPGAME_BLOCK_SDP_H_
