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

#include "sdpgame/block_sdp.h"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace sdpgame {
namespace {

void CheckSpec(const BlockSpec& spec) {
  switch (spec.kind) {
    case BlockKind::kMatrix:
      if (spec.size < 2) {
        throw std::invalid_argument("matrix block needs size >= 2");
      }
      break;
    case BlockKind::kDiag:
      if (spec.size < 1) {
        throw std::invalid_argument("diagonal block needs size >= 1");
      }
      break;
    case BlockKind::kFree:
      if (spec.size != 1) {
        throw std::invalid_argument("free block has size 1");
      }
      break;
  }
}

Matrix ZeroBlock(const BlockSpec& spec) {
  if (spec.kind == BlockKind::kMatrix) return Matrix::Zero(spec.size, spec.size);
  return Matrix::Zero(spec.size, 1);
}

}  // namespace

BlockStructure::BlockStructure(std::vector<BlockSpec> blocks)
    : blocks_(std::move(blocks)) {
  for (const auto& b : blocks_) CheckSpec(b);
}

int BlockStructure::AddMatrix(int k) {
  BlockSpec spec{BlockKind::kMatrix, k};
  CheckSpec(spec);
  blocks_.push_back(spec);
  return num_blocks() - 1;
}

int BlockStructure::AddDiag(int k) {
  BlockSpec spec{BlockKind::kDiag, k};
  CheckSpec(spec);
  blocks_.push_back(spec);
  return num_blocks() - 1;
}

int BlockStructure::AddFree() {
  blocks_.push_back({BlockKind::kFree, 1});
  return num_blocks() - 1;
}

int BlockStructure::AddPsd(int k) { return k >= 2 ? AddMatrix(k) : AddDiag(k); }

int BlockStructure::ScalarDimension() const {
  int total = 0;
  for (const auto& b : blocks_) {
    total += b.kind == BlockKind::kMatrix ? b.size * (b.size + 1) / 2 : b.size;
  }
  return total;
}

BlockVector BlockStructure::Zero() const {
  BlockVector v;
  v.reserve(blocks_.size());
  for (const auto& b : blocks_) v.push_back(ZeroBlock(b));
  return v;
}

bool BlockStructure::Conforms(const BlockVector& v) const {
  if (v.size() != blocks_.size()) return false;
  for (size_t b = 0; b < blocks_.size(); ++b) {
    const Matrix zero = ZeroBlock(blocks_[b]);
    if (v[b].rows() != zero.rows() || v[b].cols() != zero.cols()) return false;
    if (!v[b].allFinite()) return false;
    if (blocks_[b].kind == BlockKind::kMatrix && v[b] != v[b].transpose()) {
      return false;
    }
  }
  return true;
}

double BlockInner(const BlockVector& a, const BlockVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("block count mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i].cwiseProduct(b[i]).sum();
  return s;
}

Matrix EntrySelector(int n, int k, int l) {
  Matrix e = Matrix::Zero(n, n);
  if (k == l) {
    e(k, k) = 1.0;
  } else {
    e(k, l) = 0.5;
    e(l, k) = 0.5;
  }
  return e;
}

std::string ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kNearOptimal:
      return "NearOptimal";
    case SolveStatus::kPrimalInfeasibleDetected:
      return "PrimalInfeasibleDetected";
    case SolveStatus::kDualInfeasibleDetected:
      return "DualInfeasibleDetected";
    case SolveStatus::kMaxIterations:
      return "MaxIterations";
    case SolveStatus::kNumericalFailure:
      return "NumericalFailure";
  }
  return "Unknown";
}

StandardSdp::StandardSdp(BlockStructure s, Sense sense)
    : structure(std::move(s)), sense(sense) {
  objective = structure.Zero();
}

int StandardSdp::AddConstraint(double rhs) {
  constraints.push_back({structure.Zero(), rhs});
  return static_cast<int>(constraints.size()) - 1;
}

void StandardSdp::SetCoeff(int constraint, int block, int i, int j,
                           double value) {
  Matrix& m = constraints.at(constraint).coeffs.at(block);
  if (structure.block(block).kind == BlockKind::kMatrix) {
    m(i, j) = value;
    m(j, i) = value;
  } else {
    if (j != 0) throw std::invalid_argument("vector blocks use column 0");
    m(i, 0) = value;
  }
}

void StandardSdp::AddMatrixCoeff(int constraint, int block, const Matrix& m,
                                 double value) {
  Matrix& target = constraints.at(constraint).coeffs.at(block);
  if (structure.block(block).kind == BlockKind::kMatrix) {
    target += value * m;
  } else {
    // One-entry psd block standing in for a 1 x 1 matrix.
    if (m.rows() != 1 || m.cols() != 1 || target.rows() != 1) {
      throw std::invalid_argument("matrix coefficient does not fit block");
    }
    target(0, 0) += value * m(0, 0);
  }
}

void StandardSdp::SetObjective(int block, int i, int j, double value) {
  Matrix& m = objective.at(block);
  if (structure.block(block).kind == BlockKind::kMatrix) {
    m(i, j) = value;
    m(j, i) = value;
  } else {
    if (j != 0) throw std::invalid_argument("vector blocks use column 0");
    m(i, 0) = value;
  }
}

void StandardSdp::Validate() const {
  if (!structure.Conforms(objective)) {
    throw std::invalid_argument("objective does not conform to block structure");
  }
  for (size_t j = 0; j < constraints.size(); ++j) {
    if (!structure.Conforms(constraints[j].coeffs)) {
      throw std::invalid_argument("constraint " + std::to_string(j) +
                                  " does not conform to block structure");
    }
    if (!std::isfinite(constraints[j].rhs)) {
      throw std::invalid_argument("constraint " + std::to_string(j) +
                                  " has a non-finite right-hand side");
    }
  }
}

}  // namespace sdpgame
