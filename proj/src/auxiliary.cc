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

#include "sdpgame/auxiliary.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sdpgame/sdp_solver.h"

namespace sdpgame {
namespace {

// Iterate norms beyond this multiple of the data scale count as divergence.
constexpr double kDivergence = 1e6;

// Appends a one-entry nonnegative block with zero coefficients everywhere and
// returns its index.
int AppendScalarBlock(StandardSdp& prob) {
  std::vector<BlockSpec> specs = prob.structure.blocks();
  specs.push_back({BlockKind::kDiag, 1});
  prob.structure = BlockStructure(std::move(specs));
  prob.objective.push_back(Matrix::Zero(1, 1));
  for (auto& con : prob.constraints) con.coeffs.push_back(Matrix::Zero(1, 1));
  return prob.structure.num_blocks() - 1;
}

double PointNorm(const SolveResult& r) {
  using B = PrimalAuxBlocks;
  return std::abs(r.primal[B::kX].trace()) + r.primal[B::kY].cwiseAbs().sum();
}

AuxSolution Extract(const SolveResult& r, Attainment attained) {
  using B = PrimalAuxBlocks;
  AuxSolution sol;
  sol.x = SymMat::Symmetrize(r.primal[B::kX]);
  sol.y = r.primal[B::kY].col(0);
  sol.w = r.primal[B::kW](0, 0);
  sol.attained = attained;
  sol.lower_bound = r.dual_objective;
  return sol;
}

bool Failed(const SolveResult& r) {
  return r.status == SolveStatus::kMaxIterations ||
         r.status == SolveStatus::kNumericalFailure;
}

}  // namespace

std::string ToString(Attainment a) {
  return a == Attainment::kAttained ? "Attained" : "SuspectedUnattained";
}

StandardSdp BuildPrimalAux(const SdpPair& pair) {
  using B = PrimalAuxBlocks;
  const int n = pair.n();
  const int m = pair.m();
  BlockStructure st;
  st.AddPsd(n);   // X
  st.AddPsd(n);   // Z
  st.AddDiag(m);  // y
  st.AddDiag(m);  // s
  st.AddDiag(1);  // w
  st.AddDiag(1);  // r
  StandardSdp prob(st, Sense::kMinimize);
  prob.SetObjective(B::kW, 0, 0, 1.0);

  // <A_i, X> + w - s_i = b_i
  for (int i = 0; i < m; ++i) {
    const int con = prob.AddConstraint(pair.b()(i));
    prob.AddMatrixCoeff(con, B::kX, pair.a(i).matrix(), 1.0);
    prob.SetCoeff(con, B::kW, 0, 0, 1.0);
    prob.SetCoeff(con, B::kS, i, 0, -1.0);
  }
  // (sum y_i A_i - w I + Z)(k, l) = C(k, l)
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      const int con = prob.AddConstraint(pair.c()(k, l));
      for (int i = 0; i < m; ++i) prob.SetCoeff(con, B::kY, i, 0, pair.a(i)(k, l));
      if (k == l) prob.SetCoeff(con, B::kW, 0, 0, -1.0);
      prob.AddMatrixCoeff(con, B::kZ, EntrySelector(n, k, l), 1.0);
    }
  }
  // <C, X> - b^T y - w + r = 0
  const int gap = prob.AddConstraint(0.0);
  prob.AddMatrixCoeff(gap, B::kX, pair.c().matrix(), 1.0);
  for (int i = 0; i < m; ++i) prob.SetCoeff(gap, B::kY, i, 0, -pair.b()(i));
  prob.SetCoeff(gap, B::kW, 0, 0, -1.0);
  prob.SetCoeff(gap, B::kR, 0, 0, 1.0);
  return prob;
}

StandardSdp BuildDualAux(const SdpPair& pair) {
  using B = DualAuxBlocks;
  const int n = pair.n();
  const int m = pair.m();
  BlockStructure st;
  st.AddPsd(n);   // W
  st.AddDiag(m);  // z
  st.AddDiag(1);  // r
  st.AddPsd(n);   // T
  st.AddDiag(m);  // sigma
  st.AddDiag(1);  // rho
  StandardSdp prob(st, Sense::kMaximize);
  for (int i = 0; i < m; ++i) prob.SetObjective(B::kZ, i, 0, pair.b()(i));
  prob.objective[B::kW] = -pair.c().matrix();
  if (n == 1) prob.objective[B::kW] = Matrix::Constant(1, 1, -pair.c()(0, 0));

  // (sum z_i A_i - r C + T)(k, l) = 0
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      const int con = prob.AddConstraint(0.0);
      for (int i = 0; i < m; ++i) prob.SetCoeff(con, B::kZ, i, 0, pair.a(i)(k, l));
      prob.SetCoeff(con, B::kR, 0, 0, -pair.c()(k, l));
      prob.AddMatrixCoeff(con, B::kT, EntrySelector(n, k, l), 1.0);
    }
  }
  // <A_i, W> - r b_i - sigma_i = 0
  for (int i = 0; i < m; ++i) {
    const int con = prob.AddConstraint(0.0);
    prob.AddMatrixCoeff(con, B::kW, pair.a(i).matrix(), 1.0);
    prob.SetCoeff(con, B::kR, 0, 0, -pair.b()(i));
    prob.SetCoeff(con, B::kSigma, i, 0, -1.0);
  }
  // 1^T z + tr W + r + rho = 1
  const int norm = prob.AddConstraint(1.0);
  for (int i = 0; i < m; ++i) prob.SetCoeff(norm, B::kZ, i, 0, 1.0);
  prob.AddMatrixCoeff(norm, B::kW, Matrix::Identity(n, n), 1.0);
  prob.SetCoeff(norm, B::kR, 0, 0, 1.0);
  prob.SetCoeff(norm, B::kRho, 0, 0, 1.0);
  return prob;
}

AuxSolution SolveAux(const SdpPair& pair, const SolverOptions& opts) {
  using B = PrimalAuxBlocks;
  const double divergence = kDivergence * pair.Scale();
  const StandardSdp aux = BuildPrimalAux(pair);
  const SolveResult first = Solve(aux, opts);
  if (!HasOptimalPoint(first.status)) {
    if (Failed(first) && PointNorm(first) > divergence) {
      return Extract(first, Attainment::kSuspectedUnattained);
    }
    throw SolverFailure(first.status, "auxiliary program");
  }
  const double w_star = first.primal[B::kW](0, 0);

  // Smallest-norm point of the (near) optimal face.
  StandardSdp face = aux;
  const int slack = AppendScalarBlock(face);
  const double delta =
      std::max(1e-7 * (1.0 + std::abs(w_star)), 10.0 * std::abs(first.gap));
  const int cap = face.AddConstraint(w_star + delta);
  face.SetCoeff(cap, B::kW, 0, 0, 1.0);
  face.SetCoeff(cap, slack, 0, 0, 1.0);
  face.SetObjective(B::kW, 0, 0, 0.0);
  const int n = pair.n();
  face.objective[B::kX] =
      n == 1 ? Matrix::Ones(1, 1) : Matrix(Matrix::Identity(n, n));
  face.objective[B::kY].setOnes();

  const SolveResult second = Solve(face, opts);
  if (second.status == SolveStatus::kOptimal) {
    AuxSolution sol = Extract(second, PointNorm(second) > divergence
                                          ? Attainment::kSuspectedUnattained
                                          : Attainment::kAttained);
    sol.lower_bound = first.dual_objective;
    return sol;
  }
  if (Failed(second) && PointNorm(second) > divergence) {
    AuxSolution sol = Extract(second, Attainment::kSuspectedUnattained);
    sol.lower_bound = first.dual_objective;
    return sol;
  }
  // The face program only refines the point, so a near-optimal answer is
  // not trusted; the first stage already certified optimality and its point
  // stands.
  return Extract(first, PointNorm(first) > divergence
                            ? Attainment::kSuspectedUnattained
                            : Attainment::kAttained);
}

bool VerifyStrictPrimalUnbounded(const SdpPair& pair, const SymMat& w,
                                 double tol) {
  if (w.dim() != pair.n()) {
    throw std::invalid_argument("direction has wrong dimension");
  }
  const double scale = pair.Scale();
  if (!IsPsd(w, tol)) return false;
  if (pair.ApplyConstraints(w).minCoeff() <= tol * scale) return false;
  return FrobeniusInner(pair.c(), w) < -tol * scale;
}

bool VerifyStrictDualUnbounded(const SdpPair& pair, const Vector& y,
                               double tol) {
  if (y.size() != pair.m()) {
    throw std::invalid_argument("direction has wrong length");
  }
  const double scale = pair.Scale();
  if (y.minCoeff() < -tol) return false;
  if (MaxEigenvalue(pair.Combine(y)) >= -tol * scale) return false;
  return pair.b().dot(y) > tol * scale;
}

}  // namespace sdpgame
