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

#include "sdpgame/direct_solve.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "sdpgame/sdp_solver.h"

namespace sdpgame {
namespace {

// Eigenvalues of W at most this fraction of its largest are treated as zero.
constexpr double kFaceRank = 1e-6;
// Multipliers below this fraction of the largest are set to zero, so that
// solver noise does not tilt the face.
constexpr double kReducerSupport = 1e-8;
// Slack allowed in the independent check of a reducer certificate, relative
// to the size of sum |y_i| |A_i|.
constexpr double kReducerCheck = 1e-8;

// W = -sum y_i A_i from a reducer solve, with y clipped to be nonnegative,
// or nullopt when the certificate does not check out.
std::optional<SymMat> CheckedReducer(const SdpPair& pair, const SolveResult& r) {
  if (!HasOptimalPoint(r.status)) return std::nullopt;
  Vector y = r.primal[PrimalReducerBlocks::kY].col(0).cwiseMax(0.0);
  const double cut = kReducerSupport * y.maxCoeff();
  y = y.unaryExpr([cut](double v) { return v <= cut ? 0.0 : v; });
  const SymMat w = pair.Combine(-y);
  const double size = 1.0 + y.sum() * pair.Scale();
  const double top = MaxEigenvalue(w);
  if (top < 0.5 / pair.n()) return std::nullopt;
  if (MinEigenvalue(w) < -kReducerCheck * size) return std::nullopt;
  if (pair.b().dot(y) < -kReducerCheck * size) return std::nullopt;
  return w;
}

}  // namespace

StandardSdp BuildPrimalReducer(const SdpPair& pair) {
  using B = PrimalReducerBlocks;
  const int n = pair.n();
  const int m = pair.m();
  BlockStructure st;
  st.AddDiag(m);
  st.AddPsd(n);
  st.AddDiag(1);
  StandardSdp prob(st, Sense::kMinimize);
  // (sum y_i A_i + W)(k, l) = 0
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      const int con = prob.AddConstraint(0.0);
      for (int i = 0; i < m; ++i) prob.SetCoeff(con, B::kY, i, 0, pair.a(i)(k, l));
      prob.AddMatrixCoeff(con, B::kW, EntrySelector(n, k, l), 1.0);
    }
  }
  const int trace = prob.AddConstraint(1.0);
  prob.AddMatrixCoeff(trace, B::kW, Matrix::Identity(n, n), 1.0);
  const int value = prob.AddConstraint(0.0);
  for (int i = 0; i < m; ++i) prob.SetCoeff(value, B::kY, i, 0, pair.b()(i));
  prob.SetCoeff(value, B::kSigma, 0, 0, -1.0);
  return prob;
}

PrimalFace ReducePrimalFace(const SdpPair& pair, const SolverOptions& opts) {
  PrimalFace face{Matrix::Identity(pair.n(), pair.n()), pair, {}, 0};
  for (int i = 0; i < pair.m(); ++i) face.kept.push_back(i);
  while (face.pair.n() > 1) {
    const std::optional<SymMat> w =
        CheckedReducer(face.pair, Solve(BuildPrimalReducer(face.pair), opts));
    if (!w) break;
    // Keep the eigenvectors of W with (numerically) zero eigenvalues.
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(w->matrix());
    const double cut = kFaceRank * eig.eigenvalues().maxCoeff();
    std::vector<int> null;
    for (int k = 0; k < face.pair.n(); ++k) {
      if (eig.eigenvalues()(k) <= cut) null.push_back(k);
    }
    if (null.empty()) break;  // X = 0 is the only candidate; solve as is
    Matrix v(face.pair.n(), static_cast<Eigen::Index>(null.size()));
    for (size_t k = 0; k < null.size(); ++k) {
      v.col(static_cast<Eigen::Index>(k)) = eig.eigenvectors().col(null[k]);
    }
    auto restrict = [&](const SymMat& s) {
      return SymMat::Symmetrize(v.transpose() * s.matrix() * v);
    };
    const double zero = 1e-12 * face.pair.Scale();
    std::vector<SymMat> a;
    std::vector<double> b;
    std::vector<int> kept;
    for (int i = 0; i < face.pair.m(); ++i) {
      SymMat ai = restrict(face.pair.a(i));
      const bool trivial = ai.matrix().cwiseAbs().maxCoeff() <= zero &&
                           face.pair.b()(i) <= 0.0;
      if (trivial) continue;
      a.push_back(std::move(ai));
      b.push_back(face.pair.b()(i));
      kept.push_back(face.kept[i]);
    }
    if (a.empty()) {
      // Every constraint holds on the face; keep one so the pair stays valid.
      a.push_back(restrict(face.pair.a(0)));
      b.push_back(face.pair.b()(0));
      kept.push_back(face.kept[0]);
    }
    face.pair = SdpPair(restrict(face.pair.c()), std::move(a),
                        Eigen::Map<const Vector>(b.data(), b.size()));
    face.basis = face.basis * v;
    face.kept = std::move(kept);
    ++face.steps;
  }
  return face;
}

StandardSdp BuildPrimalProgram(const SdpPair& pair) {
  using B = DirectPrimalBlocks;
  const int m = pair.m();
  BlockStructure st;
  st.AddPsd(pair.n());
  st.AddDiag(m);
  StandardSdp prob(st, Sense::kMinimize);
  prob.objective[B::kX] = pair.c().matrix();
  for (int i = 0; i < m; ++i) {
    const int con = prob.AddConstraint(pair.b()(i));
    prob.AddMatrixCoeff(con, B::kX, pair.a(i).matrix(), 1.0);
    prob.SetCoeff(con, B::kSlack, i, 0, -1.0);
  }
  return prob;
}

StandardSdp BuildDualProgram(const SdpPair& pair) {
  using B = DirectDualBlocks;
  const int n = pair.n();
  const int m = pair.m();
  BlockStructure st;
  st.AddDiag(m);
  st.AddPsd(n);
  StandardSdp prob(st, Sense::kMaximize);
  for (int i = 0; i < m; ++i) prob.SetObjective(B::kY, i, 0, pair.b()(i));
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      const int con = prob.AddConstraint(pair.c()(k, l));
      for (int i = 0; i < m; ++i) {
        prob.SetCoeff(con, B::kY, i, 0, pair.a(i)(k, l));
      }
      prob.AddMatrixCoeff(con, B::kSlack, EntrySelector(n, k, l), 1.0);
    }
  }
  return prob;
}

DirectSolution SolveDirect(const SdpPair& pair, const SolverOptions& opts) {
  DirectSolution out;
  out.face = ReducePrimalFace(pair, opts);
  out.primal = Solve(BuildPrimalProgram(out.face.pair), opts);
  out.dual = Solve(BuildDualProgram(pair), opts);
  const double limit = kDirectDivergence * pair.Scale();
  if (HasOptimalPoint(out.primal.status)) {
    const Matrix& basis = out.face.basis;
    out.x = SymMat::Symmetrize(
        basis * out.primal.primal[DirectPrimalBlocks::kX] * basis.transpose());
    out.x_diverged = out.x->matrix().norm() > limit;
  }
  if (HasOptimalPoint(out.dual.status)) {
    out.y = out.dual.primal[DirectDualBlocks::kY].col(0);
    out.y_diverged = out.y->norm() > limit;
  }
  return out;
}

}  // namespace sdpgame
