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

#include "sdpgame/dantzig_game.h"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include "sdpgame/sdp_solver.h"

namespace sdpgame {
namespace {

void CheckM(double big_m) {
  if (!(big_m > 0.0) || !std::isfinite(big_m)) {
    throw std::invalid_argument("solution bound M must be positive and finite");
  }
}

void CheckShape(const SdpPair& pair, const SymMat& x, const Vector& y) {
  if (x.dim() != pair.n() || y.size() != pair.m()) {
    throw std::invalid_argument("strategy does not match the pair dimensions");
  }
}

bool ConeMember(const SymMat& x, const Vector& y, int n, int m, double tol) {
  if (x.dim() != n || y.size() != m) return false;
  if (MinEigenvalue(x) < -tol) return false;
  return m == 0 || y.minCoeff() >= -tol;
}

// Projects onto the cone (eigenvalue clipping, clamping) and rescales to unit
// trace. `tail` holds the scalar blocks.
void Normalize(SymMat& x, Vector& y, std::initializer_list<double*> tail) {
  x = ClipNegativeEigenvalues(x);
  y = y.cwiseMax(0.0);
  double total = x.Trace() + y.sum();
  for (double* v : tail) {
    *v = std::max(*v, 0.0);
    total += *v;
  }
  if (!(total > 0.0)) throw std::runtime_error("game strategy has zero mass");
  x = x / total;
  y /= total;
  for (double* v : tail) *v /= total;
}

// Reads a psd block of a standard-form solution back into a SymMat.
SymMat ReadPsd(const Matrix& block) {
  return SymMat::Symmetrize(block);
}

// Adds the upper triangle of an n x n matrix equation to `prob`; `fill`
// writes the coefficients of entry (k, l) into constraint `con`.
template <typename F>
void AddMatrixEquation(StandardSdp& prob, int n, F&& fill) {
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) fill(prob.AddConstraint(0.0), k, l);
  }
}

void AddTraceRow(StandardSdp& prob, int n, int m, int x_block, int y_block,
                 std::initializer_list<int> scalars) {
  const int con = prob.AddConstraint(1.0);
  prob.AddMatrixCoeff(con, x_block, Matrix::Identity(n, n), 1.0);
  for (int i = 0; i < m; ++i) prob.SetCoeff(con, y_block, i, 0, 1.0);
  for (int b : scalars) prob.SetCoeff(con, b, 0, 0, 1.0);
}

}  // namespace

bool IsValidStrategy(const Strategy1& s, int n, int m, double tol) {
  if (!ConeMember(s.x, s.y, n, m, tol) || s.t < -tol || s.u < -tol) {
    return false;
  }
  return std::abs(s.x.Trace() + s.y.sum() + s.t + s.u - 1.0) <= tol;
}

bool IsValidStrategy(const Strategy2& s, int n, int m, double tol) {
  if (!ConeMember(s.x, s.y, n, m, tol) || s.t < -tol) return false;
  return std::abs(s.x.Trace() + s.y.sum() + s.t - 1.0) <= tol;
}

double BlockDiagonal::MinEigenvalue() const {
  double v = sdpgame::MinEigenvalue(matrix);
  if (diagonal.size() > 0) v = std::min(v, diagonal.minCoeff());
  return v;
}

double BlockDiagonal::MaxEigenvalue() const {
  double v = sdpgame::MaxEigenvalue(matrix);
  if (diagonal.size() > 0) v = std::max(v, diagonal.maxCoeff());
  return v;
}

Matrix BlockDiagonal::Dense() const {
  const int n = matrix.dim();
  Matrix out = Matrix::Zero(size(), size());
  out.topLeftCorner(n, n) = matrix.matrix();
  for (int i = 0; i < diagonal.size(); ++i) out(n + i, n + i) = diagonal(i);
  return out;
}

double Inner(const BlockDiagonal& a, const BlockDiagonal& b) {
  if (a.matrix.dim() != b.matrix.dim() ||
      a.diagonal.size() != b.diagonal.size()) {
    throw std::invalid_argument("block shapes differ");
  }
  return FrobeniusInner(a.matrix, b.matrix) + a.diagonal.dot(b.diagonal);
}

BlockDiagonal AsBlocks(const Strategy1& s) {
  Vector d(s.y.size() + 2);
  d << s.y, s.t, s.u;
  return {s.x, d};
}

BlockDiagonal AsBlocks(const Strategy2& s) {
  Vector d(s.y.size() + 1);
  d << s.y, s.t;
  return {s.x, d};
}

double Payoff(const SdpPair& pair, double big_m, const Strategy1& s1,
              const Strategy2& s2) {
  CheckM(big_m);
  CheckShape(pair, s1.x, s1.y);
  CheckShape(pair, s2.x, s2.y);
  const Vector ax2 = pair.ApplyConstraints(s2.x);
  double p = s1.y.dot(s2.t * pair.b() - ax2);
  p += FrobeniusInner(s1.x, pair.Combine(s2.y) - s2.t * pair.c());
  p += s1.t * (FrobeniusInner(pair.c(), s2.x) - pair.b().dot(s2.y));
  p += s1.u * (s2.x.Trace() + s2.y.sum() - s2.t * big_m);
  return p;
}

BlockDiagonal ResponseK(const SdpPair& pair, double big_m,
                        const Strategy1& s1) {
  CheckM(big_m);
  CheckShape(pair, s1.x, s1.y);
  const int n = pair.n();
  const int m = pair.m();
  BlockDiagonal k;
  k.matrix = s1.t * pair.c() - pair.Combine(s1.y) + s1.u * SymMat::Identity(n);
  k.diagonal.resize(m + 1);
  k.diagonal.head(m) = pair.ApplyConstraints(s1.x) - s1.t * pair.b() +
                       Vector::Constant(m, s1.u);
  k.diagonal(m) = pair.b().dot(s1.y) - FrobeniusInner(s1.x, pair.c()) -
                  s1.u * big_m;
  return k;
}

BlockDiagonal ResponseL(const SdpPair& pair, double big_m,
                        const Strategy2& s2) {
  CheckM(big_m);
  CheckShape(pair, s2.x, s2.y);
  const int m = pair.m();
  BlockDiagonal l;
  l.matrix = pair.Combine(s2.y) - s2.t * pair.c();
  l.diagonal.resize(m + 2);
  l.diagonal.head(m) = s2.t * pair.b() - pair.ApplyConstraints(s2.x);
  l.diagonal(m) = FrobeniusInner(pair.c(), s2.x) - pair.b().dot(s2.y);
  l.diagonal(m + 1) = s2.x.Trace() + s2.y.sum() - s2.t * big_m;
  return l;
}

double BestResponseValueP2(const SdpPair& pair, double big_m,
                           const Strategy1& s1) {
  return ResponseK(pair, big_m, s1).MinEigenvalue();
}

double BestResponseValueP1(const SdpPair& pair, double big_m,
                           const Strategy2& s2) {
  return ResponseL(pair, big_m, s2).MaxEigenvalue();
}

StandardSdp GameSdpPlayer1(const SdpPair& pair, double big_m) {
  CheckM(big_m);
  using B = Player1Blocks;
  const int n = pair.n();
  const int m = pair.m();
  BlockStructure st;
  st.AddPsd(n);
  st.AddDiag(m);
  st.AddDiag(1);
  st.AddDiag(1);
  st.AddFree();
  st.AddPsd(n);
  st.AddDiag(m);
  st.AddDiag(1);
  StandardSdp prob(st, Sense::kMaximize);
  prob.SetObjective(B::kV, 0, 0, 1.0);

  // t C - sum y_i A_i + (u - v) I - S = 0
  AddMatrixEquation(prob, n, [&](int con, int k, int l) {
    prob.SetCoeff(con, B::kT, 0, 0, pair.c()(k, l));
    for (int i = 0; i < m; ++i) {
      prob.SetCoeff(con, B::kY, i, 0, -pair.a(i)(k, l));
    }
    if (k == l) {
      prob.SetCoeff(con, B::kU, 0, 0, 1.0);
      prob.SetCoeff(con, B::kV, 0, 0, -1.0);
    }
    prob.AddMatrixCoeff(con, B::kS, EntrySelector(n, k, l), -1.0);
  });
  // <A_i, X> - t b_i + u - v - sigma_i = 0
  for (int i = 0; i < m; ++i) {
    const int con = prob.AddConstraint(0.0);
    prob.AddMatrixCoeff(con, B::kX, pair.a(i).matrix(), 1.0);
    prob.SetCoeff(con, B::kT, 0, 0, -pair.b()(i));
    prob.SetCoeff(con, B::kU, 0, 0, 1.0);
    prob.SetCoeff(con, B::kV, 0, 0, -1.0);
    prob.SetCoeff(con, B::kSigma, i, 0, -1.0);
  }
  // b^T y - <X, C> - u M - v - sigma_t = 0
  const int last = prob.AddConstraint(0.0);
  for (int i = 0; i < m; ++i) prob.SetCoeff(last, B::kY, i, 0, pair.b()(i));
  prob.AddMatrixCoeff(last, B::kX, pair.c().matrix(), -1.0);
  prob.SetCoeff(last, B::kU, 0, 0, -big_m);
  prob.SetCoeff(last, B::kV, 0, 0, -1.0);
  prob.SetCoeff(last, B::kSigmaT, 0, 0, -1.0);
  AddTraceRow(prob, n, m, B::kX, B::kY, {B::kT, B::kU});
  return prob;
}

StandardSdp GameSdpPlayer2(const SdpPair& pair, double big_m) {
  CheckM(big_m);
  using B = Player2Blocks;
  const int n = pair.n();
  const int m = pair.m();
  BlockStructure st;
  st.AddPsd(n);
  st.AddDiag(m);
  st.AddDiag(1);
  st.AddFree();
  st.AddPsd(n);
  st.AddDiag(m);
  st.AddDiag(1);
  st.AddDiag(1);
  StandardSdp prob(st, Sense::kMinimize);
  prob.SetObjective(B::kV, 0, 0, 1.0);

  // v I - sum y_i A_i + t C - S = 0
  AddMatrixEquation(prob, n, [&](int con, int k, int l) {
    if (k == l) prob.SetCoeff(con, B::kV, 0, 0, 1.0);
    for (int i = 0; i < m; ++i) {
      prob.SetCoeff(con, B::kY, i, 0, -pair.a(i)(k, l));
    }
    prob.SetCoeff(con, B::kT, 0, 0, pair.c()(k, l));
    prob.AddMatrixCoeff(con, B::kS, EntrySelector(n, k, l), -1.0);
  });
  // v - t b_i + <A_i, X> - sigma_i = 0
  for (int i = 0; i < m; ++i) {
    const int con = prob.AddConstraint(0.0);
    prob.SetCoeff(con, B::kV, 0, 0, 1.0);
    prob.SetCoeff(con, B::kT, 0, 0, -pair.b()(i));
    prob.AddMatrixCoeff(con, B::kX, pair.a(i).matrix(), 1.0);
    prob.SetCoeff(con, B::kSigma, i, 0, -1.0);
  }
  // v - <C, X> + b^T y - sigma_t = 0
  const int gap = prob.AddConstraint(0.0);
  prob.SetCoeff(gap, B::kV, 0, 0, 1.0);
  prob.AddMatrixCoeff(gap, B::kX, pair.c().matrix(), -1.0);
  for (int i = 0; i < m; ++i) prob.SetCoeff(gap, B::kY, i, 0, pair.b()(i));
  prob.SetCoeff(gap, B::kSigmaT, 0, 0, -1.0);
  // v - tr X - 1^T y + t M - sigma_u = 0
  const int size = prob.AddConstraint(0.0);
  prob.SetCoeff(size, B::kV, 0, 0, 1.0);
  prob.AddMatrixCoeff(size, B::kX, Matrix::Identity(n, n), -1.0);
  for (int i = 0; i < m; ++i) prob.SetCoeff(size, B::kY, i, 0, -1.0);
  prob.SetCoeff(size, B::kT, 0, 0, big_m);
  prob.SetCoeff(size, B::kSigmaU, 0, 0, -1.0);
  AddTraceRow(prob, n, m, B::kX, B::kY, {B::kT});
  return prob;
}

GameSolution SolveGame(const SdpPair& pair, double big_m,
                       const SolverOptions& opts) {
  const SolveResult r1 = Solve(GameSdpPlayer1(pair, big_m), opts);
  if (!HasOptimalPoint(r1.status)) {
    throw SolverFailure(r1.status, "player 1 game program");
  }
  const SolveResult r2 = Solve(GameSdpPlayer2(pair, big_m), opts);
  if (!HasOptimalPoint(r2.status)) {
    throw SolverFailure(r2.status, "player 2 game program");
  }

  GameSolution g;
  {
    using B = Player1Blocks;
    g.s1 = {ReadPsd(r1.primal[B::kX]), r1.primal[B::kY].col(0),
            r1.primal[B::kT](0, 0), r1.primal[B::kU](0, 0)};
    Normalize(g.s1.x, g.s1.y, {&g.s1.t, &g.s1.u});
  }
  {
    using B = Player2Blocks;
    g.s2 = {ReadPsd(r2.primal[B::kX]), r2.primal[B::kY].col(0),
            r2.primal[B::kT](0, 0)};
    Normalize(g.s2.x, g.s2.y, {&g.s2.t});
  }
  const double v1 = r1.primal_objective;
  const double v2 = r2.primal_objective;
  g.value = 0.5 * (v1 + v2);
  g.residual = std::max(
      {std::abs(v1 - v2),
       std::abs(BestResponseValueP2(pair, big_m, g.s1) - g.value),
       std::abs(BestResponseValueP1(pair, big_m, g.s2) - g.value)});
  return g;
}

double SubgamePayoff(const SdpPair& pair, const Strategy2& z1,
                     const Strategy2& z2) {
  const Strategy1 embedded{z1.x, z1.y, z1.t, 0.0};
  // With u = 0 the bound M drops out of the payoff.
  return Payoff(pair, 1.0, embedded, z2);
}

}  // namespace sdpgame
