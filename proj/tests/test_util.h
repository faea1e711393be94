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

// Shared helpers for the test binaries: random instance generators and a
// brute-force LP oracle that is independent of the interior-point solver.

#ifndef SDPGAME_TESTS_TEST_UTIL_H_
#define SDPGAME_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "sdpgame/block_sdp.h"
#include "sdpgame/dantzig_game.h"
#include "sdpgame/sdp_model.h"
#include "sdpgame/sym_mat.h"

namespace sdpgame::testing {

inline Matrix RandomMatrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  }
  return m;
}

inline SymMat RandomSym(std::mt19937_64& rng, int n) {
  return SymMat::Symmetrize(RandomMatrix(rng, n, n));
}

// G^T G + shift * I.
inline SymMat RandomPsd(std::mt19937_64& rng, int n, double shift = 0.0) {
  const Matrix g = RandomMatrix(rng, n, n);
  return SymMat::Symmetrize(g.transpose() * g +
                            shift * Matrix::Identity(n, n));
}

inline BlockStructure RandomStructure(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> size(2, 4);
  BlockStructure st;
  const int blocks = count(rng);
  for (int b = 0; b < blocks; ++b) {
    switch (kind(rng)) {
      case 0:
        st.AddMatrix(size(rng));
        break;
      case 1:
        st.AddDiag(size(rng) - 1);
        break;
      default:
        st.AddMatrix(size(rng));
        st.AddFree();
        break;
    }
  }
  return st;
}

inline Matrix RandomBlock(std::mt19937_64& rng, const BlockSpec& spec) {
  if (spec.kind == BlockKind::kMatrix) return RandomSym(rng, spec.size).matrix();
  return RandomMatrix(rng, spec.size, 1);
}

// Interior point of the cone: positive definite / positive blocks.
inline Matrix InteriorBlock(std::mt19937_64& rng, const BlockSpec& spec) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  switch (spec.kind) {
    case BlockKind::kMatrix:
      return RandomPsd(rng, spec.size, 0.5).matrix();
    case BlockKind::kDiag: {
      Matrix v(spec.size, 1);
      for (int i = 0; i < spec.size; ++i) v(i, 0) = u(rng);
      return v;
    }
    case BlockKind::kFree:
      return RandomMatrix(rng, 1, 1);
  }
  return {};
}

// A problem with a strictly feasible primal point and a strictly feasible
// dual point, so both optima are attained with zero gap.
inline StandardSdp RandomStrictlyFeasible(std::mt19937_64& rng) {
  const BlockStructure st = RandomStructure(rng);
  StandardSdp prob(st, Sense::kMinimize);
  BlockVector x0;
  BlockVector s0;
  for (const auto& spec : st.blocks()) {
    x0.push_back(InteriorBlock(rng, spec));
    Matrix s = InteriorBlock(rng, spec);
    if (spec.kind == BlockKind::kFree) s.setZero();
    s0.push_back(s);
  }
  std::uniform_int_distribution<int> pick(1, std::max(1, st.ScalarDimension() - 1));
  const int p = std::min(pick(rng), 8);
  Vector y0 = RandomMatrix(rng, p, 1);
  prob.objective = s0;
  for (int j = 0; j < p; ++j) {
    prob.constraints.push_back({st.Zero(), 0.0});
    for (int b = 0; b < st.num_blocks(); ++b) {
      prob.constraints[j].coeffs[b] = RandomBlock(rng, st.block(b));
    }
    prob.constraints[j].rhs = BlockInner(prob.constraints[j].coeffs, x0);
    for (int b = 0; b < st.num_blocks(); ++b) {
      prob.objective[b] += y0(j) * prob.constraints[j].coeffs[b];
    }
  }
  return prob;
}

// Vertex enumeration for  max c^T z  s.t.  G z <= h,  E z = e.
// Returns nullopt if the feasible set has no vertex. The caller guarantees
// that the optimum is finite and attained at a vertex.
inline std::optional<double> LpVertexOracle(const Matrix& g, const Vector& h,
                                            const Matrix& e, const Vector& ev,
                                            const Vector& c) {
  const int d = static_cast<int>(c.size());
  const int ni = static_cast<int>(g.rows());
  const int ne = static_cast<int>(e.rows());
  const int need = d - ne;
  if (need < 0 || need > ni) return std::nullopt;
  std::vector<int> sel(need);
  for (int i = 0; i < need; ++i) sel[i] = i;
  std::optional<double> best;
  while (true) {
    Matrix sys(d, d);
    Vector rhs(d);
    for (int r = 0; r < ne; ++r) {
      sys.row(r) = e.row(r);
      rhs(r) = ev(r);
    }
    for (int r = 0; r < need; ++r) {
      sys.row(ne + r) = g.row(sel[r]);
      rhs(ne + r) = h(sel[r]);
    }
    Eigen::FullPivLU<Matrix> lu(sys);
    if (lu.isInvertible()) {
      const Vector z = lu.solve(rhs);
      const bool feasible =
          (ni == 0 || ((g * z - h).maxCoeff() <= 1e-9 * (1 + h.cwiseAbs().maxCoeff()))) &&
          (ne == 0 || (e * z - ev).cwiseAbs().maxCoeff() <= 1e-9);
      if (feasible) {
        const double val = c.dot(z);
        if (!best || val > *best) best = val;
      }
    }
    int k = need - 1;
    while (k >= 0 && sel[k] == ni - need + k) --k;
    if (k < 0) break;
    ++sel[k];
    for (int r = k + 1; r < need; ++r) sel[r] = sel[r - 1] + 1;
  }
  return best;
}

// Value of the finite zero-sum game in which the row player maximizes p^T Q q.
inline double MatrixGameValue(const Matrix& q) {
  const int r = static_cast<int>(q.rows());
  const int c = static_cast<int>(q.cols());
  // z = (p, v):  -p <= 0,  v - (Q^T p)_j <= 0,  1^T p = 1.
  Matrix g = Matrix::Zero(r + c, r + 1);
  g.topLeftCorner(r, r) = -Matrix::Identity(r, r);
  g.bottomLeftCorner(c, r) = -q.transpose();
  g.bottomRightCorner(c, 1).setOnes();
  Matrix e = Matrix::Zero(1, r + 1);
  e.leftCols(r).setOnes();
  Vector obj = Vector::Zero(r + 1);
  obj(r) = 1.0;
  return *LpVertexOracle(g, Vector::Zero(r + c), e, Vector::Ones(1), obj);
}

// Dense pair with entries in [-scale, scale].
inline SdpPair RandomPair(std::mt19937_64& rng, int n, int m,
                          double scale = 3.0) {
  std::vector<SymMat> a;
  for (int i = 0; i < m; ++i) a.push_back(RandomSym(rng, n) * scale);
  return SdpPair(RandomSym(rng, n) * scale, std::move(a),
                 RandomMatrix(rng, m, 1).col(0) * scale);
}

// Pair with diagonal C and A_i; integer entries in [-3, 3].
inline SdpPair RandomDiagonalPair(std::mt19937_64& rng, int n, int m) {
  std::uniform_int_distribution<int> u(-3, 3);
  auto diag = [&] {
    Vector d(n);
    for (int i = 0; i < n; ++i) d(i) = u(rng);
    return SymMat::Diagonal(d);
  };
  const SymMat c = diag();
  std::vector<SymMat> a;
  for (int i = 0; i < m; ++i) a.push_back(diag());
  Vector b(m);
  for (int i = 0; i < m; ++i) b(i) = u(rng);
  return SdpPair(c, std::move(a), b);
}

// Pure-strategy payoff matrix of the LP Dantzig game for diagonal data, built
// entry by entry: rows x_k, y_i, t, u; columns x_l, y_j, t.
inline Matrix DiagonalDantzigMatrix(const SdpPair& pair, double big_m) {
  const int n = pair.n();
  const int m = pair.m();
  Matrix q = Matrix::Zero(n + m + 2, n + m + 1);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < m; ++j) q(k, n + j) = pair.a(j)(k, k);
    q(k, n + m) = -pair.c()(k, k);
  }
  for (int i = 0; i < m; ++i) {
    for (int l = 0; l < n; ++l) q(n + i, l) = -pair.a(i)(l, l);
    q(n + i, n + m) = pair.b()(i);
  }
  for (int l = 0; l < n; ++l) q(n + m, l) = pair.c()(l, l);
  for (int j = 0; j < m; ++j) q(n + m, n + j) = -pair.b()(j);
  for (int l = 0; l < n + m; ++l) q(n + m + 1, l) = 1.0;
  q(n + m + 1, n + m) = -big_m;
  return q;
}

// Random points of the strategy simplices.
inline Strategy1 RandomStrategy1(std::mt19937_64& rng, int n, int m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Strategy1 s{RandomPsd(rng, n), Vector(m), u(rng), u(rng)};
  for (int i = 0; i < m; ++i) s.y(i) = u(rng);
  const double total = s.x.Trace() + s.y.sum() + s.t + s.u;
  s.x = s.x / total;
  s.y /= total;
  s.t /= total;
  s.u /= total;
  return s;
}

inline Strategy2 RandomStrategy2(std::mt19937_64& rng, int n, int m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Strategy2 s{RandomPsd(rng, n), Vector(m), u(rng)};
  for (int i = 0; i < m; ++i) s.y(i) = u(rng);
  const double total = s.x.Trace() + s.y.sum() + s.t;
  s.x = s.x / total;
  s.y /= total;
  s.t /= total;
  return s;
}

// Largest violation of primal feasibility, dual feasibility and cone
// membership of a solve result.
inline double KktResidual(const StandardSdp& prob, const SolveResult& r) {
  double worst = 0.0;
  for (size_t j = 0; j < prob.constraints.size(); ++j) {
    worst = std::max(worst, std::abs(BlockInner(prob.constraints[j].coeffs,
                                                 r.primal) -
                                     prob.constraints[j].rhs));
  }
  for (int b = 0; b < prob.structure.num_blocks(); ++b) {
    Matrix slack = prob.objective[b];
    for (size_t j = 0; j < prob.constraints.size(); ++j) {
      slack -= r.dual(static_cast<Eigen::Index>(j)) * prob.constraints[j].coeffs[b];
    }
    const BlockSpec& spec = prob.structure.block(b);
    if (spec.kind == BlockKind::kFree) {
      worst = std::max(worst, std::abs(slack(0, 0)));
    } else if (spec.kind == BlockKind::kDiag) {
      worst = std::max(worst, -slack.minCoeff());
      worst = std::max(worst, -r.primal[b].minCoeff());
    } else {
      worst = std::max(worst, -MinEigenvalue(SymMat::Symmetrize(slack)));
      worst = std::max(worst, -MinEigenvalue(SymMat::Symmetrize(r.primal[b])));
    }
  }
  return worst;
}

}  // namespace sdpgame::testing

#endif  // SDPGAME_TESTS_TEST_UTIL_H_
