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

// The modified semidefinite Dantzig game G_M of an SDP pair. Player 1 picks a
// trace-one block-diagonal psd matrix diag(X, y, t, u), player 2 picks
// diag(X, y, t), and the payoff to player 1 is
//
//   sum_i y1_i (t2 b_i - <A_i, X2>) + <X1, sum_i y2_i A_i - t2 C>
//     + t1 (<C, X2> - b^T y2) + u (tr X2 + 1^T y2 - t2 M).
//
// Dropping u gives the symmetric subgame G, whose value is zero.

#ifndef SDPGAME_DANTZIG_GAME_H_
#define SDPGAME_DANTZIG_GAME_H_

#include "sdpgame/block_sdp.h"
#include "sdpgame/sdp_model.h"

namespace sdpgame {

struct Strategy1 {
  SymMat x;
  Vector y;
  double t = 0.0;
  double u = 0.0;
};

struct Strategy2 {
  SymMat x;
  Vector y;
  double t = 0.0;
};

// Cone membership to -tol and |trace - 1| <= tol; false on a size mismatch.
bool IsValidStrategy(const Strategy1& s, int n, int m, double tol);
bool IsValidStrategy(const Strategy2& s, int n, int m, double tol);

// A block-diagonal symmetric matrix diag(matrix, diagonal).
struct BlockDiagonal {
  SymMat matrix;
  Vector diagonal;

  int size() const { return matrix.dim() + static_cast<int>(diagonal.size()); }
  double MinEigenvalue() const;
  double MaxEigenvalue() const;
  Matrix Dense() const;
};

// Blockwise Frobenius product. Throws std::invalid_argument on a shape
// mismatch.
double Inner(const BlockDiagonal& a, const BlockDiagonal& b);

// diag(X, y, t, u) and diag(X, y, t).
BlockDiagonal AsBlocks(const Strategy1& s);
BlockDiagonal AsBlocks(const Strategy2& s);

// All functions below throw std::invalid_argument when a strategy does not
// match the pair's dimensions or M <= 0.
double Payoff(const SdpPair& pair, double big_m, const Strategy1& s1,
              const Strategy2& s2);

// K(s1) of size n+m+1 with Payoff(s1, s2) = <K(s1), AsBlocks(s2)>:
//   diag(t C - sum y_i A_i + u I,  <X, A_i> - t b_i + u,  b^T y - <X, C> - u M)
BlockDiagonal ResponseK(const SdpPair& pair, double big_m, const Strategy1& s1);

// L(s2) of size n+m+2 with Payoff(s1, s2) = <AsBlocks(s1), L(s2)>:
//   diag(sum y_i A_i - t C,  t b_i - <A_i, X>,  <C, X> - b^T y,
//        tr X + 1^T y - t M)
BlockDiagonal ResponseL(const SdpPair& pair, double big_m, const Strategy2& s2);

// min over player 2 of Payoff(s1, .) = lambda_min(K(s1)).
double BestResponseValueP2(const SdpPair& pair, double big_m,
                           const Strategy1& s1);
// max over player 1 of Payoff(., s2) = lambda_max(L(s2)).
double BestResponseValueP1(const SdpPair& pair, double big_m,
                           const Strategy2& s2);

struct Player1Blocks {
  static constexpr int kX = 0;
  static constexpr int kY = 1;
  static constexpr int kT = 2;
  static constexpr int kU = 3;
  static constexpr int kV = 4;  // free game value
  static constexpr int kS = 5;  // slack of K - vI, matrix part
  static constexpr int kSigma = 6;
  static constexpr int kSigmaT = 7;
};

struct Player2Blocks {
  static constexpr int kX = 0;
  static constexpr int kY = 1;
  static constexpr int kT = 2;
  static constexpr int kV = 3;  // free game value
  static constexpr int kS = 4;  // slack of vI - L, matrix part
  static constexpr int kSigma = 5;
  static constexpr int kSigmaT = 6;
  static constexpr int kSigmaU = 7;
};

// max v  s.t.  K(s1) - v I psd, s1 a player-1 strategy.
StandardSdp GameSdpPlayer1(const SdpPair& pair, double big_m);
// min v  s.t.  v I - L(s2) psd, s2 a player-2 strategy.
StandardSdp GameSdpPlayer2(const SdpPair& pair, double big_m);

struct GameSolution {
  double value = 0.0;
  Strategy1 s1;
  Strategy2 s2;
  // max(|v1 - v2|, |lambda_min(K(s1)) - v|, |lambda_max(L(s2)) - v|)
  double residual = 0.0;
};

// Solves both player programs. Strategies are projected onto the cone and
// rescaled to trace exactly one before the residual is measured.
// Throws SolverFailure naming the player whose program failed.
GameSolution SolveGame(const SdpPair& pair, double big_m,
                       const SolverOptions& opts = {});

// Payoff of the symmetric subgame: Payoff with u = 0, both arguments being
// trace-one strategies over n+m+1 blocks.
double SubgamePayoff(const SdpPair& pair, const Strategy2& z1,
                     const Strategy2& z2);

}  // namespace sdpgame

#endif  // SDPGAME_DANTZIG_GAME_H_
