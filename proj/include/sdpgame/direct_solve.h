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

// The primal and dual normal-form programs written in standard form and
// solved head-on, for comparison with the game route.

#ifndef SDPGAME_DIRECT_SOLVE_H_
#define SDPGAME_DIRECT_SOLVE_H_

#include <optional>
#include <vector>

#include "sdpgame/block_sdp.h"
#include "sdpgame/sdp_model.h"

namespace sdpgame {

struct DirectPrimalBlocks {
  static constexpr int kX = 0;
  static constexpr int kSlack = 1;  // s_i = <A_i, X> - b_i
};

struct DirectDualBlocks {
  static constexpr int kY = 0;
  static constexpr int kSlack = 1;  // Z = C - sum y_i A_i
};

// min <C, X>  s.t.  <A_i, X> - s_i = b_i,  X psd,  s >= 0.
StandardSdp BuildPrimalProgram(const SdpPair& pair);
// max b^T y  s.t.  sum y_i A_i + Z = C,  y >= 0,  Z psd.
StandardSdp BuildDualProgram(const SdpPair& pair);

struct PrimalReducerBlocks {
  static constexpr int kY = 0;
  static constexpr int kW = 1;
  static constexpr int kSigma = 2;  // b^T y
};

// One facial reduction step for the primal: y >= 0 with W = -sum y_i A_i
// psd, tr W = 1 and b^T y >= 0. Every feasible X then has <W, X> = 0, so
// the feasible set lies on the face of matrices orthogonal to W. A zero
// objective makes this a pure feasibility program.
StandardSdp BuildPrimalReducer(const SdpPair& pair);

// The primal restricted to a face: X = basis X' basis^T.
struct PrimalFace {
  Matrix basis;  // n x r, orthonormal columns
  // basis^T C basis and basis^T A_i basis; constraints that vanish on the
  // face with b_i <= 0 are dropped.
  SdpPair pair;
  std::vector<int> kept;  // original indices of the remaining constraints
  int steps = 0;
};

// Applies reduction steps while the reducer program yields a certificate
// that passes an independent check. Without a certificate the face is the
// whole cone.
PrimalFace ReducePrimalFace(const SdpPair& pair, const SolverOptions& opts = {});

struct DirectSolution {
  // Solve of the primal restricted to `face`; its blocks are in face
  // coordinates.
  SolveResult primal;
  PrimalFace face;
  SolveResult dual;
  // Present when the corresponding solve reached an optimal point; x is in
  // original coordinates.
  std::optional<SymMat> x;
  std::optional<Vector> y;
  // Set when that point's norm exceeds kDirectDivergence times the data
  // scale: the value is then only approached along a diverging sequence of
  // nearly feasible points and may differ from the attained optimum (for
  // example when the dual program is not strictly feasible).
  bool x_diverged = false;
  bool y_diverged = false;
};

inline constexpr double kDirectDivergence = 1e6;

DirectSolution SolveDirect(const SdpPair& pair, const SolverOptions& opts = {});

}  // namespace sdpgame

#endif  // SDPGAME_DIRECT_SOLVE_H_
