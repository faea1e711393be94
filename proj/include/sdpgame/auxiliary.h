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

// The auxiliary feasibility relaxation of an SDP pair
//
//   min w  s.t.  <A_i, X> + w >= b_i,  sum_i y_i A_i - w I <= C,
//                <C, X> - b^T y - w <= 0,  X psd, y >= 0, w >= 0,
//
// its conic dual, and the strict unbounded-direction checks. The relaxation
// has optimal value 0, attained, exactly when a strongly optimal pair exists.

#ifndef SDPGAME_AUXILIARY_H_
#define SDPGAME_AUXILIARY_H_

#include "sdpgame/block_sdp.h"
#include "sdpgame/sdp_model.h"

namespace sdpgame {

// Block order of BuildPrimalAux: X, Z (slack of the matrix inequality), y,
// s (slacks of the linear rows), w, r (slack of the gap row). X and Z are
// one-entry diagonal blocks when n == 1.
struct PrimalAuxBlocks {
  static constexpr int kX = 0;
  static constexpr int kZ = 1;
  static constexpr int kY = 2;
  static constexpr int kS = 3;
  static constexpr int kW = 4;
  static constexpr int kR = 5;
};

// Block order of BuildDualAux: W, z, r, then slacks T (matrix inequality),
// sigma (linear rows), rho (normalization row).
struct DualAuxBlocks {
  static constexpr int kW = 0;
  static constexpr int kZ = 1;
  static constexpr int kR = 2;
  static constexpr int kT = 3;
  static constexpr int kSigma = 4;
  static constexpr int kRho = 5;
};

// Minimization with m + n(n+1)/2 + 1 equality constraints: the linear rows,
// the upper triangle of sum y_i A_i - w I + Z = C, and the gap row.
StandardSdp BuildPrimalAux(const SdpPair& pair);

// max b^T z - <C, W>  s.t.  sum z_i A_i - r C <= 0,  <A_i, W> - r b_i >= 0,
// 1^T z + tr W + r <= 1,  W psd, z >= 0, r >= 0.
StandardSdp BuildDualAux(const SdpPair& pair);

enum class Attainment { kAttained, kSuspectedUnattained };

std::string ToString(Attainment a);

struct AuxSolution {
  SymMat x;
  Vector y;
  double w = 0.0;
  Attainment attained = Attainment::kAttained;
  // Objective of the dual certificate: a lower bound on the infimum, which
  // the dual always attains.
  double lower_bound = 0.0;
};

// Solves the relaxation in two stages: first the optimal value w*, then the
// smallest tr X + 1^T y among points with w <= w* + delta. The second stage
// keeps the returned point bounded when the optimal face is not. A point of
// norm beyond 1e6 * scale, or a solve that diverges, is flagged as
// kSuspectedUnattained; non-attainment is never certified.
//
// Throws SolverFailure if a stage fails without diverging iterates.
AuxSolution SolveAux(const SdpPair& pair, const SolverOptions& opts = {});

// W psd (to -tol), min_i <A_i, W> > tol * scale and <C, W> < -tol * scale.
// Throws std::invalid_argument on a dimension mismatch.
bool VerifyStrictPrimalUnbounded(const SdpPair& pair, const SymMat& w,
                                 double tol);

// y >= -tol, lambda_max(sum y_i A_i) < -tol * scale and b^T y > tol * scale.
// Throws std::invalid_argument on a length mismatch.
bool VerifyStrictDualUnbounded(const SdpPair& pair, const Vector& y,
                               double tol);

}  // namespace sdpgame

#endif  // SDPGAME_AUXILIARY_H_
