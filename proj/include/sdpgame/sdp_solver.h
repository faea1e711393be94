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

#ifndef SDPGAME_SDP_SOLVER_H_
#define SDPGAME_SDP_SOLVER_H_

#include "sdpgame/block_sdp.h"

namespace sdpgame {

// Infeasible primal-dual path following with Nesterov-Todd scaling and
// Mehrotra predictor-corrector steps. Free scalars enter the Newton system
// through a bordered Schur complement. Linearly dependent constraints are
// dropped in a presolve pass (recorded in SolveResult::warnings).
//
// Throws std::invalid_argument if the problem is malformed.
SolveResult Solve(const StandardSdp& problem, const SolverOptions& opts = {});

// As Solve(), but on an infeasibility detection the ray is normalized into a
// Farkas certificate:
//   kPrimalInfeasibleDetected: dual = y with beta^T y = 1, dual_slack =
//     -A^T y (psd / nonnegative on cone blocks, ~0 on free blocks).
//   kDualInfeasibleDetected: primal = x in the cone with A x ~ 0 and
//     <c, x> = -1 (minimize) or +1 (maximize).
SolveResult SolveWithCertificate(const StandardSdp& problem,
                                 const SolverOptions& opts = {});

// Residual of a certificate held in `result` (0 for other statuses): the
// largest violation among the defining conditions listed above.
double CertificateResidual(const StandardSdp& problem,
                           const SolveResult& result);

}  // namespace sdpgame

#endif  // SDPGAME_SDP_SOLVER_H_
