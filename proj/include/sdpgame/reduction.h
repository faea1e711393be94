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

// End-to-end reduction of an SDP pair to its modified Dantzig game: choose M,
// solve the game, then read off either a strongly optimal pair (value zero)
// or an unbounded direction (positive value). Every conclusion is re-checked
// with independent arithmetic; anything that fails the check is reported as
// inconclusive rather than guessed.

#ifndef SDPGAME_REDUCTION_H_
#define SDPGAME_REDUCTION_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sdpgame/auxiliary.h"
#include "sdpgame/dantzig_game.h"
#include "sdpgame/sdp_model.h"
#include "sdpgame/solution_bound.h"

namespace sdpgame {

enum class OutcomeKind {
  kStronglyOptimal,
  kPrimalUnboundedCert,  // direction X for the primal: the dual is infeasible
  kDualUnboundedCert,    // direction y for the dual: the primal is infeasible
  kInconclusive,
};

std::string ToString(OutcomeKind kind);

// Raised when a strategy does not have the shape the recovery step needs.
class RecoveryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (X / t, y / t). Throws RecoveryError if t <= tol.
std::pair<SymMat, Vector> RecoverOptimal(const Strategy2& s2, double tol);

struct CertificateFragment {
  // kPrimalUnboundedCert when <C, X'> < -tol * scale (the dual direction, if
  // also present, is reported alongside), else kDualUnboundedCert when
  // b^T y' > tol * scale, else kInconclusive.
  OutcomeKind kind = OutcomeKind::kInconclusive;
  std::optional<SymMat> direction_x;
  std::optional<Vector> direction_y;
};

// Reads the directions (X', y') off player 1's strategy. Throws RecoveryError
// if t' > tol.
CertificateFragment RecoverCertificate(const Strategy1& s1,
                                       const SdpPair& pair, double tol);

// Relaxation value implied by a positive game value: v (M + 1) / (1 - v).
// Throws std::invalid_argument unless 0 <= v < 1.
double AuxValueRelation(double v, double big_m);

// X psd (to tol), <A_i, X> >= -tol for all i, <C, X> < -tol * scale.
bool VerifyPrimalDirection(const SdpPair& pair, const SymMat& x, double tol);
// y >= -tol, lambda_max(sum y_i A_i) <= tol * scale, b^T y > tol * scale.
bool VerifyDualDirection(const SdpPair& pair, const Vector& y, double tol);

struct PipelineConfig {
  SolverOptions solver_opts = {.tol = 1e-10};
  // Game values at or below this count as zero.
  double value_zero_threshold = 1e-6;
  // Tolerance of every verification step.
  double verify_tol = 1e-6;
  // Use this M instead of the practical bound from the relaxation.
  std::optional<double> fixed_m;
  double margin = 1.0;
};

struct Outcome {
  OutcomeKind kind = OutcomeKind::kInconclusive;
  std::optional<SymMat> x_opt;
  std::optional<Vector> y_opt;
  std::optional<SymMat> direction_x;
  std::optional<Vector> direction_y;
  double game_value = 0.0;
  SolutionBoundM m_used;
  GameSolution game;
  // Relaxation solved to choose M (practical mode only).
  std::optional<AuxSolution> aux;
  // v (M + 1) / (1 - v) for positive values.
  std::optional<double> implied_aux_value;
  // Named residuals of every check performed, in a stable order.
  std::map<std::string, double> diagnostics;
  std::vector<std::string> notes;
};

// Throws SolverFailure if a solve fails, std::invalid_argument on a bad
// configuration.
Outcome RunPipeline(const SdpPair& pair, const PipelineConfig& config = {});

}  // namespace sdpgame

#endif  // SDPGAME_REDUCTION_H_
