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

#include "sdpgame/reduction.h"

#include <algorithm>
#include <cmath>

namespace sdpgame {
namespace {

constexpr char kNoStrongPair[] =
    "game value positive; no pair of strongly optimal solutions exists";

// Outcome of one classification branch.
struct Branch {
  bool ok = false;
  std::string reason;
};

Branch BoundedBranch(const SdpPair& pair, const PipelineConfig& config,
                     Outcome& out) {
  std::pair<SymMat, Vector> xy;
  try {
    xy = RecoverOptimal(out.game.s2, config.verify_tol);
  } catch (const RecoveryError& e) {
    return {false, e.what()};
  }
  const ResidualReport r = Residuals(pair, {xy.first}, {xy.second});
  out.diagnostics["bounded.min_eig_slack"] = r.min_eig_slack;
  out.diagnostics["bounded.worst_linear_violation"] = r.worst_linear_violation;
  out.diagnostics["bounded.gap"] = r.gap;
  if (!VerifyStronglyOptimal(pair, {xy.first}, {xy.second},
                             config.verify_tol)) {
    return {false, "recovered (X, y) fails the strong optimality check"};
  }
  out.kind = OutcomeKind::kStronglyOptimal;
  out.x_opt = std::move(xy.first);
  out.y_opt = std::move(xy.second);
  return {true, ""};
}

Branch CertificateBranch(const SdpPair& pair, const PipelineConfig& config,
                         Outcome& out) {
  const double tol = config.verify_tol;
  const Strategy1& s1 = out.game.s1;
  if (out.game_value >= 0.0 && out.game_value < 1.0) {
    out.implied_aux_value = AuxValueRelation(out.game_value, out.m_used.value);
  }
  out.diagnostics["cert.u_minus_v"] = s1.u - out.game_value;
  if (std::abs(s1.u - out.game_value) > tol) {
    // Expected structure is u = v; a certificate can still verify on its own.
    out.notes.push_back("player 1 has u != v; certificate rests on "
                        "independent verification only");
  }
  CertificateFragment frag;
  try {
    frag = RecoverCertificate(s1, pair, tol);
  } catch (const RecoveryError& e) {
    return {false, e.what()};
  }
  if (frag.direction_x) {
    const SymMat& x = *frag.direction_x;
    out.diagnostics["cert.primal.min_eig"] = MinEigenvalue(x);
    out.diagnostics["cert.primal.min_constraint"] =
        pair.ApplyConstraints(x).minCoeff();
    out.diagnostics["cert.primal.objective"] = FrobeniusInner(pair.c(), x);
    if (VerifyPrimalDirection(pair, x, tol)) out.direction_x = x;
  }
  if (frag.direction_y) {
    const Vector& y = *frag.direction_y;
    out.diagnostics["cert.dual.min_y"] = y.minCoeff();
    out.diagnostics["cert.dual.max_eig"] = MaxEigenvalue(pair.Combine(y));
    out.diagnostics["cert.dual.objective"] = pair.b().dot(y);
    if (VerifyDualDirection(pair, y, tol)) out.direction_y = y;
  }
  if (out.direction_x) {
    out.kind = OutcomeKind::kPrimalUnboundedCert;
    out.notes.push_back("primal direction certifies that the dual is infeasible");
  } else if (out.direction_y) {
    out.kind = OutcomeKind::kDualUnboundedCert;
  } else {
    return {false, "no certificate inequality holds strictly"};
  }
  if (out.direction_y) {
    out.notes.push_back("dual direction certifies that the primal is infeasible");
  }
  return {true, ""};
}

}  // namespace

std::string ToString(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kStronglyOptimal:
      return "StronglyOptimal";
    case OutcomeKind::kPrimalUnboundedCert:
      return "PrimalUnboundedCert";
    case OutcomeKind::kDualUnboundedCert:
      return "DualUnboundedCert";
    case OutcomeKind::kInconclusive:
      return "Inconclusive";
  }
  return "Unknown";
}

std::pair<SymMat, Vector> RecoverOptimal(const Strategy2& s2, double tol) {
  if (!(s2.t > tol)) {
    throw RecoveryError("t vanished; bounded-case recovery impossible");
  }
  return {s2.x / s2.t, s2.y / s2.t};
}

CertificateFragment RecoverCertificate(const Strategy1& s1,
                                       const SdpPair& pair, double tol) {
  if (s1.t > tol) throw RecoveryError("t' nonzero in unbounded regime");
  const double scale = pair.Scale();
  CertificateFragment frag;
  if (FrobeniusInner(pair.c(), s1.x) < -tol * scale) {
    frag.kind = OutcomeKind::kPrimalUnboundedCert;
    frag.direction_x = s1.x;
  }
  if (pair.b().dot(s1.y) > tol * scale) {
    if (!frag.direction_x) frag.kind = OutcomeKind::kDualUnboundedCert;
    frag.direction_y = s1.y;
  }
  return frag;
}

double AuxValueRelation(double v, double big_m) {
  if (!(v >= 0.0 && v < 1.0)) {
    throw std::invalid_argument("game value must lie in [0, 1)");
  }
  return v * (big_m + 1.0) / (1.0 - v);
}

bool VerifyPrimalDirection(const SdpPair& pair, const SymMat& x, double tol) {
  if (x.dim() != pair.n()) {
    throw std::invalid_argument("direction has wrong dimension");
  }
  if (!IsPsd(x, tol)) return false;
  if (pair.ApplyConstraints(x).minCoeff() < -tol) return false;
  return FrobeniusInner(pair.c(), x) < -tol * pair.Scale();
}

bool VerifyDualDirection(const SdpPair& pair, const Vector& y, double tol) {
  if (y.size() != pair.m()) {
    throw std::invalid_argument("direction has wrong length");
  }
  const double scale = pair.Scale();
  if (y.minCoeff() < -tol) return false;
  if (MaxEigenvalue(pair.Combine(y)) > tol * scale) return false;
  return pair.b().dot(y) > tol * scale;
}

Outcome RunPipeline(const SdpPair& pair, const PipelineConfig& config) {
  if (!(config.value_zero_threshold > 0.0) || !(config.verify_tol > 0.0)) {
    throw std::invalid_argument("pipeline thresholds must be positive");
  }
  Outcome out;
  if (config.fixed_m) {
    out.m_used.mode = BoundMode::kArbitrary;
    out.m_used.value = *config.fixed_m;
    out.notes.push_back("M fixed by the caller");
  } else {
    out.aux = SolveAux(pair, config.solver_opts);
    out.m_used = PracticalBoundM(*out.aux, config.margin);
    out.diagnostics["aux.w"] = out.aux->w;
    if (out.aux->attained != Attainment::kAttained) {
      out.notes.push_back("relaxation infimum suspected unattained; M = 1");
    }
  }
  if (pair.is_exact()) {
    out.m_used.certified_log2 = CertifiedBoundM(pair).certified_log2;
  }

  out.game = SolveGame(pair, out.m_used.value, config.solver_opts);
  out.game_value = out.game.value;
  out.diagnostics["game.residual"] = out.game.residual;
  out.diagnostics["game.s1.t"] = out.game.s1.t;
  out.diagnostics["game.s1.u"] = out.game.s1.u;
  out.diagnostics["game.s2.t"] = out.game.s2.t;

  const bool zero_value = out.game_value <= config.value_zero_threshold;
  const auto primary = zero_value ? BoundedBranch : CertificateBranch;
  const auto secondary = zero_value ? CertificateBranch : BoundedBranch;
  const Branch first = primary(pair, config, out);
  if (first.ok) return out;
  out.notes.push_back(std::string(zero_value ? "bounded" : "certificate") +
                      " branch: " + first.reason);
  // Any independently verified result is sound, so try the other reading.
  const Branch second = secondary(pair, config, out);
  if (second.ok) {
    out.notes.push_back("classified by the secondary branch");
    return out;
  }
  out.notes.push_back(std::string(zero_value ? "certificate" : "bounded") +
                      " branch: " + second.reason);
  out.kind = OutcomeKind::kInconclusive;
  if (!zero_value) out.notes.push_back(kNoStrongPair);
  return out;
}

}  // namespace sdpgame
