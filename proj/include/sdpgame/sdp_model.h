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

// Primal/dual SDP pair in inequality normal form:
//
//   (P)  inf <C,X>   s.t. <A_i,X> >= b_i (i = 1..m), X psd
//   (D)  sup b^T y   s.t. sum_i y_i A_i <= C (Loewner order), y >= 0
//
// together with the feasibility and optimality predicates used to verify
// everything the reduction produces.

#ifndef SDPGAME_SDP_MODEL_H_
#define SDPGAME_SDP_MODEL_H_

#include <optional>
#include <vector>

#include "sdpgame/sym_mat.h"

namespace sdpgame {

// Exact-rational copy of the problem data, kept for bitsize computations.
struct ExactPairData {
  ExactSymMat c;
  std::vector<ExactSymMat> a;
  std::vector<Rational> b;

  bool operator==(const ExactPairData&) const = default;
};

class SdpPair {
 public:
  SdpPair() = default;
  // Float-mode pair. Throws std::invalid_argument unless n, m >= 1, every A_i
  // matches C's dimension and b has m entries.
  SdpPair(SymMat c, std::vector<SymMat> a, Vector b);
  // Exact-mode pair; the float data is derived from the rationals.
  explicit SdpPair(ExactPairData exact);

  int n() const { return c_.dim(); }
  int m() const { return static_cast<int>(a_.size()); }
  const SymMat& c() const { return c_; }
  const std::vector<SymMat>& a() const { return a_; }
  const SymMat& a(int i) const { return a_[i]; }
  const Vector& b() const { return b_; }

  bool is_exact() const { return exact_.has_value(); }
  // Throws std::logic_error for float-mode pairs.
  const ExactPairData& exact() const;

  // 1 + largest absolute data entry; the reference scale for tolerances.
  double Scale() const;

  // sum_i y_i A_i
  SymMat Combine(const Vector& y) const;
  // C - sum_i y_i A_i
  SymMat DualSlack(const Vector& y) const;
  // (<A_1,X>, ..., <A_m,X>)
  Vector ApplyConstraints(const SymMat& x) const;

 private:
  void Validate() const;

  SymMat c_;
  std::vector<SymMat> a_;
  Vector b_;
  std::optional<ExactPairData> exact_;
};

struct PrimalPoint {
  SymMat x;
};

struct DualPoint {
  Vector y;
};

struct ResidualReport {
  // min over {lambda_min(X), lambda_min(C - sum y_i A_i), min_i y_i}
  double min_eig_slack = 0.0;
  // max_i max(0, b_i - <A_i,X>)
  double worst_linear_violation = 0.0;
  // <C,X> - b^T y
  double gap = 0.0;
};

ResidualReport Residuals(const SdpPair& pair, const PrimalPoint& x,
                         const DualPoint& y);

// Weak-duality characterization of a strongly optimal pair, each condition
// checked to the relative tolerance convention of IsPsd.
bool VerifyStronglyOptimal(const SdpPair& pair, const PrimalPoint& x,
                           const DualPoint& y, double tol);

}  // namespace sdpgame

#endif  // SDPGAME_SDP_MODEL_H_
