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

#include "sdpgame/sdp_model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace sdpgame {

SdpPair::SdpPair(SymMat c, std::vector<SymMat> a, Vector b)
    : c_(std::move(c)), a_(std::move(a)), b_(std::move(b)) {
  Validate();
}

SdpPair::SdpPair(ExactPairData exact) {
  c_ = exact.c.ToFloat();
  a_.reserve(exact.a.size());
  for (const auto& ai : exact.a) a_.push_back(ai.ToFloat());
  b_.resize(static_cast<Eigen::Index>(exact.b.size()));
  for (size_t i = 0; i < exact.b.size(); ++i) {
    b_(static_cast<Eigen::Index>(i)) = RationalToDouble(exact.b[i]);
  }
  exact_ = std::move(exact);
  Validate();
}

void SdpPair::Validate() const {
  if (c_.dim() < 1) throw std::invalid_argument("SDP pair needs n >= 1");
  if (a_.empty()) throw std::invalid_argument("SDP pair needs m >= 1");
  for (const auto& ai : a_) {
    if (ai.dim() != c_.dim()) {
      throw std::invalid_argument("constraint matrix dimension differs from C");
    }
  }
  if (b_.size() != static_cast<Eigen::Index>(a_.size())) {
    throw std::invalid_argument("length of b differs from number of constraints");
  }
  if (!b_.allFinite()) throw std::invalid_argument("b has non-finite entries");
}

const ExactPairData& SdpPair::exact() const {
  if (!exact_) throw std::logic_error("SDP pair is in float mode");
  return *exact_;
}

double SdpPair::Scale() const {
  double s = c_.MaxAbsEntry();
  for (const auto& ai : a_) s = std::max(s, ai.MaxAbsEntry());
  s = std::max(s, b_.cwiseAbs().maxCoeff());
  return 1.0 + s;
}

SymMat SdpPair::Combine(const Vector& y) const {
  if (y.size() != m()) throw std::invalid_argument("y has wrong length");
  Matrix acc = Matrix::Zero(n(), n());
  for (int i = 0; i < m(); ++i) acc += y(i) * a_[i].matrix();
  return SymMat(std::move(acc));
}

SymMat SdpPair::DualSlack(const Vector& y) const { return c_ - Combine(y); }

Vector SdpPair::ApplyConstraints(const SymMat& x) const {
  if (x.dim() != n()) throw std::invalid_argument("X has wrong dimension");
  Vector out(m());
  for (int i = 0; i < m(); ++i) out(i) = FrobeniusInner(a_[i], x);
  return out;
}

ResidualReport Residuals(const SdpPair& pair, const PrimalPoint& x,
                         const DualPoint& y) {
  ResidualReport r;
  const Vector ax = pair.ApplyConstraints(x.x);
  const SymMat slack = pair.DualSlack(y.y);
  r.min_eig_slack = std::min({MinEigenvalue(x.x), MinEigenvalue(slack),
                              y.y.minCoeff()});
  r.worst_linear_violation = std::max(0.0, (pair.b() - ax).maxCoeff());
  r.gap = FrobeniusInner(pair.c(), x.x) - pair.b().dot(y.y);
  return r;
}

bool VerifyStronglyOptimal(const SdpPair& pair, const PrimalPoint& x,
                           const DualPoint& y, double tol) {
  const Vector ax = pair.ApplyConstraints(x.x);
  const double scale = pair.Scale();
  const double y_scale = 1.0 + y.y.cwiseAbs().maxCoeff();
  if (!IsPsd(x.x, tol)) return false;
  if (y.y.minCoeff() < -tol * y_scale) return false;
  if ((pair.b() - ax).maxCoeff() > tol * scale) return false;
  if (!IsPsd(pair.DualSlack(y.y), tol)) return false;
  const double primal_value = FrobeniusInner(pair.c(), x.x);
  const double gap = primal_value - pair.b().dot(y.y);
  return gap <= tol * (1.0 + std::abs(primal_value));
}

}  // namespace sdpgame
