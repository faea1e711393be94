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

#include "sdpgame/solution_bound.h"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "sdpgame/sdp_solver.h"

namespace sdpgame {
namespace {

namespace mp = boost::multiprecision;

void CheckSizes(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("need n, m >= 1");
}

BigInt Pow2(const BigInt& e) {
  if (e < 0) throw std::invalid_argument("negative exponent");
  BigInt out = 1;
  return out << static_cast<unsigned>(e);
}

template <typename F>
void ForEachDatum(const ExactPairData& d, F&& f) {
  for (const auto& v : d.c.entries()) f(v);
  for (const auto& ai : d.a) {
    for (const auto& v : ai.entries()) f(v);
  }
  for (const auto& v : d.b) f(v);
}

}  // namespace

BigInt CeilLog2(const BigInt& x) {
  if (x < 1) throw std::invalid_argument("CeilLog2 needs x >= 1");
  if (x == 1) return 0;
  return BigInt(mp::msb(BigInt(x - 1))) + 1;
}

BitsizeProfile InputBitsize(const SdpPair& pair) {
  if (!pair.is_exact()) {
    throw std::invalid_argument("bitsize needs exact rational data");
  }
  const ExactPairData& data = pair.exact();
  BigInt lcm = 1;
  ForEachDatum(data, [&](const Rational& v) {
    lcm = mp::lcm(lcm, BigInt(mp::denominator(v)));
  });
  BigInt widest = 0;
  ForEachDatum(data, [&](const Rational& v) {
    if (v == 0) return;
    const BigInt scaled = mp::abs(BigInt(mp::numerator(v)) *
                                  (lcm / BigInt(mp::denominator(v))));
    const BigInt bits = CeilLog2(scaled);
    if (bits > widest) widest = bits;
  });
  return {1 + widest};
}

KktDimensions KktDims(int n, int m) {
  CheckSizes(n, m);
  const BigInt bn = n;
  KktDimensions d;
  d.variables = bn * (bn + 1) + m;
  d.equations = m + (3 * bn * bn + bn) / 2;
  return d;
}

BigInt SquaredHeight(const BigInt& tau, const BigInt& n_vars,
                     const BigInt& n_eqs) {
  return tau + n_vars + CeilLog2(n_eqs);
}

BigInt Eta1(const BigInt& n_vars, const BigInt& tau) {
  if (n_vars < 1) throw std::invalid_argument("Eta1 needs N >= 1");
  const BigInt& N = n_vars;
  return (N * N - N) / 2 + Pow2(N) + N * (tau + N + 2) * Pow2(N - 1);
}

AuxDimensions AuxDims(int n, int m) {
  CheckSizes(n, m);
  const BigInt bn = n;
  AuxDimensions d;
  d.n_bar = 2 * bn + 2 * m + 2;
  d.m_bar = m + bn * (bn + 1) / 2 + 1;
  d.vars = d.n_bar * (d.n_bar + 1) + d.m_bar;
  d.eqs = d.m_bar + d.n_bar * (d.n_bar + 1) / 2 + d.n_bar * d.n_bar;
  return d;
}

BigInt EtaBar(int n, int m, const BigInt& tau0) {
  if (tau0 < 1) throw std::invalid_argument("EtaBar needs tau0 >= 1");
  const AuxDimensions d = AuxDims(n, m);
  const BigInt& N = d.vars;
  const BigInt height = SquaredHeight(tau0, N, d.eqs);
  return (N * N - N) / 2 + 2 * N + N * (height + N + 2) * Pow2(N - 1);
}

std::string ToString(BoundMode mode) {
  switch (mode) {
    case BoundMode::kCertified:
      return "Certified";
    case BoundMode::kPractical:
      return "Practical";
    case BoundMode::kArbitrary:
      return "Arbitrary";
  }
  return "Unknown";
}

SolutionBoundM CertifiedBoundM(const SdpPair& pair) {
  const BigInt tau0 = InputBitsize(pair).tau0;
  SolutionBoundM out;
  out.mode = BoundMode::kCertified;
  out.value = std::numeric_limits<double>::infinity();
  out.certified_log2 =
      EtaBar(pair.n(), pair.m(), tau0) + CeilLog2(pair.n() + pair.m()) + 1;
  return out;
}

SolutionBoundM PracticalBoundM(const AuxSolution& aux, double margin) {
  if (!(margin >= 0.0)) throw std::invalid_argument("margin must be >= 0");
  SolutionBoundM out;
  if (aux.attained != Attainment::kAttained) {
    out.mode = BoundMode::kArbitrary;
    out.value = 1.0;
    return out;
  }
  const double size = aux.x.Trace() + aux.y.sum() + 1.0;
  out.mode = BoundMode::kPractical;
  out.value = std::max(
      1.0, std::ceil(size - 1e-6 * (1.0 + std::abs(size))) + margin);
  return out;
}

SolutionBoundM PracticalBoundM(const SdpPair& pair, const SolverOptions& opts,
                               double margin) {
  return PracticalBoundM(SolveAux(pair, opts), margin);
}

KhachiyanProblem KhachiyanInstance(int n, int tau) {
  if (n < 1 || n > 30 || tau < 1 || tau > 60) {
    throw std::invalid_argument("Khachiyan instance needs 1 <= n <= 30 and "
                                "1 <= tau <= 60");
  }
  BlockStructure st;
  for (int i = 0; i < n; ++i) st.AddMatrix(2);
  const int x0 = st.AddDiag(1);
  KhachiyanProblem out{StandardSdp(st, Sense::kMinimize), 0.0};
  StandardSdp& p = out.problem;
  p.SetObjective(n - 1, 0, 0, 1.0);
  const int fix = p.AddConstraint(0.5);
  p.SetCoeff(fix, x0, 0, 0, 1.0);
  for (int i = 0; i < n; ++i) {
    const int corner = p.AddConstraint(std::ldexp(1.0, tau));
    p.SetCoeff(corner, i, 1, 1, 1.0);
    // Off-diagonal entry of block i equals the previous x.
    const int link = p.AddConstraint(0.0);
    p.SetCoeff(link, i, 0, 1, 0.5);
    if (i == 0) {
      p.SetCoeff(link, x0, 0, 0, -1.0);
    } else {
      p.SetCoeff(link, i - 1, 0, 0, -1.0);
    }
  }
  const std::int64_t exponent =
      -(static_cast<std::int64_t>(tau) + 1) * (std::int64_t{1} << n) + tau;
  out.optimum = exponent < std::numeric_limits<int>::min()
                    ? 0.0
                    : std::ldexp(1.0, static_cast<int>(exponent));
  return out;
}

}  // namespace sdpgame
