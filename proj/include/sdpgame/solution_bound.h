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

// Size bounds for optimal solutions: bitsize of the data, dimensions of the
// KKT system, the coordinate-bound exponents, and the solution bound M fed to
// the game (a certified exponent and a practical numeric value).

#ifndef SDPGAME_SOLUTION_BOUND_H_
#define SDPGAME_SOLUTION_BOUND_H_

#include <optional>
#include <string>

#include "sdpgame/auxiliary.h"
#include "sdpgame/block_sdp.h"
#include "sdpgame/sdp_model.h"

namespace sdpgame {

// ceil(log2(x)) for x >= 1. Throws std::invalid_argument for x < 1.
BigInt CeilLog2(const BigInt& x);

struct BitsizeProfile {
  BigInt tau0;  // 1 + max ceil(lg |entry|) over nonzero integer entries
};

// Data are first multiplied (C, A_i and b jointly) by the LCM of all
// denominators. All-zero data give tau0 = 1.
// Throws std::invalid_argument for a float-mode pair.
BitsizeProfile InputBitsize(const SdpPair& pair);

struct KktDimensions {
  BigInt variables;  // N = n(n+1) + m
  BigInt equations;  // p = m + (3n^2 + n)/2
  int degree = 2;
};

// Throws std::invalid_argument unless n, m >= 1.
KktDimensions KktDims(int n, int m);

// tau + N + ceil(lg p).
BigInt SquaredHeight(const BigInt& tau, const BigInt& n_vars,
                     const BigInt& n_eqs);

// (N^2 - N)/2 + 2^N + N (tau + N + 2) 2^(N-1). Throws unless N >= 1.
BigInt Eta1(const BigInt& n_vars, const BigInt& tau);

struct AuxDimensions {
  BigInt n_bar;  // 2n + 2m + 2
  BigInt m_bar;  // m + n(n+1)/2 + 1
  BigInt vars;   // n_bar (n_bar + 1) + m_bar
  BigInt eqs;    // m_bar + n_bar (n_bar + 1)/2 + n_bar^2
};

// Throws std::invalid_argument unless n, m >= 1.
AuxDimensions AuxDims(int n, int m);

// Coordinate-bound exponent of the auxiliary program:
//   (N^2 - N)/2 + 2N + N (t + N + 2) 2^(N-1),  t = tau0 + N + ceil(lg p)
// with (N, p) from AuxDims. The linear 2N term differs from the 2^N of
// Eta1; both are evaluated as written.
BigInt EtaBar(int n, int m, const BigInt& tau0);

enum class BoundMode { kCertified, kPractical, kArbitrary };

std::string ToString(BoundMode mode);

struct SolutionBoundM {
  BoundMode mode = BoundMode::kArbitrary;
  // Numeric M for the game; +infinity in certified mode.
  double value = 1.0;
  // Exponent e with M <= 2^e; set in certified mode.
  std::optional<BigInt> certified_log2;
};

// M = (n+m) 2^EtaBar + 1, reported as the exponent EtaBar + ceil(lg(n+m)) + 1.
// Throws std::invalid_argument for a float-mode pair.
SolutionBoundM CertifiedBoundM(const SdpPair& pair);

// From a solved relaxation: ceil(tr X + 1^T y + 1) + margin when attained
// (the ceiling forgives 1e-6 relative rounding), otherwise M = 1 in
// arbitrary mode.
SolutionBoundM PracticalBoundM(const AuxSolution& aux, double margin = 1.0);

// Solves the relaxation, then as above. Propagates SolverFailure.
SolutionBoundM PracticalBoundM(const SdpPair& pair,
                               const SolverOptions& opts = {},
                               double margin = 1.0);

struct KhachiyanProblem {
  StandardSdp problem;
  // 2^(-(tau+1) 2^n + tau); underflows to 0 for large n.
  double optimum = 0.0;
};

// min x_n  s.t.  [[x_i, x_{i-1}], [x_{i-1}, 2^tau]] psd (i = 1..n), x_0 = 1/2.
// Block i-1 holds the i-th 2 x 2 matrix; block n is the scalar x_0.
// Throws std::invalid_argument unless 1 <= n <= 30 and 1 <= tau <= 60.
KhachiyanProblem KhachiyanInstance(int n, int tau);

}  // namespace sdpgame

#endif  // SDPGAME_SOLUTION_BOUND_H_
