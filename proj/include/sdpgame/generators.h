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

// Deterministic instance generators. All instances carry exact rational data.

#ifndef SDPGAME_GENERATORS_H_
#define SDPGAME_GENERATORS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdpgame/sdp_model.h"

namespace sdpgame {

struct CorpusEntry {
  std::string name;
  SdpPair pair;
  // One of StronglyOptimal, PrimalUnboundedCert, DualUnboundedCert,
  // Inconclusive.
  std::string expected_outcome;
  // Solution bound known to be admissible for the instance.
  double reference_m = 1.0;
};

// Five small pairs, one per behavior of the reduction:
//   bounded            C = [[1,1],[1,2]], A = [[1,1],[1,0]], b = 1
//   primal_unbounded   C = [[0,-1],[-1,0]], A = [[-1,1],[1,0]], b = 1
//   both_infeasible    C = [[0,-1],[-1,0]], A = diag(-1, 0), b = 1
//   unattained_aux     C = [[-2,-1],[-1,-2]], A = diag(-1, 0), b = 1
//   duality_gap        3 x 3, both optima attained with a gap of one
std::vector<CorpusEntry> ReferenceCorpus();

// Looks an entry up by name; nullopt if unknown.
std::optional<CorpusEntry> CorpusInstance(const std::string& name);

// Pair with strictly feasible primal and dual points, so a strongly optimal
// pair exists. Entries are rationals with small denominators.
// Throws std::invalid_argument unless 1 <= n, m <= 16.
SdpPair RandomSlaterPair(int n, int m, std::uint64_t seed);

// Pair with a positive definite W such that <A_i, W> > 0 and <C, W> < 0, so
// the primal is unbounded along W and the dual infeasible.
// Throws std::invalid_argument unless 1 <= n, m <= 16.
SdpPair RandomUnboundedPair(int n, int m, std::uint64_t seed);

// Khachiyan's squaring chain in normal form: X is 2n x 2n and its i-th
// diagonal 2 x 2 block plays [[x_i, x_{i-1}], [x_{i-1}, 2^tau]] with
// x_0 = 1/2. Each equality becomes a pair of opposite inequalities. The
// optimum <C, X> = x_n is 2^(-(tau+1) 2^n + tau).
// Throws std::invalid_argument unless 1 <= n <= 16 and 1 <= tau <= 60.
SdpPair KhachiyanPair(int n, int tau);

}  // namespace sdpgame

#endif  // SDPGAME_GENERATORS_H_
