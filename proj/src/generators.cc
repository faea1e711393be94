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

#include "sdpgame/generators.h"

#include <random>
#include <stdexcept>
#include <utility>

namespace sdpgame {
namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

ExactSymMat FromRows(const RationalMatrix& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<Rational> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
  return ExactSymMat(n, std::move(flat));
}

SdpPair MakePair(const RationalMatrix& c, const std::vector<RationalMatrix>& a,
                 const std::vector<Rational>& b) {
  ExactPairData data;
  data.c = FromRows(c);
  for (const auto& ai : a) data.a.push_back(FromRows(ai));
  data.b = b;
  return SdpPair(std::move(data));
}

void CheckSize(int n, int m) {
  if (n < 1 || n > 16 || m < 1 || m > 16) {
    throw std::invalid_argument("generator sizes must satisfy 1 <= n, m <= 16");
  }
}

// Integer-valued random matrices keep all derived data exact.
class IntSampler {
 public:
  explicit IntSampler(std::uint64_t seed) : rng_(seed) {}

  int Uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  RationalMatrix Symmetric(int n, int lo, int hi) {
    RationalMatrix m(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        m[i][j] = m[j][i] = Uniform(lo, hi);
      }
    }
    return m;
  }

  // G^T G + I with small integer G: positive definite.
  RationalMatrix PositiveDefinite(int n) {
    RationalMatrix g(n, std::vector<Rational>(n));
    for (auto& row : g) {
      for (auto& v : row) v = Uniform(-2, 2);
    }
    RationalMatrix p(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) p[i][j] += g[k][i] * g[k][j];
        if (i == j) p[i][j] += 1;
      }
    }
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

Rational Inner(const RationalMatrix& a, const RationalMatrix& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < a.size(); ++j) s += a[i][j] * b[i][j];
  }
  return s;
}

Rational Trace(const RationalMatrix& a) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i][i];
  return s;
}

void AddScaledIdentity(RationalMatrix& a, const Rational& k) {
  for (size_t i = 0; i < a.size(); ++i) a[i][i] += k;
}

RationalMatrix Zeros(int n) {
  return RationalMatrix(n, std::vector<Rational>(n));
}

// Adds <E, X> = rhs as two inequalities.
void AddEquality(std::vector<RationalMatrix>& a, std::vector<Rational>& b,
                 const RationalMatrix& e, const Rational& rhs) {
  RationalMatrix neg = e;
  for (auto& row : neg) {
    for (auto& v : row) v = -v;
  }
  a.push_back(e);
  b.push_back(rhs);
  a.push_back(std::move(neg));
  b.push_back(-rhs);
}

}  // namespace

std::vector<CorpusEntry> ReferenceCorpus() {
  const Rational z = 0;
  std::vector<CorpusEntry> out;
  out.push_back({"bounded",
                 MakePair({{1, 1}, {1, 2}}, {{{1, 1}, {1, 0}}}, {1}),
                 "StronglyOptimal", 3.0});
  out.push_back({"primal_unbounded",
                 MakePair({{0, -1}, {-1, 0}}, {{{-1, 1}, {1, 0}}}, {1}),
                 "PrimalUnboundedCert", 1.0});
  out.push_back({"both_infeasible",
                 MakePair({{0, -1}, {-1, 0}}, {{{-1, 0}, {0, 0}}}, {1}),
                 "DualUnboundedCert", 1.0});
  // The game value exceeds the 1/2 that X = diag(0, 1/2), u = 1/2 secures,
  // so every optimal player-1 strategy has X(0,0) > 0 and y = 0: neither
  // direction verifies.
  out.push_back({"unattained_aux",
                 MakePair({{-2, -1}, {-1, -2}}, {{{-1, 0}, {0, 0}}}, {1}),
                 "Inconclusive", 1.0});
  out.push_back({"duality_gap",
                 MakePair({{0, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                          {{{0, -1, 0}, {-1, 0, 0}, {0, 0, 1}},
                           {{0, 0, 0}, {0, -1, 0}, {0, 0, 0}}},
                          {1, z}),
                 "Inconclusive", 1.0});
  return out;
}

std::optional<CorpusEntry> CorpusInstance(const std::string& name) {
  for (auto& e : ReferenceCorpus()) {
    if (e.name == name) return e;
  }
  return std::nullopt;
}

SdpPair RandomSlaterPair(int n, int m, std::uint64_t seed) {
  CheckSize(n, m);
  IntSampler s(seed);
  const RationalMatrix x0 = s.PositiveDefinite(n);
  RationalMatrix c = s.PositiveDefinite(n);  // dual slack at y0
  std::vector<RationalMatrix> a;
  std::vector<Rational> b;
  for (int i = 0; i < m; ++i) {
    a.push_back(s.Symmetric(n, -3, 3));
    // <A_i, X0> exceeds b_i by a positive margin.
    b.push_back(Inner(a.back(), x0) - Rational(s.Uniform(1, 4), 2));
    const Rational y0 = Rational(s.Uniform(1, 4), 2);
    for (int r = 0; r < n; ++r) {
      for (int k = 0; k < n; ++k) c[r][k] += y0 * a.back()[r][k];
    }
  }
  return MakePair(c, a, b);
}

SdpPair RandomUnboundedPair(int n, int m, std::uint64_t seed) {
  CheckSize(n, m);
  IntSampler s(seed);
  const RationalMatrix w = s.PositiveDefinite(n);
  const Rational tr_w = Trace(w);
  std::vector<RationalMatrix> a;
  std::vector<Rational> b;
  for (int i = 0; i < m; ++i) {
    RationalMatrix ai = s.Symmetric(n, -3, 3);
    const Rational inner = Inner(ai, w);
    if (inner <= 0) {
      // Shift by k I with k tr W > -inner.
      const Rational k = (-inner) / tr_w + Rational(s.Uniform(1, 3), 2);
      AddScaledIdentity(ai, k);
    }
    a.push_back(std::move(ai));
    b.push_back(s.Uniform(-3, 3));
  }
  RationalMatrix c = s.Symmetric(n, -3, 3);
  const Rational inner = Inner(c, w);
  if (inner >= 0) {
    AddScaledIdentity(c, -(inner / tr_w + Rational(s.Uniform(1, 3), 2)));
  }
  return MakePair(c, a, b);
}

SdpPair KhachiyanPair(int n, int tau) {
  if (n < 1 || n > 16 || tau < 1 || tau > 60) {
    throw std::invalid_argument(
        "Khachiyan pair needs 1 <= n <= 16 and 1 <= tau <= 60");
  }
  const int dim = 2 * n;
  const Rational half(1, 2);
  std::vector<RationalMatrix> a;
  std::vector<Rational> b;
  for (int i = 0; i < n; ++i) {
    const int r = 2 * i;
    RationalMatrix corner = Zeros(dim);
    corner[r + 1][r + 1] = 1;
    AddEquality(a, b, corner, Rational(BigInt(1) << tau));
    RationalMatrix link = Zeros(dim);
    link[r][r + 1] = link[r + 1][r] = half;
    if (i > 0) link[r - 2][r - 2] = -1;
    AddEquality(a, b, link, i == 0 ? half : Rational(0));
  }
  RationalMatrix c = Zeros(dim);
  c[dim - 2][dim - 2] = 1;
  return MakePair(c, a, b);
}

}  // namespace sdpgame
