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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "sdpgame/generators.h"
#include "test_util.h"

namespace sdpgame {
namespace {

SdpPair Corpus(const std::string& name) { return CorpusInstance(name)->pair; }

const SymMat kE11{{1, 0}, {0, 0}};

bool HasNote(const Outcome& o, const std::string& text) {
  return std::find(o.notes.begin(), o.notes.end(), text) != o.notes.end();
}

PipelineConfig FixedM(double m) {
  PipelineConfig config;
  config.fixed_m = m;
  return config;
}

// Instance sizes used by the random property suites.
int SizeN(int seed) { return 1 + seed % 4; }
int SizeM(int seed) { return 1 + (seed * 7) % 4; }

TEST(RecoverOptimalTest, BoundedExample) {
  const Strategy2 s2{kE11 / 3.0, Vector::Constant(1, 1.0 / 3.0), 1.0 / 3.0};
  const auto [x, y] = RecoverOptimal(s2, 1e-9);
  EXPECT_LE((x.matrix() - kE11.matrix()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(y(0), 1.0, 1e-15);
}

TEST(RecoverOptimalTest, VanishedTThrows) {
  const Strategy2 s2{kE11, Vector::Zero(1), 0.0};
  try {
    RecoverOptimal(s2, 1e-9);
    FAIL() << "expected RecoveryError";
  } catch (const RecoveryError& e) {
    EXPECT_STREQ(e.what(), "t vanished; bounded-case recovery impossible");
  }
}

TEST(RecoverOptimalTest, InvariantUnderRescaling) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Strategy2 s = testing::RandomStrategy2(rng, 3, 2);
    const double lambda = 0.1 + 0.3 * trial;
    // lambda (X, y, t) renormalized back onto the simplex.
    const double total = lambda * (s.x.Trace() + s.y.sum() + s.t);
    const Strategy2 scaled{s.x * (lambda / total), s.y * (lambda / total),
                           s.t * lambda / total};
    const auto [x1, y1] = RecoverOptimal(s, 1e-12);
    const auto [x2, y2] = RecoverOptimal(scaled, 1e-12);
    EXPECT_LE((x1.matrix() - x2.matrix()).cwiseAbs().maxCoeff(),
              1e-12 * (1.0 + x1.matrix().cwiseAbs().maxCoeff()));
    EXPECT_LE((y1 - y2).cwiseAbs().maxCoeff(),
              1e-12 * (1.0 + y1.cwiseAbs().maxCoeff()));
  }
}

TEST(RecoverCertificateTest, UnboundedExampleGivesPrimalDirection) {
  const SdpPair pair = Corpus("primal_unbounded");
  const SymMat dir{{1, 1.5}, {1.5, 5}};
  const Strategy1 s1{dir / 9.0, Vector::Zero(1), 0.0, 1.0 / 3.0};
  const CertificateFragment f = RecoverCertificate(s1, pair, 1e-9);
  EXPECT_EQ(f.kind, OutcomeKind::kPrimalUnboundedCert);
  ASSERT_TRUE(f.direction_x.has_value());
  EXPECT_TRUE(VerifyPrimalDirection(pair, *f.direction_x, 1e-9));
}

TEST(RecoverCertificateTest, BothInfeasibleExampleGivesDualDirection) {
  const SdpPair pair = Corpus("both_infeasible");
  const Strategy1 s1{SymMat::Zero(2), Vector::Constant(1, 2.0 / 3.0), 0.0,
                     1.0 / 3.0};
  const CertificateFragment f = RecoverCertificate(s1, pair, 1e-9);
  EXPECT_EQ(f.kind, OutcomeKind::kDualUnboundedCert);
  ASSERT_TRUE(f.direction_y.has_value());
  EXPECT_NEAR((*f.direction_y)(0), 2.0 / 3.0, 1e-15);
  EXPECT_FALSE(f.direction_x.has_value());
}

TEST(RecoverCertificateTest, PureUIsInconclusive) {
  const SdpPair pair = Corpus("primal_unbounded");
  const Strategy1 s1{SymMat::Zero(2), Vector::Zero(1), 0.0, 1.0};
  EXPECT_EQ(RecoverCertificate(s1, pair, 1e-9).kind,
            OutcomeKind::kInconclusive);
}

TEST(RecoverCertificateTest, BothDirectionsReportedPrimalFirst) {
  // <C, E11> = -1 and b^T y = 1 with sum y A <= 0.
  const SdpPair pair(SymMat{{-1, 0}, {0, 0}}, {SymMat{{0, 0}, {0, -1}}},
                     Vector::Ones(1));
  const Strategy1 s1{kE11 / 3.0, Vector::Constant(1, 1.0 / 3.0), 0.0,
                     1.0 / 3.0};
  const CertificateFragment f = RecoverCertificate(s1, pair, 1e-9);
  EXPECT_EQ(f.kind, OutcomeKind::kPrimalUnboundedCert);
  EXPECT_TRUE(f.direction_x.has_value());
  EXPECT_TRUE(f.direction_y.has_value());
}

TEST(RecoverCertificateTest, NonzeroTThrows) {
  const SdpPair pair = Corpus("primal_unbounded");
  const Strategy1 s1{SymMat::Zero(2), Vector::Zero(1), 0.5, 0.5};
  try {
    RecoverCertificate(s1, pair, 1e-9);
    FAIL() << "expected RecoveryError";
  } catch (const RecoveryError& e) {
    EXPECT_STREQ(e.what(), "t' nonzero in unbounded regime");
  }
}

TEST(AuxValueRelationTest, Examples) {
  EXPECT_EQ(AuxValueRelation(0.0, 5.0), 0.0);
  EXPECT_NEAR(AuxValueRelation(1.0 / 3.0, 1.0), 1.0, 1e-15);
  EXPECT_THROW(AuxValueRelation(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(AuxValueRelation(-0.1, 1.0), std::invalid_argument);
}

TEST(AuxValueRelationTest, InvertsOnUnboundedExample) {
  // w = 1 at M = 1 forces v = w / (M + 1 + w) = 1/3; the game agrees.
  const double v = 1.0 / (1.0 + 1.0 + 1.0);
  EXPECT_NEAR(AuxValueRelation(v, 1.0), 1.0, 1e-15);
  const GameSolution g = SolveGame(Corpus("primal_unbounded"), 1.0);
  EXPECT_NEAR(g.value, v, 1e-6);
}

TEST(VerifyDirectionTest, Examples) {
  const SdpPair unbounded = Corpus("primal_unbounded");
  EXPECT_TRUE(VerifyPrimalDirection(unbounded, SymMat{{1, 1.5}, {1.5, 5}},
                                    1e-9));
  EXPECT_FALSE(VerifyPrimalDirection(unbounded, SymMat::Zero(2), 1e-9));
  const SdpPair infeasible = Corpus("both_infeasible");
  EXPECT_TRUE(VerifyDualDirection(infeasible, Vector::Constant(1, 1.0), 1e-9));
  EXPECT_FALSE(VerifyDualDirection(infeasible, Vector::Zero(1), 1e-9));
}

TEST(PipelineTest, RejectsNonPositiveThresholds) {
  PipelineConfig config;
  config.value_zero_threshold = 0.0;
  EXPECT_THROW(RunPipeline(Corpus("bounded"), config),
               std::invalid_argument);
}

TEST(PipelineTest, BoundedExample) {
  const Outcome o = RunPipeline(Corpus("bounded"), FixedM(3.0));
  ASSERT_EQ(o.kind, OutcomeKind::kStronglyOptimal);
  EXPECT_NEAR(o.game_value, 0.0, 1e-8);
  EXPECT_LE((o.x_opt->matrix() - kE11.matrix()).cwiseAbs().maxCoeff(), 1e-5);
  EXPECT_NEAR((*o.y_opt)(0), 1.0, 1e-5);
  EXPECT_EQ(o.m_used.mode, BoundMode::kArbitrary);
  EXPECT_TRUE(o.m_used.certified_log2.has_value());
}

TEST(PipelineTest, BoundedExamplePracticalM) {
  const Outcome o = RunPipeline(Corpus("bounded"));
  ASSERT_EQ(o.kind, OutcomeKind::kStronglyOptimal);
  EXPECT_EQ(o.m_used.mode, BoundMode::kPractical);
  EXPECT_TRUE(VerifyStronglyOptimal(Corpus("bounded"), {*o.x_opt},
                                    {*o.y_opt}, 1e-6));
}

TEST(PipelineTest, UnboundedExample) {
  const SdpPair pair = Corpus("primal_unbounded");
  const Outcome o = RunPipeline(pair, FixedM(1.0));
  ASSERT_EQ(o.kind, OutcomeKind::kPrimalUnboundedCert);
  EXPECT_NEAR(o.game_value, 1.0 / 3.0, 1e-6);
  EXPECT_TRUE(VerifyPrimalDirection(pair, *o.direction_x, 1e-6));
  EXPECT_NEAR(*o.implied_aux_value, 1.0, 1e-5);
}

TEST(PipelineTest, BothInfeasibleExample) {
  const SdpPair pair = Corpus("both_infeasible");
  const Outcome o = RunPipeline(pair, FixedM(1.0));
  ASSERT_EQ(o.kind, OutcomeKind::kDualUnboundedCert);
  EXPECT_NEAR(o.game_value, 1.0 / 3.0, 1e-6);
  EXPECT_NEAR((*o.direction_y)(0), 2.0 / 3.0, 1e-5);
  EXPECT_NEAR(*o.implied_aux_value, 1.0, 1e-5);
}

TEST(PipelineTest, UnattainedRelaxationIsInconclusive) {
  const Outcome o = RunPipeline(Corpus("unattained_aux"), FixedM(1.0));
  EXPECT_EQ(o.kind, OutcomeKind::kInconclusive);
  EXPECT_GT(o.game_value, 0.5);
  EXPECT_TRUE(HasNote(
      o, "game value positive; no pair of strongly optimal solutions exists"));
}

TEST(PipelineTest, DualityGapIsInconclusive) {
  const Outcome o = RunPipeline(Corpus("duality_gap"), FixedM(1.0));
  EXPECT_EQ(o.kind, OutcomeKind::kInconclusive);
  EXPECT_GT(o.game_value, 1e-3);
  EXPECT_TRUE(HasNote(
      o, "game value positive; no pair of strongly optimal solutions exists"));
}

TEST(PipelineTest, CorpusExpectationsInPracticalMode) {
  for (const CorpusEntry& entry : ReferenceCorpus()) {
    const Outcome o = RunPipeline(entry.pair);
    EXPECT_EQ(ToString(o.kind), entry.expected_outcome) << entry.name;
  }
}

TEST(PipelineTest, IsDeterministic) {
  const Outcome a = RunPipeline(Corpus("primal_unbounded"));
  const Outcome b = RunPipeline(Corpus("primal_unbounded"));
  EXPECT_EQ(a.game_value, b.game_value);
  EXPECT_EQ(a.diagnostics, b.diagnostics);
  EXPECT_EQ(a.notes, b.notes);
}

TEST(PipelinePropertyTest, SlaterPairsAreStronglyOptimalWithValueZero) {
  for (int seed = 0; seed < 10; ++seed) {
    const SdpPair pair = RandomSlaterPair(SizeN(seed), SizeM(seed), seed);
    const Outcome o = RunPipeline(pair);
    ASSERT_EQ(o.kind, OutcomeKind::kStronglyOptimal) << "seed " << seed;
    EXPECT_TRUE(VerifyStronglyOptimal(pair, {*o.x_opt}, {*o.y_opt}, 1e-6));
    EXPECT_LE(o.game_value, 1e-6);
    const double m = o.m_used.value;
    EXPECT_GE(o.game.s2.t, 1.0 / (m + 1.0) - 1e-6) << "seed " << seed;
  }
}

TEST(PipelinePropertyTest, UnboundedPairsHaveCertificateStructure) {
  for (int seed = 0; seed < 10; ++seed) {
    const SdpPair pair = RandomUnboundedPair(SizeN(seed), SizeM(seed), seed);
    const Outcome o = RunPipeline(pair);
    ASSERT_EQ(o.kind, OutcomeKind::kPrimalUnboundedCert) << "seed " << seed;
    EXPECT_TRUE(VerifyPrimalDirection(pair, *o.direction_x, 1e-6));
    EXPECT_LE(std::abs(o.game.s1.u - o.game_value), 1e-6);
    EXPECT_LE(std::abs(o.game.s1.t), 1e-6);
    const double m = o.m_used.value;
    EXPECT_LE(std::abs(o.game_value - (1.0 - (1.0 + m) * o.game.s2.t)), 1e-6);
    ASSERT_TRUE(o.aux.has_value());
    if (o.aux->attained == Attainment::kAttained) {
      EXPECT_LE(std::abs(o.aux->w - AuxValueRelation(o.game_value, m)),
                1e-5 * (1.0 + o.aux->w))
          << "seed " << seed;
    }
  }
}

// LP feasibility and value by vertex enumeration over the diagonal data.
struct LpReference {
  bool primal_feasible = false;
  bool dual_feasible = false;
  double value = 0.0;  // min c^T x when both are feasible
};

LpReference LpOracle(const SdpPair& pair) {
  const int n = pair.n();
  const int m = pair.m();
  Matrix a(m, n);
  for (int i = 0; i < m; ++i) a.row(i) = pair.a(i).matrix().diagonal();
  const Vector c = pair.c().matrix().diagonal();
  // Primal: -A x <= -b, -x <= 0.
  Matrix gp(m + n, n);
  gp << -a, -Matrix::Identity(n, n);
  Vector hp(m + n);
  hp << -pair.b(), Vector::Zero(n);
  // Dual: A^T y <= c, -y <= 0.
  Matrix gd(n + m, m);
  gd << a.transpose(), -Matrix::Identity(m, m);
  Vector hd(n + m);
  hd << c, Vector::Zero(m);
  const Matrix no_eq(0, n);
  LpReference ref;
  ref.primal_feasible = testing::LpVertexOracle(gp, hp, no_eq, Vector(0),
                                                Vector::Zero(n))
                            .has_value();
  ref.dual_feasible = testing::LpVertexOracle(gd, hd, Matrix(0, m), Vector(0),
                                              Vector::Zero(m))
                          .has_value();
  if (ref.primal_feasible && ref.dual_feasible) {
    ref.value = -*testing::LpVertexOracle(gp, hp, no_eq, Vector(0), -c);
  }
  return ref;
}

TEST(PipelinePropertyTest, DiagonalPairsMatchLpOracle) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> dim(1, 3);
  int bounded = 0;
  int certified = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const SdpPair pair =
        testing::RandomDiagonalPair(rng, dim(rng), dim(rng));
    const LpReference ref = LpOracle(pair);
    const Outcome o = RunPipeline(pair);
    SCOPED_TRACE("trial " + std::to_string(trial));
    if (ref.primal_feasible && ref.dual_feasible) {
      ++bounded;
      ASSERT_EQ(o.kind, OutcomeKind::kStronglyOptimal);
      EXPECT_NEAR(FrobeniusInner(pair.c(), *o.x_opt), ref.value, 1e-6);
      EXPECT_NEAR(pair.b().dot(*o.y_opt), ref.value, 1e-6);
    } else {
      ASSERT_TRUE(o.kind == OutcomeKind::kPrimalUnboundedCert ||
                  o.kind == OutcomeKind::kDualUnboundedCert)
          << ToString(o.kind);
      ++certified;
      // A primal direction proves the dual infeasible and vice versa.
      if (o.direction_x) EXPECT_FALSE(ref.dual_feasible);
      if (o.direction_y) EXPECT_FALSE(ref.primal_feasible);
    }
  }
  EXPECT_GT(bounded, 0);
  EXPECT_GT(certified, 0);
}

}  // namespace
}  // namespace sdpgame
