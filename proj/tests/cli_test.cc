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

#include "sdpgame/cli.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdpgame/generators.h"
#include "sdpgame/problem_io.h"

namespace sdpgame {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sdpgame_cli_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    ASSERT_EQ(Cli({"gen", "paper-corpus", "--out", Path("corpus")}).code, 0);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  std::string Corpus(const std::string& name) const {
    return Path("corpus/" + name + ".json");
  }
  std::string Write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return Path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, CorpusExitCodesFollowExpectedOutcomes) {
  const std::vector<std::pair<std::string, int>> expected = {
      {"bounded", 0}, {"primal_unbounded", 2}, {"both_infeasible", 2},
      {"unattained_aux", 3}, {"duality_gap", 3}};
  for (const auto& [name, code] : expected) {
    const CliRun r = Cli({"reduce", Corpus(name)});
    EXPECT_EQ(r.code, code) << name << "\n" << r.out << r.err;
    const ProblemFile f = ReadProblemFile(Corpus(name));
    EXPECT_EQ(json::parse(r.out)["kind"], *f.expected_outcome) << name;
  }
}

// The corpus files shipped in data/corpus are the generator's output.
TEST_F(CliTest, ShippedCorpusMatchesGenerator) {
  int files = 0;
  for (const auto& e : fs::directory_iterator(Path("corpus"))) {
    const fs::path shipped =
        fs::path(SDPGAME_DATA_DIR) / "corpus" / e.path().filename();
    EXPECT_EQ(ReadFile(shipped), ReadFile(e.path())) << shipped;
    ++files;
  }
  EXPECT_EQ(files, 5);
}

TEST_F(CliTest, ReduceBoundedExample) {
  const CliRun r = Cli({"reduce", Corpus("bounded"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Report rep = ReportFromJson(json::parse(r.out));
  ASSERT_TRUE(rep.x_opt && rep.y_opt);
  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  EXPECT_LE((*rep.x_opt - e11).cwiseAbs().maxCoeff(), 1e-5);
  EXPECT_NEAR((*rep.y_opt)(0), 1.0, 1e-5);
}

TEST_F(CliTest, ReduceBothInfeasibleWithUnitM) {
  const CliRun r = Cli({"reduce", Corpus("both_infeasible"), "--M", "1"});
  ASSERT_EQ(r.code, 2) << r.err;
  const Report rep = ReportFromJson(json::parse(r.out));
  EXPECT_EQ(rep.kind, "DualUnboundedCert");
  EXPECT_EQ(rep.m_value, 1.0);
  ASSERT_TRUE(rep.direction_y);
  EXPECT_NEAR((*rep.direction_y)(0), 2.0 / 3.0, 1e-6);
}

TEST_F(CliTest, ReduceDualityGapIsInconclusiveWithNote) {
  const CliRun r = Cli({"reduce", Corpus("duality_gap"), "--text"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("outcome: Inconclusive"), std::string::npos);
  EXPECT_NE(r.out.find("no pair of strongly optimal solutions exists"),
            std::string::npos)
      << r.out;
}

TEST_F(CliTest, ReduceIsDeterministicAndWritesTheReport) {
  const CliRun a = Cli({"reduce", Corpus("primal_unbounded"), "--out", Path("r.json")});
  const CliRun b = Cli({"reduce", Corpus("primal_unbounded")});
  Report ra = ReportFromJson(json::parse(a.out));
  Report rb = ReportFromJson(json::parse(b.out));
  EXPECT_EQ(a.code, b.code);
  ra.timings_ms.clear();
  rb.timings_ms.clear();
  EXPECT_TRUE(ra == rb);
  EXPECT_EQ(ReadFile(Path("r.json")), a.out);
}

TEST_F(CliTest, ReduceDirectoryMatchesSingleFileRuns) {
  const CliRun batch = Cli({"reduce", Path("corpus"), "--out", Path("reports")});
  // Worst per-file code: certificates (2) are outranked by inconclusive (3).
  EXPECT_EQ(batch.code, 3) << batch.err;
  const json all = json::parse(batch.out);
  ASSERT_EQ(all.size(), 5u);
  for (const auto& [file, report] : all.items()) {
    const std::string stem = fs::path(file).stem().string();
    const json single = json::parse(Cli({"reduce", Corpus(stem)}).out);
    EXPECT_EQ(report["kind"], single["kind"]) << file;
    EXPECT_EQ(report["game_value"], single["game_value"]) << file;
    const json written =
        json::parse(ReadFile(dir_ / "reports" / (stem + ".report.json")));
    EXPECT_EQ(written["kind"], report["kind"]) << file;
  }
  Write("corpus/broken.json", "{");
  const CliRun broken = Cli({"reduce", Path("corpus")});
  EXPECT_EQ(broken.code, kExitError);
  EXPECT_NE(broken.err.find("broken.json"), std::string::npos) << broken.err;
  EXPECT_EQ(json::parse(broken.out).size(), 5u);
}

TEST_F(CliTest, ReduceRejectsBadInput) {
  const std::string asym = Write("asym.json", R"({"n": 2, "m": 1,
      "C": [[1, 2], [3, 2]], "A": [[[1, 0], [0, 0]]], "b": [1]})");
  CliRun r = Cli({"reduce", asym});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("C: not symmetric"), std::string::npos) << r.err;
  r = Cli({"reduce", Write("bad.json", "{\"n\": 2,\n")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line"), std::string::npos) << r.err;
  EXPECT_EQ(Cli({"reduce", Path("missing.json")}).code, 1);
  EXPECT_EQ(Cli({"reduce", Corpus("bounded"), "--M", "0"}).code, 1);
  EXPECT_EQ(Cli({"reduce", Corpus("bounded"), "--M", "abc"}).code, 1);
  EXPECT_EQ(Cli({"reduce", Corpus("bounded"), "--json", "--text"}).code, 1);
  EXPECT_EQ(Cli({}).code, 1);
  EXPECT_EQ(Cli({"--help"}).code, 0);
}

TEST_F(CliTest, PracticalBounds) {
  CliRun r = Cli({"bound", Corpus("bounded"), "--practical"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["practical"]["M"], 4.0);
  r = Cli({"bound", Corpus("both_infeasible"), "--practical"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["practical"]["M"], 2.0);
}

TEST_F(CliTest, CertifiedBoundOfSmallestInstance) {
  const std::string one = Write(
      "one.json", R"({"n": 1, "m": 1, "C": [[1]], "A": [[[1]]], "b": [1]})");
  const CliRun r = Cli({"bound", one, "--certified"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json c = json::parse(r.out)["certified"];
  EXPECT_EQ(c["tau0"], "1");
  EXPECT_EQ(c["aux_variables"], "45");
  EXPECT_EQ(c["aux_equations"], "60");
  EXPECT_EQ(c["aux_height"], "52");
  // (45^2 - 45)/2 + 90 + 45 * 99 * 2^44
  EXPECT_EQ(c["aux_eta"], "78373188827874360");
  EXPECT_EQ(c["certified_log2"], "78373188827874362");
  const std::string fl = Write(
      "fl.json", R"({"n": 1, "m": 1, "C": [[1.5]], "A": [[[1]]], "b": [1]})");
  EXPECT_EQ(Cli({"bound", fl, "--certified"}).code, 1);
  EXPECT_EQ(Cli({"bound", fl}).code, 0);
}

TEST_F(CliTest, GenKhachiyanSolvesToClosedForm) {
  ASSERT_EQ(Cli({"gen", "khachiyan", "--n", "2", "--tau", "2", "--out",
                 Path("k")})
                .code,
            0);
  const CliRun r = Cli({"solve", Path("k/khachiyan_n2_tau2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  const double expected = std::ldexp(1.0, -10);
  EXPECT_NEAR(j["primal"]["value"].get<double>(), expected, 1e-6 * expected);
  EXPECT_NEAR(j["dual"]["value"].get<double>(), expected, 1e-6 * expected);
}

TEST_F(CliTest, GenIsDeterministicAndChecksRanges) {
  for (const char* sub : {"a", "b"}) {
    ASSERT_EQ(Cli({"gen", "random-slater", "--seed", "7", "--out", Path(sub)})
                  .code,
              0);
  }
  const std::string name = "random_slater_n2_m2_seed7.json";
  EXPECT_EQ(ReadFile(Path("a/" + name)), ReadFile(Path("b/" + name)));
  EXPECT_FALSE(ReadFile(Path("a/" + name)).empty());
  EXPECT_EQ(Cli({"gen", "random-unbounded", "--n", "17", "--out", Path("c")})
                .code,
            1);
  EXPECT_EQ(Cli({"gen", "khachiyan", "--tau", "0", "--out", Path("c")}).code,
            1);
  EXPECT_EQ(Cli({"gen", "lattice", "--out", Path("c")}).code, 1);
  EXPECT_EQ(fs::directory_iterator(Path("corpus")) != fs::directory_iterator(),
            true);
  int files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(Path("corpus"))) {
    ++files;
  }
  EXPECT_EQ(files, 5);
}

TEST_F(CliTest, VerifyExamples) {
  const std::string opt = Write("opt.json", R"({"X": [[1, 0], [0, 0]], "y": [1]})");
  const std::string zero = Write("zero.json", R"({"X": [[0, 0], [0, 0]], "y": [0]})");
  const std::string dir = Write(
      "dir.json", R"({"X": [["1/9", "1/6"], ["1/6", "5/9"]]})");
  EXPECT_EQ(Cli({"verify", Corpus("bounded"), opt, "--kind", "optimal"}).code, 0);
  EXPECT_EQ(Cli({"verify", Corpus("bounded"), zero, "--kind", "optimal"}).code,
            kExitRejected);
  EXPECT_EQ(Cli({"verify", Corpus("primal_unbounded"), dir, "--kind",
                 "primal-dir"})
                .code,
            0);
  // Directions are checked strictly: the both-infeasible certificate has
  // lambda_max(y A) = 0 and is rejected, while -x >= 1 admits y = 1 with
  // lambda_max(y A) = -1.
  const std::string ydir = Write("ydir.json", R"({"y": ["2/3"]})");
  EXPECT_EQ(Cli({"verify", Corpus("both_infeasible"), ydir, "--kind",
                 "dual-dir"})
                .code,
            kExitRejected);
  const std::string infeasible = Write(
      "inf.json", R"({"n": 1, "m": 1, "C": [[1]], "A": [[[-1]]], "b": [1]})");
  const std::string unit = Write("unit.json", R"({"y": [1]})");
  EXPECT_EQ(Cli({"verify", infeasible, unit, "--kind", "dual-dir"}).code, 0);
  // Shape mismatch and unknown kinds are errors, not rejections.
  EXPECT_EQ(Cli({"verify", Corpus("bounded"), dir, "--kind", "optimal"}).code, 1);
  EXPECT_EQ(Cli({"verify", Corpus("bounded"), ydir, "--kind", "primal-dir"}).code,
            1);
  EXPECT_EQ(Cli({"verify", Corpus("bounded"), opt, "--kind", "other"}).code, 1);
}

TEST_F(CliTest, VerifyAcceptsReduceReports) {
  ASSERT_EQ(Cli({"reduce", Corpus("bounded"), "--out", Path("rep.json")}).code, 0);
  EXPECT_EQ(Cli({"verify", Corpus("bounded"), Path("rep.json"), "--kind",
                 "optimal"})
                .code,
            0);
}

TEST_F(CliTest, SolveDirectly) {
  CliRun r = Cli({"solve", Corpus("bounded")});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_NEAR(j["primal"]["value"].get<double>(), 1.0, 1e-6);
  EXPECT_NEAR(j["dual"]["value"].get<double>(), 1.0, 1e-6);
  EXPECT_EQ(j["primal"]["diverged"], false);
  r = Cli({"solve", Corpus("duality_gap")});
  ASSERT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  EXPECT_NEAR(j["primal"]["value"].get<double>(), 1.0, 1e-5);
  EXPECT_NEAR(j["dual"]["value"].get<double>(), 0.0, 1e-5);
  EXPECT_EQ(j["primal"]["face_dim"], 2);
  r = Cli({"solve", Corpus("both_infeasible")});
  ASSERT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  for (const char* side : {"primal", "dual"}) {
    const std::string status = j[side]["status"];
    EXPECT_NE(status, "Optimal") << side;
    EXPECT_NE(status, "NearOptimal") << side;
  }
}

// On pairs with interior points the direct primal value matches <C, X_opt>
// from the game route.
TEST_F(CliTest, ReduceAgreesWithDirectSolveOnSlaterPairs) {
  for (int seed = 1; seed <= 6; ++seed) {
    const std::string n = std::to_string(1 + seed % 3);
    const std::string m = std::to_string(1 + (seed * 5) % 3);
    const std::string out = Path("s" + std::to_string(seed));
    ASSERT_EQ(Cli({"gen", "random-slater", "--n", n, "--m", m, "--seed",
                   std::to_string(seed), "--out", out})
                  .code,
              0);
    const std::string file =
        out + "/random_slater_n" + n + "_m" + m + "_seed" + std::to_string(seed) +
        ".json";
    const CliRun reduce = Cli({"reduce", file});
    ASSERT_EQ(reduce.code, 0) << file << "\n" << reduce.out << reduce.err;
    const Report rep = ReportFromJson(json::parse(reduce.out));
    const CliRun solve = Cli({"solve", file});
    ASSERT_EQ(solve.code, 0);
    const double value = json::parse(solve.out)["primal"]["value"];
    const SdpPair pair = ReadProblemFile(file).pair;
    const double reduced = (pair.c().matrix().cwiseProduct(*rep.x_opt)).sum();
    EXPECT_LE(std::abs(value - reduced), 1e-5 * (1.0 + std::abs(value)))
        << file;
  }
}

}  // namespace
}  // namespace sdpgame
