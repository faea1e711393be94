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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdpgame/auxiliary.h"
#include "sdpgame/direct_solve.h"
#include "sdpgame/generators.h"
#include "sdpgame/problem_io.h"
#include "sdpgame/reduction.h"
#include "sdpgame/solution_bound.h"

namespace sdpgame {
namespace {

using nlohmann::json;

// Solver tolerance of every command; the --tol flags set verification.
constexpr double kSolverTol = 1e-10;
constexpr int kMaxGeneratedDim = 16;
// Upper bound on worker threads for directory inputs.
constexpr unsigned kMaxWorkers = 8;

// Raised for invalid flag values; reported like any other error.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double MillisecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write '" + path.string() + "'");
  file << text;
}

json MatrixJson(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

json VectorJson(const Vector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

struct ReduceFlags {
  std::string input;
  std::string m = "auto";
  double tol = 1e-6;
  bool text = false;
  std::string out;
};

PipelineConfig ReduceConfig(const ReduceFlags& flags) {
  PipelineConfig config;
  config.verify_tol = flags.tol;
  if (flags.m != "auto") {
    double value = 0.0;
    try {
      size_t used = 0;
      value = std::stod(flags.m, &used);
      if (used != flags.m.size()) throw std::invalid_argument(flags.m);
    } catch (const std::logic_error&) {
      throw UsageError("--M expects a positive number or 'auto'");
    }
    if (!(value > 0.0)) throw UsageError("--M must be positive");
    config.fixed_m = value;
  }
  return config;
}

struct ReduceResult {
  int code = kExitError;
  std::string text;   // rendered report
  std::string error;  // set when the run failed
};

ReduceResult ReduceFile(const std::string& path, const PipelineConfig& config,
                        bool text) {
  ReduceResult result;
  try {
    const auto start = std::chrono::steady_clock::now();
    const Outcome outcome = RunPipeline(ReadProblemFile(path).pair, config);
    const Report report =
        MakeReport(outcome, {{"total", MillisecondsSince(start)}});
    result.text =
        text ? ReportToText(report) : ReportToJson(report).dump(2) + "\n";
    result.code = ExitCodeFor(outcome.kind);
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  return result;
}

int Reduce(const ReduceFlags& flags, std::ostream& out, std::ostream& err) {
  const PipelineConfig config = ReduceConfig(flags);
  if (!std::filesystem::is_directory(flags.input)) {
    const ReduceResult r = ReduceFile(flags.input, config, flags.text);
    if (!r.error.empty()) throw std::runtime_error(r.error);
    out << r.text;
    if (!flags.out.empty()) WriteText(flags.out, r.text);
    return r.code;
  }
  // Directory input: every *.json file, each run independent, results
  // reported in file name order.
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(flags.input)) {
    if (e.is_regular_file() && e.path().extension() == ".json") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ReduceResult> results(files.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < files.size(); i = next++) {
      results[i] = ReduceFile(files[i].string(), config, flags.text);
    }
  };
  const unsigned workers = std::max(
      1u, std::min({std::thread::hardware_concurrency(), kMaxWorkers,
                    static_cast<unsigned>(files.size())}));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  if (!flags.out.empty()) std::filesystem::create_directories(flags.out);
  int code = kExitOk;
  bool failed = false;
  json combined = json::object();
  for (size_t i = 0; i < files.size(); ++i) {
    const std::string name = files[i].filename().string();
    const ReduceResult& r = results[i];
    if (!r.error.empty()) {
      err << "error: " << name << ": " << r.error << "\n";
      failed = true;
      continue;
    }
    code = std::max(code, r.code);
    if (flags.text) {
      out << "== " << name << "\n" << r.text;
    } else {
      combined[name] = json::parse(r.text);
    }
    if (!flags.out.empty()) {
      const std::string report_name = files[i].stem().string() +
                                      (flags.text ? ".report.txt" : ".report.json");
      WriteText(std::filesystem::path(flags.out) / report_name, r.text);
    }
  }
  if (!flags.text) out << combined.dump(2) << "\n";
  return failed ? kExitError : code;
}

struct BoundFlags {
  std::string input;
  bool certified = false;
  bool practical = false;
};

int Bound(BoundFlags flags, std::ostream& out) {
  const ProblemFile file = ReadProblemFile(flags.input);
  const SdpPair& pair = file.pair;
  if (!flags.certified && !flags.practical) {
    flags.practical = true;
    flags.certified = pair.is_exact();
  }
  if (flags.certified && !pair.is_exact()) {
    throw UsageError("--certified needs exact (integer or p/q) data");
  }
  json j;
  j["n"] = pair.n();
  j["m"] = pair.m();
  if (flags.certified) {
    const BigInt tau0 = InputBitsize(pair).tau0;
    const AuxDimensions dims = AuxDims(pair.n(), pair.m());
    const SolutionBoundM bound = CertifiedBoundM(pair);
    j["certified"] = {
        {"tau0", tau0.str()},
        {"aux_variables", dims.vars.str()},
        {"aux_equations", dims.eqs.str()},
        {"aux_height", SquaredHeight(tau0, dims.vars, dims.eqs).str()},
        {"aux_eta", EtaBar(pair.n(), pair.m(), tau0).str()},
        {"certified_log2", bound.certified_log2->str()},
    };
  }
  if (flags.practical) {
    const AuxSolution aux = SolveAux(pair, {.tol = kSolverTol});
    const SolutionBoundM bound = PracticalBoundM(aux);
    j["practical"] = {
        {"M", bound.value},
        {"mode", ToString(bound.mode)},
        {"aux_w", aux.w},
        {"attainment", ToString(aux.attained)},
    };
  }
  out << j.dump(2) << "\n";
  return kExitOk;
}

struct GenFlags {
  std::string kind;
  std::string out;
  int n = 2;
  int m = 2;
  std::uint64_t seed = 1;
  int tau = 2;
};

void CheckRange(const std::string& flag, int value, int lo, int hi) {
  if (value < lo || value > hi) {
    throw UsageError(flag + " must lie in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
}

int Gen(const GenFlags& flags, std::ostream& out) {
  std::vector<ProblemFile> files;
  std::vector<std::string> names;
  const std::string dims =
      "_n" + std::to_string(flags.n) + "_m" + std::to_string(flags.m);
  if (flags.kind == "khachiyan") {
    CheckRange("--n", flags.n, 1, kMaxGeneratedDim);
    CheckRange("--tau", flags.tau, 1, 60);
    names.push_back("khachiyan_n" + std::to_string(flags.n) + "_tau" +
                    std::to_string(flags.tau));
    files.push_back({KhachiyanPair(flags.n, flags.tau), names.back(), {}});
  } else if (flags.kind == "random-slater" ||
             flags.kind == "random-unbounded") {
    CheckRange("--n", flags.n, 1, kMaxGeneratedDim);
    CheckRange("--m", flags.m, 1, kMaxGeneratedDim);
    const bool slater = flags.kind == "random-slater";
    names.push_back((slater ? "random_slater" : "random_unbounded") + dims +
                    "_seed" + std::to_string(flags.seed));
    files.push_back(
        {slater ? RandomSlaterPair(flags.n, flags.m, flags.seed)
                : RandomUnboundedPair(flags.n, flags.m, flags.seed),
         names.back(),
         slater ? std::optional<std::string>("StronglyOptimal")
                : std::optional<std::string>("PrimalUnboundedCert")});
  } else if (flags.kind == "paper-corpus") {
    for (const CorpusEntry& e : ReferenceCorpus()) {
      names.push_back(e.name);
      files.push_back({e.pair, e.name, e.expected_outcome});
    }
  } else {
    throw UsageError("unknown generator '" + flags.kind + "'");
  }
  std::filesystem::create_directories(flags.out);
  for (size_t i = 0; i < files.size(); ++i) {
    const auto path = std::filesystem::path(flags.out) / (names[i] + ".json");
    WriteProblemFile(path, files[i]);
    out << path.string() << "\n";
  }
  return kExitOk;
}

struct VerifyFlags {
  std::string input;
  std::string candidate;
  std::string kind;
  double tol = 1e-6;
};

int Verify(const VerifyFlags& flags, std::ostream& out) {
  const SdpPair pair = ReadProblemFile(flags.input).pair;
  const Candidate cand = ReadCandidateFile(flags.candidate);
  const bool need_x = flags.kind != "dual-dir";
  const bool need_y = flags.kind != "primal-dir";
  if (need_x && (!cand.x || cand.x->dim() != pair.n())) {
    throw UsageError("candidate needs an " + std::to_string(pair.n()) + " x " +
                     std::to_string(pair.n()) + " matrix X");
  }
  if (need_y && (!cand.y || cand.y->size() != pair.m())) {
    throw UsageError("candidate needs a vector y of length " +
                     std::to_string(pair.m()));
  }
  bool pass = false;
  if (flags.kind == "optimal") {
    pass = VerifyStronglyOptimal(pair, {*cand.x}, {*cand.y}, flags.tol);
  } else if (flags.kind == "primal-dir") {
    pass = VerifyStrictPrimalUnbounded(pair, *cand.x, flags.tol);
  } else {
    pass = VerifyStrictDualUnbounded(pair, *cand.y, flags.tol);
  }
  out << (pass ? "PASS" : "REJECT") << " " << flags.kind << "\n";
  return pass ? kExitOk : kExitRejected;
}

json ProgramJson(const SolveResult& r) {
  return {{"status", ToString(r.status)},
          {"value", r.primal_objective},
          {"gap", r.gap},
          {"primal_infeasibility", r.primal_infeasibility},
          {"dual_infeasibility", r.dual_infeasibility},
          {"iterations", r.iterations}};
}

int SolveCommand(const std::string& input, std::ostream& out) {
  const SdpPair pair = ReadProblemFile(input).pair;
  const DirectSolution sol = SolveDirect(pair, {.tol = kSolverTol});
  json j;
  j["primal"] = ProgramJson(sol.primal);
  j["primal"]["diverged"] = sol.x_diverged;
  j["primal"]["face_dim"] = sol.face.pair.n();
  j["primal"]["face_steps"] = sol.face.steps;
  if (sol.x) j["primal"]["X"] = MatrixJson(sol.x->matrix());
  j["dual"] = ProgramJson(sol.dual);
  j["dual"]["diverged"] = sol.y_diverged;
  if (sol.y) j["dual"]["y"] = VectorJson(*sol.y);
  out << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Reduce semidefinite program pairs to Dantzig games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sdpgame 1.0");

  ReduceFlags reduce;
  CLI::App* reduce_cmd = app.add_subcommand(
      "reduce", "Classify a pair through its game: optimal pair or certificate");
  reduce_cmd->add_option("input", reduce.input,
                         "Problem file, or a directory of them")
      ->required();
  reduce_cmd->add_option("--M", reduce.m, "Solution bound M or 'auto'");
  reduce_cmd->add_option("--tol", reduce.tol, "Verification tolerance")
      ->check(CLI::PositiveNumber);
  CLI::Option* json_flag =
      reduce_cmd->add_flag("--json", "JSON report (default)");
  reduce_cmd->add_flag("--text", reduce.text, "Plain text report")
      ->excludes(json_flag);
  reduce_cmd->add_option("--out", reduce.out,
                         "Also write the report here (a directory for "
                         "directory input)");

  BoundFlags bound;
  CLI::App* bound_cmd =
      app.add_subcommand("bound", "Certified and practical solution bounds");
  bound_cmd->add_option("input", bound.input, "Problem file")->required();
  bound_cmd->add_flag("--certified", bound.certified, "Exact bitsize bound");
  bound_cmd->add_flag("--practical", bound.practical, "Bound from relaxation");

  GenFlags gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write generated problem files");
  gen_cmd->add_option("kind", gen.kind, "Generator")
      ->required()
      ->check(CLI::IsMember(
          {"khachiyan", "random-slater", "random-unbounded", "paper-corpus"}));
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();
  gen_cmd->add_option("--n", gen.n, "Matrix dimension");
  gen_cmd->add_option("--m", gen.m, "Number of constraints");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--tau", gen.tau, "Bitsize parameter");

  VerifyFlags verify;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check a candidate point or direction");
  verify_cmd->add_option("input", verify.input, "Problem file")->required();
  verify_cmd->add_option("candidate", verify.candidate, "Candidate file")
      ->required();
  verify_cmd->add_option("--kind", verify.kind, "What the candidate claims")
      ->required()
      ->check(CLI::IsMember({"optimal", "primal-dir", "dual-dir"}));
  verify_cmd->add_option("--tol", verify.tol, "Verification tolerance")
      ->check(CLI::PositiveNumber);

  std::string solve_input;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve the primal and dual programs directly");
  solve_cmd->add_option("input", solve_input, "Problem file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }
  try {
    if (*reduce_cmd) return Reduce(reduce, out, err);
    if (*bound_cmd) return Bound(bound, out);
    if (*gen_cmd) return Gen(gen, out);
    if (*verify_cmd) return Verify(verify, out);
    return SolveCommand(solve_input, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace sdpgame
