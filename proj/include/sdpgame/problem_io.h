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

// JSON file formats: problem files (exact rationals as "p/q" strings or
// integers, floats as numbers), candidate points for verification, and
// pipeline reports.

#ifndef SDPGAME_PROBLEM_IO_H_
#define SDPGAME_PROBLEM_IO_H_

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdpgame/reduction.h"
#include "sdpgame/sdp_model.h"

namespace sdpgame {

// Malformed input. The message names the offending field (for example
// "A[1][0][2]") or, for syntax errors, the line and column.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemFile {
  SdpPair pair;
  std::optional<std::string> name;
  std::optional<std::string> expected_outcome;
};

// Schema: {"n": int, "m": int, "C": [[...]], "A": [[[...]], ...], "b": [...],
// "name"?: string, "expected_outcome"?: string}. Entries are integers,
// strings "p/q" or floats; the pair is exact unless some entry is a float.
// Asymmetric matrices are rejected.
ProblemFile ParseProblem(const std::string& text);
ProblemFile ReadProblemFile(const std::filesystem::path& path);

// Exact pairs write integers as numbers and other rationals as "p/q";
// float pairs write shortest round-trip decimals.
std::string SerializeProblem(const ProblemFile& file);
void WriteProblemFile(const std::filesystem::path& path,
                      const ProblemFile& file);

// Point to be checked against a pair: keys "X" and/or "y". Report files are
// accepted too (x_opt / y_opt / direction_x / direction_y).
struct Candidate {
  std::optional<SymMat> x;
  std::optional<Vector> y;
};

Candidate ParseCandidate(const std::string& text);
Candidate ReadCandidateFile(const std::filesystem::path& path);

struct Report {
  std::string kind;
  double game_value = 0.0;
  std::string m_mode;
  double m_value = 0.0;
  // Decimal string; may exceed every machine integer.
  std::optional<std::string> certified_log2;
  std::optional<Matrix> x_opt;
  std::optional<Vector> y_opt;
  std::optional<Matrix> direction_x;
  std::optional<Vector> direction_y;
  std::optional<double> implied_aux_value;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> notes;
  std::map<std::string, double> timings_ms;

  bool operator==(const Report& o) const;
};

Report MakeReport(const Outcome& outcome,
                  std::map<std::string, double> timings_ms = {});

// Non-finite numbers are written as the strings "inf", "-inf" and "nan".
nlohmann::json ReportToJson(const Report& report);
Report ReportFromJson(const nlohmann::json& j);
std::string ReportToText(const Report& report);

// Exit status of the reduce command: 0 strongly optimal, 2 certificate,
// 3 inconclusive.
int ExitCodeFor(OutcomeKind kind);

}  // namespace sdpgame

#endif  // SDPGAME_PROBLEM_IO_H_
