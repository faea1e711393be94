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

#include "sdpgame/problem_io.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <limits>
#include <sstream>
#include <utility>

namespace sdpgame {
namespace {

using nlohmann::json;

// One parsed entry: exact when written as an integer or "p/q".
struct Entry {
  Rational exact;
  double value = 0.0;
  bool is_exact = true;
};

Entry ParseEntry(const json& j, const std::string& field) {
  Entry e;
  if (j.is_number_integer()) {
    e.exact = j.is_number_unsigned() ? Rational(j.get<std::uint64_t>())
                                     : Rational(j.get<std::int64_t>());
    e.value = RationalToDouble(e.exact);
  } else if (j.is_number_float()) {
    e.value = j.get<double>();
    e.is_exact = false;
    if (!std::isfinite(e.value)) throw ParseError(field + ": non-finite entry");
  } else if (j.is_string()) {
    try {
      e.exact = ParseRational(j.get<std::string>());
    } catch (const std::invalid_argument& err) {
      throw ParseError(field + ": " + err.what());
    }
    e.value = RationalToDouble(e.exact);
  } else {
    throw ParseError(field + ": expected a number or a \"p/q\" string");
  }
  return e;
}

const json& Field(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ParseError("missing field '" + key + "'");
  return j.at(key);
}

int ParseDim(const json& j, const std::string& key) {
  const json& v = Field(j, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1 ||
      v.get<std::int64_t>() > 1024) {
    throw ParseError(key + ": expected a positive integer");
  }
  return static_cast<int>(v.get<std::int64_t>());
}

std::vector<Entry> ParseVector(const json& j, int len, const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != len) {
    throw ParseError(field + ": expected an array of length " +
                     std::to_string(len));
  }
  std::vector<Entry> out;
  for (int i = 0; i < len; ++i) {
    out.push_back(ParseEntry(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Row-major n x n entries, checked for exact symmetry.
std::vector<Entry> ParseMatrix(const json& j, int n, const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw ParseError(field + ": expected " + std::to_string(n) + " rows");
  }
  std::vector<Entry> out;
  for (int i = 0; i < n; ++i) {
    const std::vector<Entry> row =
        ParseVector(j[i], n, field + "[" + std::to_string(i) + "]");
    out.insert(out.end(), row.begin(), row.end());
  }
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const Entry& a = out[i * n + k];
      const Entry& b = out[k * n + i];
      const bool equal = a.is_exact && b.is_exact ? a.exact == b.exact
                                                  : a.value == b.value;
      if (!equal) {
        throw ParseError(field + ": not symmetric at (" + std::to_string(i) +
                         ", " + std::to_string(k) + ")");
      }
    }
  }
  return out;
}

bool AllExact(const std::vector<Entry>& v) {
  for (const Entry& e : v) {
    if (!e.is_exact) return false;
  }
  return true;
}

ExactSymMat ToExact(const std::vector<Entry>& v, int n) {
  std::vector<Rational> r;
  for (const Entry& e : v) r.push_back(e.exact);
  return ExactSymMat(n, std::move(r));
}

SymMat ToFloat(const std::vector<Entry>& v, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) m(i, k) = v[i * n + k].value;
  }
  return SymMat(m);
}

json ParseJson(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(err.what());
  }
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json ExactEntry(const Rational& r) {
  if (denominator(r) == 1 &&
      numerator(r) >= std::numeric_limits<std::int64_t>::min() &&
      numerator(r) <= std::numeric_limits<std::int64_t>::max()) {
    return numerator(r).convert_to<std::int64_t>();
  }
  return FormatRational(r);
}

json Number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double ReadNumber(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    try {
      return RationalToDouble(ParseRational(s));
    } catch (const std::invalid_argument& err) {
      throw ParseError(field + ": " + err.what());
    }
  }
  throw ParseError(field + ": expected a number");
}

json MatrixJson(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(Number(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json VectorJson(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Number(v(i)));
  return out;
}

Vector ReadVector(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) =
        ReadNumber(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix ReadMatrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(field + ": expected a non-empty array of rows");
  }
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector row = ReadVector(j[i], field + "[" + std::to_string(i) + "]");
    if (row.size() != n) {
      throw ParseError(field + ": expected a square matrix");
    }
    m.row(i) = row.transpose();
  }
  return m;
}

SymMat ReadSymMat(const json& j, const std::string& field) {
  const Matrix m = ReadMatrix(j, field);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw ParseError(field + ": not symmetric");
  }
  return SymMat(m);
}

std::map<std::string, double> ReadNumberMap(const json& j,
                                            const std::string& field) {
  std::map<std::string, double> out;
  if (!j.is_object()) throw ParseError(field + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    out[key] = ReadNumber(value, field + "." + key);
  }
  return out;
}

json NumberMap(const std::map<std::string, double>& m) {
  json out = json::object();
  for (const auto& [key, value] : m) out[key] = Number(value);
  return out;
}

// Equality that treats two NaNs as equal.
bool SameNumber(double a, double b) {
  return a == b || (std::isnan(a) && std::isnan(b));
}

template <typename T>
bool SameArray(const std::optional<T>& a, const std::optional<T>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  if (a->rows() != b->rows() || a->cols() != b->cols()) return false;
  for (Eigen::Index i = 0; i < a->size(); ++i) {
    if (!SameNumber(a->data()[i], b->data()[i])) return false;
  }
  return true;
}

bool SameMap(const std::map<std::string, double>& a,
             const std::map<std::string, double>& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !SameNumber(ia->second, ib->second)) {
      return false;
    }
  }
  return true;
}

std::string FormatDouble(double v) {
  std::ostringstream ss;
  ss << std::setprecision(12) << v;
  return ss.str();
}

void AppendMatrix(std::ostringstream& out, const std::string& label,
                  const Matrix& m) {
  out << label << ":\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << "  [";
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      out << (k ? ", " : "") << FormatDouble(m(i, k));
    }
    out << "]\n";
  }
}

void AppendVector(std::ostringstream& out, const std::string& label,
                  const Vector& v) {
  out << label << ": [";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out << (i ? ", " : "") << FormatDouble(v(i));
  }
  out << "]\n";
}

}  // namespace

ProblemFile ParseProblem(const std::string& text) {
  const json j = ParseJson(text);
  if (!j.is_object()) throw ParseError("top level: expected an object");
  const int n = ParseDim(j, "n");
  const int m = ParseDim(j, "m");
  const std::vector<Entry> c = ParseMatrix(Field(j, "C"), n, "C");
  const json& a_json = Field(j, "A");
  if (!a_json.is_array() || static_cast<int>(a_json.size()) != m) {
    throw ParseError("A: expected " + std::to_string(m) + " matrices");
  }
  std::vector<std::vector<Entry>> a;
  for (int i = 0; i < m; ++i) {
    a.push_back(ParseMatrix(a_json[i], n, "A[" + std::to_string(i) + "]"));
  }
  const std::vector<Entry> b = ParseVector(Field(j, "b"), m, "b");

  bool exact = AllExact(c) && AllExact(b);
  for (const auto& ai : a) exact = exact && AllExact(ai);
  ProblemFile file;
  if (exact) {
    ExactPairData data;
    data.c = ToExact(c, n);
    for (const auto& ai : a) data.a.push_back(ToExact(ai, n));
    for (const Entry& e : b) data.b.push_back(e.exact);
    file.pair = SdpPair(std::move(data));
  } else {
    std::vector<SymMat> mats;
    for (const auto& ai : a) mats.push_back(ToFloat(ai, n));
    Vector bv(m);
    for (int i = 0; i < m; ++i) bv(i) = b[i].value;
    file.pair = SdpPair(ToFloat(c, n), std::move(mats), bv);
  }
  for (const char* key : {"name", "expected_outcome"}) {
    if (!j.contains(key)) continue;
    if (!j.at(key).is_string()) {
      throw ParseError(std::string(key) + ": expected a string");
    }
    (std::string(key) == "name" ? file.name : file.expected_outcome) =
        j.at(key).get<std::string>();
  }
  return file;
}

ProblemFile ReadProblemFile(const std::filesystem::path& path) {
  try {
    return ParseProblem(ReadText(path));
  } catch (const ParseError& err) {
    throw ParseError(path.string() + ": " + err.what());
  }
}

std::string SerializeProblem(const ProblemFile& file) {
  const SdpPair& p = file.pair;
  nlohmann::ordered_json j;
  if (file.name) j["name"] = *file.name;
  if (file.expected_outcome) j["expected_outcome"] = *file.expected_outcome;
  j["n"] = p.n();
  j["m"] = p.m();
  if (p.is_exact()) {
    const ExactPairData& e = p.exact();
    auto mat = [&](const ExactSymMat& s) {
      json rows = json::array();
      for (int i = 0; i < s.dim(); ++i) {
        json row = json::array();
        for (int k = 0; k < s.dim(); ++k) row.push_back(ExactEntry(s(i, k)));
        rows.push_back(std::move(row));
      }
      return rows;
    };
    j["C"] = mat(e.c);
    j["A"] = json::array();
    for (const auto& ai : e.a) j["A"].push_back(nlohmann::ordered_json(mat(ai)));
    j["b"] = json::array();
    for (const auto& bi : e.b) j["b"].push_back(nlohmann::ordered_json(ExactEntry(bi)));
  } else {
    using ordered = nlohmann::ordered_json;
    j["C"] = ordered(MatrixJson(p.c().matrix()));
    j["A"] = ordered::array();
    for (const auto& ai : p.a()) j["A"].push_back(ordered(MatrixJson(ai.matrix())));
    j["b"] = ordered(VectorJson(p.b()));
  }
  // One key per line, one matrix per line.
  std::string text = "{\n";
  for (auto it = j.begin(); it != j.end(); ++it) {
    text += "  " + nlohmann::ordered_json(it.key()).dump() + ": ";
    if (it.key() == "A") {
      text += "[\n";
      for (size_t i = 0; i < it->size(); ++i) {
        text += "    " + (*it)[i].dump() + (i + 1 < it->size() ? ",\n" : "\n");
      }
      text += "  ]";
    } else {
      text += it->dump();
    }
    text += std::next(it) == j.end() ? "\n" : ",\n";
  }
  return text + "}\n";
}

void WriteProblemFile(const std::filesystem::path& path,
                      const ProblemFile& file) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << SerializeProblem(file);
}

Candidate ParseCandidate(const std::string& text) {
  const json j = ParseJson(text);
  if (!j.is_object()) throw ParseError("top level: expected an object");
  Candidate c;
  for (const char* key : {"X", "x_opt", "direction_x"}) {
    if (j.contains(key) && !j.at(key).is_null()) {
      c.x = ReadSymMat(j.at(key), key);
      break;
    }
  }
  for (const char* key : {"y", "y_opt", "direction_y"}) {
    if (j.contains(key) && !j.at(key).is_null()) {
      c.y = ReadVector(j.at(key), key);
      break;
    }
  }
  return c;
}

Candidate ReadCandidateFile(const std::filesystem::path& path) {
  try {
    return ParseCandidate(ReadText(path));
  } catch (const ParseError& err) {
    throw ParseError(path.string() + ": " + err.what());
  }
}

bool Report::operator==(const Report& o) const {
  return kind == o.kind && SameNumber(game_value, o.game_value) &&
         m_mode == o.m_mode && SameNumber(m_value, o.m_value) &&
         certified_log2 == o.certified_log2 && SameArray(x_opt, o.x_opt) &&
         SameArray(y_opt, o.y_opt) && SameArray(direction_x, o.direction_x) &&
         SameArray(direction_y, o.direction_y) &&
         implied_aux_value.has_value() == o.implied_aux_value.has_value() &&
         (!implied_aux_value ||
          SameNumber(*implied_aux_value, *o.implied_aux_value)) &&
         SameMap(diagnostics, o.diagnostics) && notes == o.notes &&
         SameMap(timings_ms, o.timings_ms);
}

Report MakeReport(const Outcome& outcome,
                  std::map<std::string, double> timings_ms) {
  Report r;
  r.kind = ToString(outcome.kind);
  r.game_value = outcome.game_value;
  r.m_mode = ToString(outcome.m_used.mode);
  r.m_value = outcome.m_used.value;
  if (outcome.m_used.certified_log2) {
    r.certified_log2 = outcome.m_used.certified_log2->str();
  }
  if (outcome.x_opt) r.x_opt = outcome.x_opt->matrix();
  r.y_opt = outcome.y_opt;
  if (outcome.direction_x) r.direction_x = outcome.direction_x->matrix();
  r.direction_y = outcome.direction_y;
  r.implied_aux_value = outcome.implied_aux_value;
  r.diagnostics = outcome.diagnostics;
  r.notes = outcome.notes;
  r.timings_ms = std::move(timings_ms);
  return r;
}

nlohmann::json ReportToJson(const Report& report) {
  json j;
  j["kind"] = report.kind;
  j["game_value"] = Number(report.game_value);
  j["M"] = {{"mode", report.m_mode}, {"value", Number(report.m_value)}};
  if (report.certified_log2) j["M"]["certified_log2"] = *report.certified_log2;
  if (report.x_opt) j["x_opt"] = MatrixJson(*report.x_opt);
  if (report.y_opt) j["y_opt"] = VectorJson(*report.y_opt);
  if (report.direction_x) j["direction_x"] = MatrixJson(*report.direction_x);
  if (report.direction_y) j["direction_y"] = VectorJson(*report.direction_y);
  if (report.implied_aux_value) {
    j["implied_aux_value"] = Number(*report.implied_aux_value);
  }
  j["diagnostics"] = NumberMap(report.diagnostics);
  j["notes"] = report.notes;
  j["timings_ms"] = NumberMap(report.timings_ms);
  return j;
}

Report ReportFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("report: expected an object");
  Report r;
  const json& kind = Field(j, "kind");
  if (!kind.is_string()) throw ParseError("kind: expected a string");
  r.kind = kind.get<std::string>();
  r.game_value = ReadNumber(Field(j, "game_value"), "game_value");
  const json& m = Field(j, "M");
  const json& mode = Field(m, "mode");
  if (!mode.is_string()) throw ParseError("M.mode: expected a string");
  r.m_mode = mode.get<std::string>();
  r.m_value = ReadNumber(Field(m, "value"), "M.value");
  if (m.contains("certified_log2")) {
    const json& e = m.at("certified_log2");
    if (!e.is_string()) throw ParseError("M.certified_log2: expected a string");
    r.certified_log2 = e.get<std::string>();
  }
  if (j.contains("x_opt")) r.x_opt = ReadMatrix(j.at("x_opt"), "x_opt");
  if (j.contains("y_opt")) r.y_opt = ReadVector(j.at("y_opt"), "y_opt");
  if (j.contains("direction_x")) {
    r.direction_x = ReadMatrix(j.at("direction_x"), "direction_x");
  }
  if (j.contains("direction_y")) {
    r.direction_y = ReadVector(j.at("direction_y"), "direction_y");
  }
  if (j.contains("implied_aux_value")) {
    r.implied_aux_value =
        ReadNumber(j.at("implied_aux_value"), "implied_aux_value");
  }
  if (j.contains("diagnostics")) {
    r.diagnostics = ReadNumberMap(j.at("diagnostics"), "diagnostics");
  }
  if (j.contains("notes")) {
    const json& notes = j.at("notes");
    if (!notes.is_array()) throw ParseError("notes: expected an array");
    for (const auto& note : notes) {
      if (!note.is_string()) throw ParseError("notes: expected strings");
      r.notes.push_back(note.get<std::string>());
    }
  }
  if (j.contains("timings_ms")) {
    r.timings_ms = ReadNumberMap(j.at("timings_ms"), "timings_ms");
  }
  return r;
}

std::string ReportToText(const Report& report) {
  std::ostringstream out;
  out << "outcome: " << report.kind << "\n";
  out << "game value: " << FormatDouble(report.game_value) << "\n";
  out << "M: " << FormatDouble(report.m_value) << " (" << report.m_mode
      << ")\n";
  if (report.certified_log2) {
    out << "certified log2 M: " << *report.certified_log2 << "\n";
  }
  if (report.x_opt) AppendMatrix(out, "X", *report.x_opt);
  if (report.y_opt) AppendVector(out, "y", *report.y_opt);
  if (report.direction_x) AppendMatrix(out, "primal direction", *report.direction_x);
  if (report.direction_y) AppendVector(out, "dual direction", *report.direction_y);
  if (report.implied_aux_value) {
    out << "implied relaxation value: "
        << FormatDouble(*report.implied_aux_value) << "\n";
  }
  for (const auto& note : report.notes) out << "note: " << note << "\n";
  for (const auto& [key, value] : report.diagnostics) {
    out << "diagnostic " << key << ": " << FormatDouble(value) << "\n";
  }
  for (const auto& [key, value] : report.timings_ms) {
    out << "time " << key << ": " << FormatDouble(value) << " ms\n";
  }
  return out.str();
}

int ExitCodeFor(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kStronglyOptimal:
      return 0;
    case OutcomeKind::kPrimalUnboundedCert:
    case OutcomeKind::kDualUnboundedCert:
      return 2;
    case OutcomeKind::kInconclusive:
      return 3;
  }
  return 1;
}

}  // namespace sdpgame
