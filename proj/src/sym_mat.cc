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

#include "sdpgame/sym_mat.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace sdpgame {
namespace {

void CheckSameDim(const SymMat& a, const SymMat& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("dimension mismatch: " +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
  }
}

Eigen::SelfAdjointEigenSolver<Matrix> Eigensolve(const SymMat& a) {
  if (!a.matrix().allFinite()) {
    throw std::invalid_argument("matrix has non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix(),
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver did not converge");
  }
  return es;
}

bool IsIntegerText(const std::string& s) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt ParseBigInt(const std::string& s) {
  if (!IsIntegerText(s)) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  std::string digits = s[0] == '+' ? s.substr(1) : s;
  return BigInt(digits);
}

}  // namespace

SymMat::SymMat(Matrix m) : m_(std::move(m)) {
  if (m_.rows() < 1 || m_.rows() != m_.cols()) {
    throw std::invalid_argument("symmetric matrix must be square with dim >= 1");
  }
  if (!m_.allFinite()) {
    throw std::invalid_argument("matrix has non-finite entries");
  }
  for (int i = 0; i < m_.rows(); ++i) {
    for (int j = i + 1; j < m_.cols(); ++j) {
      if (m_(i, j) != m_(j, i)) {
        throw std::invalid_argument("matrix is not symmetric at (" +
                                    std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      }
    }
  }
}

SymMat::SymMat(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  Matrix m(n, n);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("symmetric matrix must be square");
    }
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  *this = SymMat(std::move(m));
}

SymMat SymMat::Symmetrize(const Matrix& m) {
  return SymMat(Matrix(0.5 * (m + m.transpose())));
}

SymMat SymMat::Identity(int n) { return SymMat(Matrix::Identity(n, n)); }

SymMat SymMat::Zero(int n) { return SymMat(Matrix::Zero(n, n)); }

SymMat SymMat::Diagonal(const Vector& d) {
  return SymMat(Matrix(d.asDiagonal()));
}

double SymMat::MaxAbsEntry() const { return m_.cwiseAbs().maxCoeff(); }

SymMat SymMat::operator+(const SymMat& o) const {
  CheckSameDim(*this, o);
  SymMat r;
  r.m_ = m_ + o.m_;
  return r;
}

SymMat SymMat::operator-(const SymMat& o) const {
  CheckSameDim(*this, o);
  SymMat r;
  r.m_ = m_ - o.m_;
  return r;
}

SymMat SymMat::operator-() const {
  SymMat r;
  r.m_ = -m_;
  return r;
}

SymMat SymMat::operator*(double s) const {
  SymMat r;
  r.m_ = s * m_;
  return r;
}

SymMat& SymMat::operator+=(const SymMat& o) {
  CheckSameDim(*this, o);
  m_ += o.m_;
  return *this;
}

double FrobeniusInner(const SymMat& a, const SymMat& b) {
  CheckSameDim(a, b);
  return a.matrix().cwiseProduct(b.matrix()).sum();
}

double MinEigenvalue(const SymMat& a) {
  return Eigensolve(a).eigenvalues()(0);
}

double MaxEigenvalue(const SymMat& a) {
  return Eigensolve(a).eigenvalues()(a.dim() - 1);
}

bool IsPsd(const SymMat& a, double tol) {
  if (tol < 0) throw std::invalid_argument("tolerance must be nonnegative");
  return MinEigenvalue(a) >= -tol * (1.0 + a.MaxAbsEntry());
}

SymMat ClipNegativeEigenvalues(const SymMat& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver did not converge");
  }
  const Vector clipped = es.eigenvalues().cwiseMax(0.0);
  return SymMat::Symmetrize(es.eigenvectors() * clipped.asDiagonal() *
                            es.eigenvectors().transpose());
}

ExactSymMat::ExactSymMat(int n, std::vector<Rational> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n_ < 1 || entries_.size() != static_cast<size_t>(n_) * n_) {
    throw std::invalid_argument("exact matrix needs n >= 1 and n*n entries");
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) {
        throw std::invalid_argument("matrix is not symmetric at (" +
                                    std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      }
    }
  }
}

SymMat ExactSymMat::ToFloat() const {
  Matrix m(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) m(i, j) = RationalToDouble((*this)(i, j));
  }
  return SymMat(std::move(m));
}

Rational ParseRational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(ParseBigInt(text));
  const BigInt num = ParseBigInt(text.substr(0, slash));
  const std::string den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw std::invalid_argument("denominator must be unsigned: '" + text + "'");
  }
  const BigInt den = ParseBigInt(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  return Rational(num, den);
}

std::string FormatRational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double RationalToDouble(const Rational& r) {
  return r.convert_to<double>();
}

}  // namespace sdpgame
