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

#ifndef SDPGAME_SYM_MAT_H_
#define SDPGAME_SYM_MAT_H_

#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace sdpgame {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Dense real symmetric matrix. Symmetry is checked (exactly) when built from
// arbitrary data; arithmetic helpers that may introduce rounding asymmetry go
// through Symmetrize().
class SymMat {
 public:
  SymMat() = default;

  // Throws std::invalid_argument on a non-square, empty, non-finite or
  // asymmetric input.
  explicit SymMat(Matrix m);
  SymMat(std::initializer_list<std::initializer_list<double>> rows);

  static SymMat Symmetrize(const Matrix& m);
  static SymMat Identity(int n);
  static SymMat Zero(int n);
  static SymMat Diagonal(const Vector& d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double MaxAbsEntry() const;
  double Trace() const { return m_.trace(); }

  SymMat operator+(const SymMat& o) const;
  SymMat operator-(const SymMat& o) const;
  SymMat operator-() const;
  SymMat operator*(double s) const;
  SymMat operator/(double s) const { return *this * (1.0 / s); }
  SymMat& operator+=(const SymMat& o);

  bool operator==(const SymMat& o) const { return m_ == o.m_; }

 private:
  Matrix m_;
};

inline SymMat operator*(double s, const SymMat& a) { return a * s; }

// Σ_ij A_ij B_ij. Throws std::invalid_argument on dimension mismatch.
double FrobeniusInner(const SymMat& a, const SymMat& b);

// Smallest / largest eigenvalue through a symmetric eigensolver.
// Throws std::invalid_argument on non-finite entries.
double MinEigenvalue(const SymMat& a);
double MaxEigenvalue(const SymMat& a);

// min_eig(A) >= -tol * (1 + max|A_ij|).
bool IsPsd(const SymMat& a, double tol);

// Projects onto the PSD cone by clipping eigenvalues below zero.
SymMat ClipNegativeEigenvalues(const SymMat& a);

// Exact-rational symmetric matrix, row-major. Used for data ingestion and the
// bitsize computations; converted to SymMat one-way via ToFloat().
class ExactSymMat {
 public:
  ExactSymMat() = default;
  // Throws std::invalid_argument when entries.size() != n*n, n < 1 or the
  // entries are not symmetric.
  ExactSymMat(int n, std::vector<Rational> entries);

  int dim() const { return n_; }
  const Rational& operator()(int i, int j) const { return entries_[i * n_ + j]; }
  const std::vector<Rational>& entries() const { return entries_; }
  SymMat ToFloat() const;

  bool operator==(const ExactSymMat& o) const = default;

 private:
  int n_ = 0;
  std::vector<Rational> entries_;
};

// Parses "p/q" or "p" (decimal integers, optional sign) into an exact rational.
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational ParseRational(const std::string& text);
std::string FormatRational(const Rational& r);
double RationalToDouble(const Rational& r);

}  // namespace sdpgame

#endif  // SDPGAME_SYM_MAT_H_
