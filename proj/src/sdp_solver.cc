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

#include "sdpgame/sdp_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sdpgame {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Objective divergence that triggers an infeasibility check, times the data
// scale.
constexpr double kDivergenceThreshold = 1e8;
// Accepted residual of a normalized improving ray.
constexpr double kRayTolerance = 1e-6;
// Gram-Schmidt threshold for dropping dependent constraints.
constexpr double kDependencyTolerance = 1e-10;
// Proximal term on the equilibrated free-scalar rows of the Newton matrix.
constexpr double kFreeRegularization = 1e-12;
constexpr double kConstraintRegularization = 1e-12;
// Iterative refinement of Newton directions: always this many rounds, then
// more while the residual falls by the progress factor.
constexpr int kMinRefinements = 2;
constexpr int kMaxRefinements = 8;
constexpr double kRefineProgress = 0.5;
// Backtracking when a step lands on the cone boundary by rounding.
constexpr double kStepShrink = 0.5;
constexpr int kMaxStepShrinks = 30;

struct Segment {
  int block;
  int offset;
  int size;
};

// Minimization form of the problem after presolve, with the blocks split by
// kind. Matrix blocks keep one coefficient matrix per retained constraint.
struct FlatProblem {
  int p = 0;
  std::vector<int> kept;
  std::vector<int> psd_blocks;  // structure indices of matrix blocks
  std::vector<Segment> lp_segments;
  std::vector<Segment> free_segments;
  int n_lp = 0;
  int n_free = 0;
  std::vector<Matrix> c_psd;
  Vector c_lp;
  Vector c_free;
  std::vector<std::vector<Matrix>> a_psd;  // [psd block][constraint]
  std::vector<std::vector<int>> touching;  // constraints with nonzero coeffs
  Matrix a_lp;                             // p x n_lp
  Matrix a_free;                           // p x n_free
  Vector beta;
  double sign = 1.0;  // +1 minimize, -1 maximize (objective negated)
  int barrier_degree = 0;
  double data_scale = 1.0;
  double norm_beta = 0.0;
  double norm_c = 0.0;
};

struct Iterate {
  std::vector<Matrix> x;
  std::vector<Matrix> s;
  Vector x_lp;
  Vector s_lp;
  Vector x_free;
  Vector y;
};

struct Direction {
  std::vector<Matrix> dx;
  std::vector<Matrix> ds;
  Vector dx_lp;
  Vector ds_lp;
  Vector dx_free;
  Vector dy;
};

struct Residuals {
  Vector r_p;
  std::vector<Matrix> r_d;
  Vector r_d_lp;
  Vector r_free;
};

struct NtScaling {
  Matrix g;
  Matrix g_inv;
  Matrix w;
  Vector d;
};

struct PresolveOutcome {
  std::vector<int> kept;
  std::vector<std::string> warnings;
  // Farkas ray over the original constraints when a dependent row has an
  // inconsistent right-hand side.
  std::optional<Vector> inconsistency_ray;
};

Matrix Sym(const Matrix& m) { return 0.5 * (m + m.transpose()); }

// Vectorization that preserves inner products on symmetric blocks.
Vector Vectorize(const BlockStructure& st, const BlockVector& v) {
  Vector out(st.ScalarDimension());
  int pos = 0;
  for (int b = 0; b < st.num_blocks(); ++b) {
    const BlockSpec& spec = st.block(b);
    if (spec.kind == BlockKind::kMatrix) {
      for (int j = 0; j < spec.size; ++j) {
        out(pos++) = v[b](j, j);
        for (int i = j + 1; i < spec.size; ++i) {
          out(pos++) = std::sqrt(2.0) * v[b](i, j);
        }
      }
    } else {
      for (int i = 0; i < spec.size; ++i) out(pos++) = v[b](i, 0);
    }
  }
  return out;
}

PresolveOutcome Presolve(const StandardSdp& problem) {
  PresolveOutcome out;
  const int p = static_cast<int>(problem.constraints.size());
  std::vector<Vector> basis;       // orthonormalized kept rows
  std::vector<Vector> basis_comb;  // each basis vector as a combination of rows
  for (int j = 0; j < p; ++j) {
    Vector v = Vectorize(problem.structure, problem.constraints[j].coeffs);
    Vector comb = Vector::Zero(p);
    comb(j) = 1.0;
    const double norm0 = v.norm();
    for (size_t k = 0; k < basis.size(); ++k) {
      const double proj = basis[k].dot(v);
      v -= proj * basis[k];
      comb -= proj * basis_comb[k];
    }
    // Second pass for numerical orthogonality.
    for (size_t k = 0; k < basis.size(); ++k) {
      const double proj = basis[k].dot(v);
      v -= proj * basis[k];
      comb -= proj * basis_comb[k];
    }
    const double norm = v.norm();
    if (norm > kDependencyTolerance * std::max(1.0, norm0)) {
      basis.push_back(v / norm);
      basis_comb.push_back(comb / norm);
      out.kept.push_back(j);
      continue;
    }
    // Row j is a combination of kept rows; comb holds e_j - sum_k coef_k e_k.
    double rhs_residual = 0.0;
    double rhs_scale = 1.0;
    for (int i = 0; i < p; ++i) {
      rhs_residual += comb(i) * problem.constraints[i].rhs;
      rhs_scale += std::abs(comb(i) * problem.constraints[i].rhs);
    }
    if (std::abs(rhs_residual) > 1e-9 * rhs_scale && !out.inconsistency_ray) {
      out.inconsistency_ray = comb / rhs_residual;
    }
    out.warnings.push_back("presolve: dropped linearly dependent constraint " +
                           std::to_string(j));
  }
  return out;
}

FlatProblem Flatten(const StandardSdp& problem, const std::vector<int>& kept) {
  FlatProblem f;
  const BlockStructure& st = problem.structure;
  f.kept = kept;
  f.p = static_cast<int>(kept.size());
  f.sign = problem.sense == Sense::kMinimize ? 1.0 : -1.0;
  for (int b = 0; b < st.num_blocks(); ++b) {
    const BlockSpec& spec = st.block(b);
    switch (spec.kind) {
      case BlockKind::kMatrix:
        f.psd_blocks.push_back(b);
        f.barrier_degree += spec.size;
        break;
      case BlockKind::kDiag:
        f.lp_segments.push_back({b, f.n_lp, spec.size});
        f.n_lp += spec.size;
        f.barrier_degree += spec.size;
        break;
      case BlockKind::kFree:
        f.free_segments.push_back({b, f.n_free, 1});
        f.n_free += 1;
        break;
    }
  }
  double max_abs = 0.0;
  f.c_lp = Vector::Zero(f.n_lp);
  f.c_free = Vector::Zero(f.n_free);
  for (int b : f.psd_blocks) {
    f.c_psd.push_back(f.sign * problem.objective[b]);
    max_abs = std::max(max_abs, problem.objective[b].cwiseAbs().maxCoeff());
  }
  for (const auto& seg : f.lp_segments) {
    f.c_lp.segment(seg.offset, seg.size) = f.sign * problem.objective[seg.block];
  }
  for (const auto& seg : f.free_segments) {
    f.c_free(seg.offset) = f.sign * problem.objective[seg.block](0, 0);
  }
  if (f.n_lp > 0) max_abs = std::max(max_abs, f.c_lp.cwiseAbs().maxCoeff());
  if (f.n_free > 0) max_abs = std::max(max_abs, f.c_free.cwiseAbs().maxCoeff());

  f.a_psd.assign(f.psd_blocks.size(), {});
  f.touching.assign(f.psd_blocks.size(), {});
  f.a_lp = Matrix::Zero(f.p, f.n_lp);
  f.a_free = Matrix::Zero(f.p, f.n_free);
  f.beta = Vector::Zero(f.p);
  for (int r = 0; r < f.p; ++r) {
    const LinearConstraint& con = problem.constraints[kept[r]];
    f.beta(r) = con.rhs;
    for (size_t q = 0; q < f.psd_blocks.size(); ++q) {
      const Matrix& a = con.coeffs[f.psd_blocks[q]];
      f.a_psd[q].push_back(a);
      if (a.cwiseAbs().maxCoeff() > 0.0) {
        f.touching[q].push_back(r);
        max_abs = std::max(max_abs, a.cwiseAbs().maxCoeff());
      }
    }
    for (const auto& seg : f.lp_segments) {
      f.a_lp.row(r).segment(seg.offset, seg.size) =
          con.coeffs[seg.block].col(0).transpose();
    }
    for (const auto& seg : f.free_segments) {
      f.a_free(r, seg.offset) = con.coeffs[seg.block](0, 0);
    }
  }
  if (f.n_lp > 0 && f.p > 0) max_abs = std::max(max_abs, f.a_lp.cwiseAbs().maxCoeff());
  if (f.n_free > 0 && f.p > 0) {
    max_abs = std::max(max_abs, f.a_free.cwiseAbs().maxCoeff());
  }
  if (f.p > 0) max_abs = std::max(max_abs, f.beta.cwiseAbs().maxCoeff());
  f.data_scale = 1.0 + max_abs;
  f.norm_beta = f.beta.norm();
  double c2 = f.c_lp.squaredNorm() + f.c_free.squaredNorm();
  for (const auto& c : f.c_psd) c2 += c.squaredNorm();
  f.norm_c = std::sqrt(c2);
  return f;
}

// sum_b <A_jb, X_b> + A_lp x_lp + A_free x_free
Vector ApplyA(const FlatProblem& f, const std::vector<Matrix>& x,
              const Vector& x_lp, const Vector& x_free) {
  Vector out = Vector::Zero(f.p);
  for (size_t q = 0; q < f.psd_blocks.size(); ++q) {
    for (int j : f.touching[q]) out(j) += f.a_psd[q][j].cwiseProduct(x[q]).sum();
  }
  if (f.n_lp > 0) out += f.a_lp * x_lp;
  if (f.n_free > 0) out += f.a_free * x_free;
  return out;
}

std::vector<Matrix> ApplyATPsd(const FlatProblem& f, const Vector& y) {
  std::vector<Matrix> out;
  for (size_t q = 0; q < f.psd_blocks.size(); ++q) {
    Matrix acc = Matrix::Zero(f.c_psd[q].rows(), f.c_psd[q].cols());
    for (int j : f.touching[q]) acc += y(j) * f.a_psd[q][j];
    out.push_back(std::move(acc));
  }
  return out;
}

Residuals ComputeResiduals(const FlatProblem& f, const Iterate& it) {
  Residuals r;
  r.r_p = f.beta - ApplyA(f, it.x, it.x_lp, it.x_free);
  const std::vector<Matrix> aty = ApplyATPsd(f, it.y);
  for (size_t q = 0; q < f.psd_blocks.size(); ++q) {
    r.r_d.push_back(f.c_psd[q] - aty[q] - it.s[q]);
  }
  r.r_d_lp = f.c_lp - (f.n_lp > 0 ? Vector(f.a_lp.transpose() * it.y)
                                  : Vector::Zero(0)) -
             it.s_lp;
  r.r_free = f.c_free - (f.n_free > 0 ? Vector(f.a_free.transpose() * it.y)
                                      : Vector::Zero(0));
  return r;
}

double SmallestEigenvalue(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.info() == Eigen::Success ? es.eigenvalues()(0) : -kInf;
}

std::optional<std::pair<Matrix, Matrix>> SqrtAndInvSqrt(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) return std::nullopt;
  const Vector& lam = es.eigenvalues();
  if (!(lam.minCoeff() > 0.0)) return std::nullopt;
  const Matrix& v = es.eigenvectors();
  const Vector sq = lam.cwiseSqrt();
  return std::make_pair(Matrix(v * sq.asDiagonal() * v.transpose()),
                        Matrix(v * sq.cwiseInverse().asDiagonal() * v.transpose()));
}

// W = G G^T with G^{-1} X G^{-T} = G^T S G = diag(d).
std::optional<NtScaling> ComputeNt(const Matrix& x, const Matrix& s) {
  auto xs = SqrtAndInvSqrt(x);
  auto ss = SqrtAndInvSqrt(s);
  if (!xs || !ss) return std::nullopt;
  const Matrix& lx = xs->first;
  const Matrix& lx_inv = xs->second;
  Eigen::JacobiSVD<Matrix> svd(lx * ss->first,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector d = svd.singularValues();
  if (!(d.minCoeff() > 0.0)) return std::nullopt;
  NtScaling nt;
  nt.d = d;
  const Matrix& u = svd.matrixU();
  nt.g = lx * u * d.cwiseSqrt().cwiseInverse().asDiagonal();
  nt.g_inv = d.cwiseSqrt().asDiagonal() * u.transpose() * lx_inv;
  nt.w = Sym(nt.g * nt.g.transpose());
  return nt;
}

// Largest alpha with X + alpha dX psd (kInf if unbounded), or nullopt if X
// itself is not numerically positive definite.
std::optional<double> MaxStepPsd(const Matrix& x, const Matrix& dx) {
  Eigen::LLT<Matrix> llt(x);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const Matrix l_inv_dx = llt.matrixL().solve(dx);
  const Matrix m = llt.matrixL().solve(l_inv_dx.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(Sym(m), Eigen::EigenvaluesOnly);
  const double lam = es.eigenvalues()(0);
  return lam < 0.0 ? -1.0 / lam : kInf;
}

double MaxStepLp(const Vector& x, const Vector& dx) {
  double alpha = kInf;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx(i) < 0.0) alpha = std::min(alpha, -x(i) / dx(i));
  }
  return alpha;
}

class InteriorPointEngine {
 public:
  InteriorPointEngine(const FlatProblem& f, const SolverOptions& opts)
      : f_(f), opts_(opts) {}

  // On kMaxIterations or kNumericalFailure the iterate is rolled back to the
  // one with the smallest optimality merit seen, and the status becomes
  // kNearOptimal if that merit is within kNearOptimalFactor * tol.
  SolveStatus Run(Iterate& it, std::vector<IterationStats>& trace, int& iters);

 private:
  SolveStatus MainLoop(Iterate& it, std::vector<IterationStats>& trace,
                       int& iters);

  bool BuildNewtonSystem(const Iterate& it);
  bool SolveOnce(const Residuals& res, const std::vector<Matrix>& rc,
                 const Vector& rc_lp, Direction& dir) const;
  bool SolveNewton(const Residuals& res, const std::vector<Matrix>& rc,
                   const Vector& rc_lp, Direction& dir) const;
  bool StepLengths(const Iterate& it, const Direction& dir, double& alpha_p,
                   double& alpha_d) const;

  const FlatProblem& f_;
  const SolverOptions& opts_;
  std::vector<NtScaling> nt_;
  Vector w_lp_;
  // Newton matrix [[H, A_free], [A_free^T, 0]], equilibrated as E K E and
  // factored with partial pivoting. H alone may be singular when a
  // constraint touches only free scalars.
  Eigen::PartialPivLU<Matrix> newton_;
  Vector equil_;
  Iterate best_;
  double best_merit_ = kInf;
};

bool InteriorPointEngine::BuildNewtonSystem(const Iterate& it) {
  nt_.clear();
  Matrix h = Matrix::Zero(f_.p, f_.p);
  for (size_t q = 0; q < f_.psd_blocks.size(); ++q) {
    auto nt = ComputeNt(it.x[q], it.s[q]);
    if (!nt) return false;
    const std::vector<int>& touch = f_.touching[q];
    for (size_t jj = 0; jj < touch.size(); ++jj) {
      const int j = touch[jj];
      const Matrix t = nt->w * f_.a_psd[q][j] * nt->w;
      for (size_t ii = 0; ii <= jj; ++ii) {
        const int i = touch[ii];
        const double v = f_.a_psd[q][i].cwiseProduct(t).sum();
        h(i, j) += v;
        if (i != j) h(j, i) += v;
      }
    }
    nt_.push_back(std::move(*nt));
  }
  if (f_.n_lp > 0) {
    w_lp_ = it.x_lp.cwiseQuotient(it.s_lp);
    h += f_.a_lp * w_lp_.asDiagonal() * f_.a_lp.transpose();
  }
  const int dim = f_.p + f_.n_free;
  Matrix k = Matrix::Zero(dim, dim);
  k.topLeftCorner(f_.p, f_.p) = h;
  if (f_.n_free > 0) {
    k.topRightCorner(f_.p, f_.n_free) = f_.a_free;
    k.bottomLeftCorner(f_.n_free, f_.p) = f_.a_free.transpose();
  }
  if (!k.allFinite()) return false;
  // Symmetric Ruiz scaling toward unit row maxima.
  equil_ = Vector::Ones(dim);
  for (int pass = 0; pass < 4; ++pass) {
    const Vector row_max = k.cwiseAbs().rowwise().maxCoeff();
    for (int i = 0; i < dim; ++i) {
      const double r = row_max(i) > 0.0 ? 1.0 / std::sqrt(row_max(i)) : 1.0;
      equil_(i) *= r;
      k.row(i) *= r;
      k.col(i) *= r;
    }
  }
  // Free scalars may have a zero-cost null space (the optimal face is then
  // unbounded in them); a tiny proximal term keeps the matrix invertible and
  // refinement against the true residuals removes its bias.
  for (int i = f_.p; i < dim; ++i) k(i, i) -= kFreeRegularization;
  newton_.compute(k);
  if (newton_.matrixLU().diagonal().cwiseAbs().minCoeff() > 0.0) return true;
  // Near a degenerate optimum H can lose rank exactly; a small diagonal shift
  // on the equilibrated matrix restores a usable factorization.
  for (int i = 0; i < f_.p; ++i) k(i, i) += kConstraintRegularization;
  newton_.compute(k);
  return newton_.matrixLU().diagonal().cwiseAbs().minCoeff() > 0.0;
}

bool InteriorPointEngine::SolveOnce(const Residuals& res,
                                    const std::vector<Matrix>& rc,
                                    const Vector& rc_lp, Direction& dir) const {
  // H dy + A_free dx_free = r_p - A(R_c - W R_d W),  A_free^T dy = r_free.
  Vector rhs = res.r_p;
  for (size_t q = 0; q < f_.psd_blocks.size(); ++q) {
    const Matrix t = rc[q] - nt_[q].w * res.r_d[q] * nt_[q].w;
    for (int j : f_.touching[q]) rhs(j) -= f_.a_psd[q][j].cwiseProduct(t).sum();
  }
  if (f_.n_lp > 0) rhs -= f_.a_lp * (rc_lp - w_lp_.cwiseProduct(res.r_d_lp));

  Vector full(f_.p + f_.n_free);
  full << rhs, res.r_free;
  const Vector sol =
      equil_.cwiseProduct(newton_.solve(equil_.cwiseProduct(full)));
  dir.dy = sol.head(f_.p);
  dir.dx_free = sol.tail(f_.n_free);
  if (!dir.dy.allFinite() || !dir.dx_free.allFinite()) return false;

  const std::vector<Matrix> at_dy = ApplyATPsd(f_, dir.dy);
  dir.ds.clear();
  dir.dx.clear();
  for (size_t q = 0; q < f_.psd_blocks.size(); ++q) {
    dir.ds.push_back(Sym(res.r_d[q] - at_dy[q]));
    dir.dx.push_back(Sym(rc[q] - nt_[q].w * dir.ds[q] * nt_[q].w));
  }
  if (f_.n_lp > 0) {
    dir.ds_lp = res.r_d_lp - f_.a_lp.transpose() * dir.dy;
    dir.dx_lp = rc_lp - w_lp_.cwiseProduct(dir.ds_lp);
  } else {
    dir.ds_lp = Vector::Zero(0);
    dir.dx_lp = Vector::Zero(0);
  }
  return true;
}

// The eliminated equations (dual slack and complementarity) hold by
// construction; refinement restores the primal equations and the
// free-variable rows, which lose accuracy as the Newton matrix degenerates.
// Corrections are kept only while they reduce the residual.
bool InteriorPointEngine::SolveNewton(const Residuals& res,
                                      const std::vector<Matrix>& rc,
                                      const Vector& rc_lp,
                                      Direction& dir) const {
  if (!SolveOnce(res, rc, rc_lp, dir)) return false;
  Residuals err;
  err.r_d = res.r_d;
  for (auto& m : err.r_d) m.setZero();
  err.r_d_lp = Vector::Zero(res.r_d_lp.size());
  std::vector<Matrix> zero_c = err.r_d;
  const Vector zero_c_lp = Vector::Zero(rc_lp.size());
  auto residual = [&](const Direction& d) {
    err.r_p = res.r_p - ApplyA(f_, d.dx, d.dx_lp, d.dx_free);
    err.r_free = res.r_free;
    if (f_.n_free > 0) err.r_free -= f_.a_free.transpose() * d.dy;
    return err.r_p.norm() + err.r_free.norm();
  };
  double size = residual(dir);
  for (int round = 0; round < kMaxRefinements && size > 0.0; ++round) {
    Direction fix;
    if (!SolveOnce(err, zero_c, zero_c_lp, fix)) return false;
    Direction next = dir;
    for (size_t q = 0; q < next.dx.size(); ++q) {
      next.dx[q] += fix.dx[q];
      next.ds[q] += fix.ds[q];
    }
    next.dx_lp += fix.dx_lp;
    next.ds_lp += fix.ds_lp;
    next.dx_free += fix.dx_free;
    next.dy += fix.dy;
    const double next_size = residual(next);
    // A correction that does not reduce the residual is discarded.
    if (!(next_size < size)) break;
    dir = std::move(next);
    const bool slow = next_size > kRefineProgress * size;
    size = next_size;
    if (round + 1 >= kMinRefinements && slow) break;
  }
  return true;
}

bool InteriorPointEngine::StepLengths(const Iterate& it, const Direction& dir,
                                      double& alpha_p, double& alpha_d) const {
  alpha_p = kInf;
  alpha_d = kInf;
  for (size_t q = 0; q < f_.psd_blocks.size(); ++q) {
    auto ap = MaxStepPsd(it.x[q], dir.dx[q]);
    auto ad = MaxStepPsd(it.s[q], dir.ds[q]);
    if (!ap || !ad) return false;
    alpha_p = std::min(alpha_p, *ap);
    alpha_d = std::min(alpha_d, *ad);
  }
  if (f_.n_lp > 0) {
    alpha_p = std::min(alpha_p, MaxStepLp(it.x_lp, dir.dx_lp));
    alpha_d = std::min(alpha_d, MaxStepLp(it.s_lp, dir.ds_lp));
  }
  return true;
}

double Complementarity(const FlatProblem& f, const Iterate& it) {
  double c = 0.0;
  for (size_t q = 0; q < f.psd_blocks.size(); ++q) {
    c += it.x[q].cwiseProduct(it.s[q]).sum();
  }
  if (f.n_lp > 0) c += it.x_lp.dot(it.s_lp);
  return c;
}

double PrimalObjective(const FlatProblem& f, const Iterate& it) {
  double v = 0.0;
  for (size_t q = 0; q < f.psd_blocks.size(); ++q) {
    v += f.c_psd[q].cwiseProduct(it.x[q]).sum();
  }
  if (f.n_lp > 0) v += f.c_lp.dot(it.x_lp);
  if (f.n_free > 0) v += f.c_free.dot(it.x_free);
  return v;
}

double DualResidualNorm(const FlatProblem& f, const Residuals& r) {
  double s = r.r_d_lp.squaredNorm() + r.r_free.squaredNorm();
  for (size_t q = 0; q < f.psd_blocks.size(); ++q) s += r.r_d[q].squaredNorm();
  return std::sqrt(s);
}

SolveStatus InteriorPointEngine::Run(Iterate& it,
                                     std::vector<IterationStats>& trace,
                                     int& iters) {
  const SolveStatus status = MainLoop(it, trace, iters);
  if ((status == SolveStatus::kMaxIterations ||
       status == SolveStatus::kNumericalFailure) &&
      best_merit_ < kInf) {
    it = best_;
    if (best_merit_ <= kNearOptimalFactor * opts_.tol) {
      return SolveStatus::kNearOptimal;
    }
  }
  return status;
}

SolveStatus InteriorPointEngine::MainLoop(Iterate& it,
                                          std::vector<IterationStats>& trace,
                                          int& iters) {
  int stalled = 0;
  for (iters = 0;; ++iters) {
    const Residuals res = ComputeResiduals(f_, it);
    const double pobj = PrimalObjective(f_, it);
    const double dobj = f_.beta.dot(it.y);
    const double compl_xs = Complementarity(f_, it);
    const double pinf = res.r_p.norm() / (1.0 + f_.norm_beta);
    const double dinf = DualResidualNorm(f_, res) / (1.0 + f_.norm_c);
    const double gap = pobj - dobj;

    double correction = -it.y.dot(res.r_p);
    for (size_t q = 0; q < f_.psd_blocks.size(); ++q) {
      correction += res.r_d[q].cwiseProduct(it.x[q]).sum();
    }
    if (f_.n_lp > 0) correction += res.r_d_lp.dot(it.x_lp);
    if (f_.n_free > 0) correction += res.r_free.dot(it.x_free);
    const double corrected_gap = gap - correction;
    if (opts_.debug_checks) {
      const double slack = 1e-9 * f_.data_scale *
                           (1.0 + std::abs(pobj) + std::abs(dobj) +
                            std::abs(correction));
      if (corrected_gap < -slack) {
        throw std::logic_error("weak duality violated at iteration " +
                               std::to_string(iters));
      }
    }

    IterationStats stats;
    stats.iteration = iters;
    stats.primal_objective = pobj;
    stats.dual_objective = dobj;
    stats.complementarity = compl_xs;
    stats.corrected_gap = corrected_gap;
    stats.primal_infeasibility = pinf;
    stats.dual_infeasibility = dinf;

    auto push_stats = [&](double ap, double ad) {
      if (!opts_.record_trace) return;
      stats.primal_step = ap;
      stats.dual_step = ad;
      trace.push_back(stats);
    };

    const double merit =
        std::max({pinf, dinf, std::abs(gap) / (1.0 + std::abs(pobj)),
                  compl_xs / (1.0 + std::abs(pobj))});
    if (merit < best_merit_) {
      best_merit_ = merit;
      best_ = it;
    }
    if (!std::isfinite(pobj) || !std::isfinite(dobj)) {
      push_stats(0, 0);
      return SolveStatus::kNumericalFailure;
    }
    if (pinf <= opts_.tol && dinf <= opts_.tol && std::abs(gap) <= opts_.tol &&
        compl_xs <= opts_.tol) {
      push_stats(0, 0);
      return SolveStatus::kOptimal;
    }
    const double threshold = kDivergenceThreshold * f_.data_scale;
    if (dobj > threshold) {
      // (y, s) / b^T y approaches a Farkas ray: A^T y + s = c - R_d.
      const double ray_res =
          (f_.norm_c + DualResidualNorm(f_, res)) / dobj;
      if (ray_res <= kRayTolerance) {
        push_stats(0, 0);
        return SolveStatus::kPrimalInfeasibleDetected;
      }
    }
    if (pobj < -threshold) {
      const double ray_res = (f_.beta - res.r_p).norm() / -pobj;
      if (ray_res <= kRayTolerance) {
        push_stats(0, 0);
        return SolveStatus::kDualInfeasibleDetected;
      }
    }
    if (iters >= opts_.max_iters) {
      push_stats(0, 0);
      return SolveStatus::kMaxIterations;
    }

    if (!BuildNewtonSystem(it)) {
      push_stats(0, 0);
      return SolveStatus::kNumericalFailure;
    }
    const double mu = compl_xs / std::max(1, f_.barrier_degree);

    // Predictor.
    std::vector<Matrix> rc;
    for (size_t q = 0; q < f_.psd_blocks.size(); ++q) rc.push_back(-it.x[q]);
    Vector rc_lp = -it.x_lp;
    Direction pred;
    double ap = 0.0;
    double ad = 0.0;
    if (!SolveNewton(res, rc, rc_lp, pred) ||
        !StepLengths(it, pred, ap, ad)) {
      push_stats(0, 0);
      return SolveStatus::kNumericalFailure;
    }
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);

    double mu_aff = 0.0;
    for (size_t q = 0; q < f_.psd_blocks.size(); ++q) {
      mu_aff += (it.x[q] + ap * pred.dx[q])
                    .cwiseProduct(it.s[q] + ad * pred.ds[q])
                    .sum();
    }
    if (f_.n_lp > 0) {
      mu_aff += (it.x_lp + ap * pred.dx_lp).dot(it.s_lp + ad * pred.ds_lp);
    }
    mu_aff /= std::max(1, f_.barrier_degree);
    const double expon = std::max(1.0, 3.0 * std::min(ap, ad) * std::min(ap, ad));
    double sigma = mu > 0.0 ? std::pow(std::max(0.0, mu_aff) / mu, expon) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);
    if (ap < 0.1 && ad < 0.1) sigma = std::max(sigma, 0.5);

    // Corrector: Lyapunov solve in the NT-scaled space.
    for (size_t q = 0; q < f_.psd_blocks.size(); ++q) {
      const NtScaling& nt = nt_[q];
      const Matrix dxs = nt.g_inv * pred.dx[q] * nt.g_inv.transpose();
      const Matrix dss = nt.g.transpose() * pred.ds[q] * nt.g;
      const Matrix prod = dxs * dss + dss * dxs;
      const int k = static_cast<int>(nt.d.size());
      Matrix z(k, k);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          double num = -prod(i, j);
          if (i == j) num += 2.0 * sigma * mu - 2.0 * nt.d(i) * nt.d(i);
          z(i, j) = num / (nt.d(i) + nt.d(j));
        }
      }
      rc[q] = Sym(nt.g * z * nt.g.transpose());
    }
    if (f_.n_lp > 0) {
      rc_lp = (Vector::Constant(f_.n_lp, sigma * mu) -
               pred.dx_lp.cwiseProduct(pred.ds_lp))
                  .cwiseQuotient(it.s_lp) -
              it.x_lp;
    }
    Direction dir;
    if (!SolveNewton(res, rc, rc_lp, dir) ||
        !StepLengths(it, dir, ap, ad)) {
      push_stats(0, 0);
      return SolveStatus::kNumericalFailure;
    }
    ap = std::min(1.0, opts_.step_fraction * ap);
    ad = std::min(1.0, opts_.step_fraction * ad);
    // The step bound comes from a Cholesky test; the next scaling needs
    // positive eigenvalues, which can fail by rounding near the boundary.
    std::vector<Matrix> x_next(f_.psd_blocks.size());
    std::vector<Matrix> s_next(f_.psd_blocks.size());
    for (int shrink = 0;; ++shrink) {
      bool interior = true;
      for (size_t q = 0; q < f_.psd_blocks.size(); ++q) {
        x_next[q] = Sym(it.x[q] + ap * dir.dx[q]);
        s_next[q] = Sym(it.s[q] + ad * dir.ds[q]);
        interior = interior && SmallestEigenvalue(x_next[q]) > 0.0 &&
                   SmallestEigenvalue(s_next[q]) > 0.0;
      }
      if (interior) break;
      if (shrink == kMaxStepShrinks) {
        push_stats(0, 0);
        return SolveStatus::kNumericalFailure;
      }
      ap *= kStepShrink;
      ad *= kStepShrink;
    }
    push_stats(ap, ad);

    it.x = std::move(x_next);
    it.s = std::move(s_next);
    if (f_.n_lp > 0) {
      it.x_lp += ap * dir.dx_lp;
      it.s_lp += ad * dir.ds_lp;
    }
    if (f_.n_free > 0) it.x_free += ap * dir.dx_free;
    it.y += ad * dir.dy;

    if (ap < 1e-10 && ad < 1e-10) {
      if (++stalled >= 3) return SolveStatus::kNumericalFailure;
    } else {
      stalled = 0;
    }
  }
}

Iterate ColdStart(const FlatProblem& f, const SolverOptions& opts) {
  double zeta_p = 1.0 + (f.p > 0 ? f.beta.cwiseAbs().maxCoeff() : 0.0);
  double zeta_d = 1.0;
  for (const auto& c : f.c_psd) zeta_d = std::max(zeta_d, 1.0 + c.cwiseAbs().maxCoeff());
  if (f.n_lp > 0) zeta_d = std::max(zeta_d, 1.0 + f.c_lp.cwiseAbs().maxCoeff());
  if (opts.initial_scale > 0.0) {
    zeta_p = opts.initial_scale;
    zeta_d = opts.initial_scale;
  }
  Iterate it;
  for (const auto& c : f.c_psd) {
    const int k = static_cast<int>(c.rows());
    it.x.push_back(zeta_p * Matrix::Identity(k, k));
    it.s.push_back(zeta_d * Matrix::Identity(k, k));
  }
  it.x_lp = Vector::Constant(f.n_lp, zeta_p);
  it.s_lp = Vector::Constant(f.n_lp, zeta_d);
  it.x_free = Vector::Zero(f.n_free);
  it.y = Vector::Zero(f.p);
  return it;
}

struct EngineOutput {
  SolveStatus status = SolveStatus::kNumericalFailure;
  FlatProblem flat;
  Iterate it;
  PresolveOutcome presolve;
  std::vector<IterationStats> trace;
  int iterations = 0;
};

EngineOutput RunEngine(const StandardSdp& problem, const SolverOptions& opts) {
  problem.Validate();
  if (!(opts.tol > 0.0) || opts.max_iters < 1 || !(opts.step_fraction > 0.0) ||
      !(opts.step_fraction < 1.0)) {
    throw std::invalid_argument("invalid solver options");
  }
  EngineOutput out;
  out.presolve = Presolve(problem);
  out.flat = Flatten(problem, out.presolve.kept);
  out.it = ColdStart(out.flat, opts);
  if (out.presolve.inconsistency_ray) {
    out.status = SolveStatus::kPrimalInfeasibleDetected;
    return out;
  }
  InteriorPointEngine engine(out.flat, opts);
  out.status = engine.Run(out.it, out.trace, out.iterations);
  return out;
}

BlockVector ExpandPrimal(const StandardSdp& problem, const FlatProblem& f,
                         const Iterate& it) {
  BlockVector x = problem.structure.Zero();
  for (size_t q = 0; q < f.psd_blocks.size(); ++q) {
    x[f.psd_blocks[q]] = Sym(it.x[q]);
  }
  for (const auto& seg : f.lp_segments) {
    x[seg.block] = it.x_lp.segment(seg.offset, seg.size);
  }
  for (const auto& seg : f.free_segments) {
    x[seg.block](0, 0) = it.x_free(seg.offset);
  }
  return x;
}

BlockVector ExpandSlack(const StandardSdp& problem, const FlatProblem& f,
                        const Iterate& it) {
  BlockVector s = problem.structure.Zero();
  for (size_t q = 0; q < f.psd_blocks.size(); ++q) {
    s[f.psd_blocks[q]] = Sym(it.s[q]);
  }
  for (const auto& seg : f.lp_segments) {
    s[seg.block] = it.s_lp.segment(seg.offset, seg.size);
  }
  return s;
}

Vector ExpandDual(const StandardSdp& problem, const FlatProblem& f,
                  const Vector& y) {
  Vector full = Vector::Zero(static_cast<Eigen::Index>(problem.constraints.size()));
  for (int r = 0; r < f.p; ++r) full(f.kept[r]) = y(r);
  return full;
}

BlockVector NegatedAdjoint(const StandardSdp& problem, const Vector& y) {
  BlockVector out = problem.structure.Zero();
  for (size_t j = 0; j < problem.constraints.size(); ++j) {
    if (y(static_cast<Eigen::Index>(j)) == 0.0) continue;
    for (size_t b = 0; b < out.size(); ++b) {
      out[b] -= y(static_cast<Eigen::Index>(j)) * problem.constraints[j].coeffs[b];
    }
  }
  return out;
}

double ConeViolation(const BlockStructure& st, const BlockVector& v) {
  double viol = 0.0;
  for (int b = 0; b < st.num_blocks(); ++b) {
    const BlockSpec& spec = st.block(b);
    if (spec.kind == BlockKind::kMatrix) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(Sym(v[b]), Eigen::EigenvaluesOnly);
      viol = std::max(viol, -es.eigenvalues()(0));
    } else if (spec.kind == BlockKind::kDiag) {
      viol = std::max(viol, -v[b].minCoeff());
    }
  }
  return viol;
}

double FreeMagnitude(const BlockStructure& st, const BlockVector& v) {
  double m = 0.0;
  for (int b = 0; b < st.num_blocks(); ++b) {
    if (st.block(b).kind == BlockKind::kFree) m = std::max(m, std::abs(v[b](0, 0)));
  }
  return m;
}

SolveResult Assemble(const StandardSdp& problem, const EngineOutput& eo) {
  const FlatProblem& f = eo.flat;
  SolveResult r;
  r.status = eo.status;
  r.iterations = eo.iterations;
  r.warnings = eo.presolve.warnings;
  r.trace = eo.trace;
  r.primal = ExpandPrimal(problem, f, eo.it);
  r.dual = f.sign * ExpandDual(problem, f, eo.it.y);
  r.dual_slack = ExpandSlack(problem, f, eo.it);
  const double pobj = PrimalObjective(f, eo.it);
  const double dobj = f.p > 0 ? f.beta.dot(eo.it.y) : 0.0;
  r.primal_objective = f.sign * pobj;
  r.dual_objective = f.sign * dobj;
  r.gap = pobj - dobj;
  const Residuals res = ComputeResiduals(f, eo.it);
  r.primal_infeasibility = res.r_p.norm() / (1.0 + f.norm_beta);
  r.dual_infeasibility = DualResidualNorm(f, res) / (1.0 + f.norm_c);
  return r;
}

}  // namespace

SolveResult Solve(const StandardSdp& problem, const SolverOptions& opts) {
  return Assemble(problem, RunEngine(problem, opts));
}

SolveResult SolveWithCertificate(const StandardSdp& problem,
                                 const SolverOptions& opts) {
  const EngineOutput eo = RunEngine(problem, opts);
  SolveResult r = Assemble(problem, eo);
  const FlatProblem& f = eo.flat;
  if (r.status == SolveStatus::kPrimalInfeasibleDetected) {
    Vector ray;
    if (eo.presolve.inconsistency_ray) {
      ray = *eo.presolve.inconsistency_ray;
    } else {
      ray = ExpandDual(problem, f, eo.it.y / f.beta.dot(eo.it.y));
    }
    r.dual = ray;
    r.dual_slack = NegatedAdjoint(problem, ray);
  } else if (r.status == SolveStatus::kDualInfeasibleDetected) {
    const double pobj = PrimalObjective(f, eo.it);
    BlockVector x = ExpandPrimal(problem, f, eo.it);
    for (auto& blk : x) blk /= -pobj;
    r.primal = std::move(x);
  }
  return r;
}

double CertificateResidual(const StandardSdp& problem,
                           const SolveResult& result) {
  const BlockStructure& st = problem.structure;
  if (result.status == SolveStatus::kPrimalInfeasibleDetected) {
    Vector beta(static_cast<Eigen::Index>(problem.constraints.size()));
    for (size_t j = 0; j < problem.constraints.size(); ++j) {
      beta(static_cast<Eigen::Index>(j)) = problem.constraints[j].rhs;
    }
    const BlockVector s = NegatedAdjoint(problem, result.dual);
    return std::max({std::abs(beta.dot(result.dual) - 1.0),
                     ConeViolation(st, s), FreeMagnitude(st, s)});
  }
  if (result.status == SolveStatus::kDualInfeasibleDetected) {
    double ax = 0.0;
    for (const auto& con : problem.constraints) {
      ax = std::max(ax, std::abs(BlockInner(con.coeffs, result.primal)));
    }
    const double target = problem.sense == Sense::kMinimize ? -1.0 : 1.0;
    return std::max({ax, ConeViolation(st, result.primal),
                     std::abs(BlockInner(problem.objective, result.primal) - target)});
  }
  return 0.0;
}

}  // namespace sdpgame
