// SPDX-License-Identifier: Apache-2.0

#include "hrr/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace hrr {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

OrthonormalBasis orthonormalize(const Matrix& M, double tol) {
  const Index n = M.rows();
  const Index k = M.cols();
  if (k == 0 || n == 0) throw RankDeficient("orthonormalize: empty input");
  if (k > n) throw RankDeficient("orthonormalize: more columns than rows");

  {
    Svd s = svd(M);
    if (s.sigma(k - 1) <= tol * s.sigma(0))
      throw RankDeficient("orthonormalize: rank-deficient input");
  }

  Matrix Q(n, k);
  for (Index j = 0; j < k; ++j) {
    Vector v = M.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (Index i = 0; i < j; ++i) v -= (Q.col(i).adjoint() * v)(0) * Q.col(i);
    Q.col(j) = v / v.norm();
  }

  OrthonormalBasis basis;
  basis.Q = std::move(Q);
  basis.defect = norm2(basis.Q.adjoint() * basis.Q - Matrix::Identity(k, k));
  if (basis.defect > 1e-12) {
    // one more sweep, then give up
    for (Index j = 0; j < k; ++j) {
      Vector v = basis.Q.col(j);
      for (Index i = 0; i < j; ++i)
        v -= (basis.Q.col(i).adjoint() * v)(0) * basis.Q.col(i);
      basis.Q.col(j) = v / v.norm();
    }
    basis.defect = norm2(basis.Q.adjoint() * basis.Q - Matrix::Identity(k, k));
    if (basis.defect > 1e-12)
      throw RankDeficient("orthonormalize: orthonormality defect too large");
  }
  return basis;
}

Svd svd(const Matrix& M) {
  Eigen::JacobiSVD<Matrix> solver(M,
                                  Eigen::ComputeThinU | Eigen::ComputeThinV);
  Svd out;
  out.U = solver.matrixU();
  out.sigma = solver.singularValues();
  out.V = solver.matrixV();
  return out;
}

double norm2(const Matrix& M) {
  if (M.rows() == 0 || M.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> solver(M);
  return solver.singularValues()(0);
}

EigenDecomposition eig_dense(const Matrix& M) {
  if (M.rows() != M.cols()) throw Error("eig_dense: matrix not square");
  Eigen::ComplexEigenSolver<Matrix> solver(M, true);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("eig_dense: QR iteration failed");
  EigenDecomposition d;
  d.values = solver.eigenvalues();
  d.vectors = solver.eigenvectors();
  const Index n = M.rows();
  d.backward_error.resize(n);
  for (Index i = 0; i < n; ++i) {
    d.vectors.col(i).normalize();
    d.backward_error(i) =
        (M * d.vectors.col(i) - d.values(i) * d.vectors.col(i)).norm();
  }
  return d;
}

std::vector<std::pair<PencilEigenvalue, Vector>> eig_pencil(
    const Matrix& C, const Matrix& B, double infinite_threshold) {
  if (C.rows() != C.cols() || B.rows() != B.cols() || C.rows() != B.rows())
    throw Error("eig_pencil: C and B must be square of equal size");
  const lapack_int m = static_cast<lapack_int>(C.rows());
  Matrix Cw = C, Bw = B;
  Vector alpha(m), beta(m);
  Matrix vr(m, m);
  lapack_int info = LAPACKE_zggev(
      LAPACK_COL_MAJOR, 'N', 'V', m, Cw.data(), m, Bw.data(), m, alpha.data(),
      beta.data(), nullptr, 1, vr.data(), m);
  if (info != 0)
    throw ConvergenceFailure("eig_pencil: zggev failed, info=" +
                             std::to_string(info));

  std::vector<std::pair<PencilEigenvalue, Vector>> out;
  out.reserve(m);
  for (lapack_int i = 0; i < m; ++i) {
    PencilEigenvalue ev;
    ev.alpha = alpha(i);
    ev.beta = beta(i);
    const double scale = std::max(std::abs(ev.alpha), std::abs(ev.beta));
    if (scale == 0.0)
      throw SingularPencil("eig_pencil: singular pencil, (alpha,beta)=(0,0)");
    ev.infinite = std::abs(ev.beta) <= infinite_threshold * scale;
    if (!ev.infinite) ev.theta = ev.alpha / ev.beta;
    Vector q = vr.col(i);
    q.normalize();
    out.emplace_back(ev, std::move(q));
  }
  return out;
}

Matrix solve_shifted(const Matrix& A, Complex tau, const Matrix& rhs) {
  if (A.rows() != A.cols()) throw Error("solve_shifted: matrix not square");
  const Index n = A.rows();
  Matrix shifted = A - tau * Matrix::Identity(n, n);
  Svd s = svd(shifted);
  if (s.sigma(n - 1) <= 1e-12 * s.sigma(0))
    throw SingularShift("solve_shifted: tau is an eigenvalue of A");
  return shifted.partialPivLu().solve(rhs);
}

double sin_angle_vec_subspace(const Vector& x, const OrthonormalBasis& V) {
  Vector r = x - V.Q * (V.Q.adjoint() * x);
  return clamp01(r.norm());
}

double sin_angle_vec_vec(const Vector& x, const Vector& y) {
  const double ny2 = y.squaredNorm();
  if (ny2 == 0.0) throw ZeroVector("sin_angle_vec_vec: y is zero");
  // residual of the minimizing alpha = y^H x / ||y||^2; avoids the
  // cancellation in sqrt(1 - cos^2) at small angles
  Vector r = x - y * ((y.adjoint() * x)(0) / ny2);
  return clamp01(r.norm());
}

double cos_angle_vec_vec(const Vector& x, const Vector& y) {
  const double nx = x.norm(), ny = y.norm();
  if (nx == 0.0 || ny == 0.0) return 0.0;
  return clamp01(std::abs((x.adjoint() * y)(0)) / (nx * ny));
}

double sep(Complex lambda, const Matrix& G) {
  if (G.rows() == 0) return std::numeric_limits<double>::infinity();
  const Index k = G.rows();
  Svd s = svd(G - lambda * Matrix::Identity(k, k));
  return s.sigma(k - 1);
}

double cond_shifted(const Matrix& A, Complex tau) {
  const Index n = A.rows();
  Svd s = svd(A - tau * Matrix::Identity(n, n));
  if (s.sigma(n - 1) <= 1e-300 * s.sigma(0))
    throw SingularShift("cond_shifted: tau is an eigenvalue of A");
  return s.sigma(0) / s.sigma(n - 1);
}

Matrix unitary_complement(const Vector& x) {
  const Index n = x.size();
  if (x.norm() == 0.0) throw ZeroVector("unitary_complement: x is zero");
  // full Q of the Householder QR of [x]; column 0 is x up to phase, the
  // rest spans its orthogonal complement
  Matrix xm = x / x.norm();
  Eigen::HouseholderQR<Matrix> qr(xm);
  Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
  return Q.rightCols(n - 1);
}

}  // namespace hrr
