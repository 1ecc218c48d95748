// SPDX-License-Identifier: Apache-2.0

#include "hrr/extraction.hpp"

#include <algorithm>
#include <cmath>

namespace hrr {

namespace {

Matrix shifted(const Matrix& A, Complex tau) {
  return A - tau * Matrix::Identity(A.rows(), A.cols());
}

HarmonicRitzPair make_pair(const Matrix& A, Complex tau,
                           const OrthonormalBasis& V,
                           const PencilEigenvalue& theta, const Vector& q) {
  HarmonicRitzPair pair;
  pair.theta = theta;
  pair.infinite = theta.infinite;
  pair.q = q / q.norm();
  pair.x_tilde = phase_normalize(V.Q * pair.q);
  pair.x_tilde.normalize();
  if (!pair.infinite) {
    pair.lambda_tilde = tau + theta.theta;
    Vector r = A * pair.x_tilde - pair.lambda_tilde * pair.x_tilde;
    pair.residual = r.norm();
    pair.petrov_defect = ((shifted(A, tau) * V.Q).adjoint() * r).norm();
  }
  return pair;
}

}  // namespace

Vector phase_normalize(const Vector& v) {
  Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex pivot = v(imax);
  if (std::abs(pivot) == 0.0) return v;
  return v * (std::conj(pivot) / std::abs(pivot));
}

std::pair<Matrix, Matrix> form_harmonic_pencil(const Matrix& A, Complex tau,
                                               const OrthonormalBasis& V) {
  Matrix S = shifted(A, tau);
  Matrix SV = S * V.Q;
  Matrix B = SV.adjoint() * V.Q;
  Matrix C = SV.adjoint() * SV;
  C = 0.5 * (C + C.adjoint().eval());  // mathematically Hermitian
  return {B, C};
}

std::vector<HarmonicRitzPair> harmonic_pairs_pencil(
    const Matrix& A, Complex tau, const OrthonormalBasis& V,
    double infinite_threshold) {
  auto [B, C] = form_harmonic_pencil(A, tau, V);
  auto raw = eig_pencil(C, B, infinite_threshold);
  std::vector<HarmonicRitzPair> pairs;
  pairs.reserve(raw.size());
  for (const auto& [theta, q] : raw) pairs.push_back(make_pair(A, tau, V, theta, q));
  return pairs;
}

std::vector<HarmonicRitzPair> harmonic_pairs_resolvent(
    const Matrix& A, Complex tau, const OrthonormalBasis& V,
    double infinite_threshold) {
  Matrix S = shifted(A, tau);
  Matrix SV = S * V.Q;
  OrthonormalBasis W = orthonormalize(SV);
  Matrix D = W.Q.adjoint() * solve_shifted(A, tau, W.Q);
  EigenDecomposition ed = eig_dense(D);

  const double inv_norm_bound = 1.0 / svd(S).sigma(S.rows() - 1);
  std::vector<HarmonicRitzPair> pairs;
  pairs.reserve(ed.values.size());
  for (Index i = 0; i < ed.values.size(); ++i) {
    const Complex mu = ed.values(i);
    PencilEigenvalue theta;
    theta.alpha = 1.0;
    theta.beta = mu;
    theta.infinite = std::abs(mu) <= infinite_threshold * inv_norm_bound;
    if (!theta.infinite) theta.theta = 1.0 / mu;
    // map the Ritz vector of (A - tau I)^{-1} back to K
    Vector c = SV.colPivHouseholderQr().solve(W.Q * ed.vectors.col(i));
    pairs.push_back(make_pair(A, tau, V, theta, c));
  }
  return pairs;
}

std::vector<RitzPair> rayleigh_ritz(const Matrix& A,
                                    const OrthonormalBasis& V) {
  Matrix H = V.Q.adjoint() * (A * V.Q);
  EigenDecomposition ed = eig_dense(H);
  std::vector<RitzPair> pairs;
  pairs.reserve(ed.values.size());
  for (Index i = 0; i < ed.values.size(); ++i) {
    RitzPair p;
    p.lambda_hat = ed.values(i);
    p.p = ed.vectors.col(i);
    p.x_hat = phase_normalize(V.Q * p.p);
    p.x_hat.normalize();
    p.galerkin_defect =
        (V.Q.adjoint() * (A * p.x_hat - p.lambda_hat * p.x_hat)).norm();
    pairs.push_back(std::move(p));
  }
  return pairs;
}

RefinedVector refined_harmonic_vector(const Matrix& A, Complex lambda_tilde,
                                      const OrthonormalBasis& V) {
  Matrix M = shifted(A, lambda_tilde) * V.Q;
  Svd s = svd(M);
  const Index k = V.cols();
  RefinedVector out;
  out.lambda_ref = lambda_tilde;
  out.u = phase_normalize(V.Q * s.V.col(k - 1));
  out.u.normalize();
  out.residual = s.sigma(k - 1);
  return out;
}

const HarmonicRitzPair& select_nearest(
    const std::vector<HarmonicRitzPair>& pairs, Complex tau) {
  const HarmonicRitzPair* best = nullptr;
  for (const auto& p : pairs) {
    if (p.infinite) continue;
    if (!best) {
      best = &p;
      continue;
    }
    const double da = std::abs(p.lambda_tilde - tau);
    const double db = std::abs(best->lambda_tilde - tau);
    if (da < db) {
      best = &p;
    } else if (da == db) {
      const double ra = p.residual.value_or(0.0);
      const double rb = best->residual.value_or(0.0);
      if (ra < rb ||
          (ra == rb &&
           std::make_pair(p.lambda_tilde.real(), p.lambda_tilde.imag()) <
               std::make_pair(best->lambda_tilde.real(),
                              best->lambda_tilde.imag()))) {
        best = &p;
      }
    }
  }
  if (!best) throw NoFinitePair("select_nearest: all pairs are infinite");
  return *best;
}

}  // namespace hrr
