// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear-algebra kernels: orthonormalization, SVD,
// eigensolvers, pencil solve, shifted solves, subspace angles, sep and
// condition numbers. Everything works on column-major complex doubles.

#pragma once

#include <utility>
#include <vector>

#include "hrr/types.hpp"

namespace hrr {

// Orthonormal basis of a subspace. `defect` is ||Q^H Q - I|| measured at
// construction; construction fails if it exceeds 1e-12.
struct OrthonormalBasis {
  Matrix Q;
  double defect = 0.0;

  Index rows() const { return Q.rows(); }
  Index cols() const { return Q.cols(); }
};

struct Svd {
  Matrix U;           // left singular vectors, one column per value
  RealVector sigma;   // descending, nonnegative
  Matrix V;           // right singular vectors
};

struct EigenDecomposition {
  Vector values;
  Matrix vectors;              // unit 2-norm columns
  RealVector backward_error;   // ||M v - lambda v|| per pair
};

// One generalized eigenvalue of a pencil (C, B), kept in homogeneous
// (alpha, beta) form. theta = alpha/beta is only meaningful when finite.
struct PencilEigenvalue {
  bool infinite = false;
  Complex theta{0.0, 0.0};
  Complex alpha{0.0, 0.0};
  Complex beta{0.0, 0.0};
};

// Modified Gram-Schmidt with one reorthogonalization pass.
// Throws RankDeficient when the columns are not independent relative to tol.
OrthonormalBasis orthonormalize(const Matrix& M, double tol = 1e-12);

Svd svd(const Matrix& M);

// Spectral norm sigma_max(M); 0 for empty matrices.
double norm2(const Matrix& M);

EigenDecomposition eig_dense(const Matrix& M);

// QZ solve of C q = theta B q via LAPACK. C and B must be square and of
// equal size. Throws SingularPencil when (alpha, beta) = (0, 0) shows up.
std::vector<std::pair<PencilEigenvalue, Vector>> eig_pencil(
    const Matrix& C, const Matrix& B, double infinite_threshold = 1e-12);

// X with (A - tau I) X = RHS. Throws SingularShift when tau is an
// eigenvalue of A to working precision.
Matrix solve_shifted(const Matrix& A, Complex tau, const Matrix& rhs);

// sin of the angle between a unit vector and span(V), computed as
// ||x - V (V^H x)|| and clamped to [0, 1].
double sin_angle_vec_subspace(const Vector& x, const OrthonormalBasis& V);

// sin of the acute angle between a unit vector x and a nonzero y,
// min over complex alpha of ||x - alpha y||.
double sin_angle_vec_vec(const Vector& x, const Vector& y);

// cos of the acute angle between complex vectors: |x^H y| / (||x|| ||y||).
// Zero when either vector vanishes.
double cos_angle_vec_vec(const Vector& x, const Vector& y);

// sep(lambda, G) = sigma_min(G - lambda I); +infinity for an empty G.
double sep(Complex lambda, const Matrix& G);

double cond_shifted(const Matrix& A, Complex tau);

// Unitary completion: columns orthonormal, orthogonal to the unit vector x,
// spanning its complement. Result is n x (n-1).
Matrix unitary_complement(const Vector& x);

}  // namespace hrr
