// SPDX-License-Identifier: Apache-2.0
//
// Rayleigh-Ritz and harmonic Rayleigh-Ritz extraction. The harmonic
// extraction is available through two routes: the generalized pencil
// (C, B) of the projected shifted problem, and the resolvent projection
// D = W^H (A - tau I)^{-1} W on the image subspace. Both return the same
// finite values up to rounding and are cross-checked in the tests.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hrr/numkernel.hpp"
#include "hrr/types.hpp"

namespace hrr {

struct HarmonicRitzPair {
  PencilEigenvalue theta;        // lambda_tilde - tau, possibly infinite
  bool infinite = false;
  Complex lambda_tilde{0.0, 0.0};  // meaningful only when finite
  Vector q;                      // unit coefficient vector
  Vector x_tilde;                // V q, unit norm, phase-normalized
  std::optional<double> residual;  // ||A x~ - lambda~ x~||, finite pairs only
  double petrov_defect = 0.0;    // ||[(A - tau I)V]^H (A x~ - lambda~ x~)||
};

struct RitzPair {
  Complex lambda_hat{0.0, 0.0};
  Vector p;        // unit coefficient vector
  Vector x_hat;    // V p, unit norm, phase-normalized
  double galerkin_defect = 0.0;
};

struct RefinedVector {
  Complex lambda_ref{0.0, 0.0};
  Vector u;          // unit vector in span(V) minimizing ||(A - lambda I) u||
  double residual = 0.0;
};

// Rotate v so that its entry of largest modulus is real positive.
Vector phase_normalize(const Vector& v);

// B = V^H (A - tau I)^H V, C = V^H (A - tau I)^H (A - tau I) V with C
// symmetrized after formation.
std::pair<Matrix, Matrix> form_harmonic_pencil(const Matrix& A, Complex tau,
                                               const OrthonormalBasis& V);

std::vector<HarmonicRitzPair> harmonic_pairs_pencil(
    const Matrix& A, Complex tau, const OrthonormalBasis& V,
    double infinite_threshold = 1e-12);

std::vector<HarmonicRitzPair> harmonic_pairs_resolvent(
    const Matrix& A, Complex tau, const OrthonormalBasis& V,
    double infinite_threshold = 1e-12);

std::vector<RitzPair> rayleigh_ritz(const Matrix& A,
                                    const OrthonormalBasis& V);

RefinedVector refined_harmonic_vector(const Matrix& A, Complex lambda_tilde,
                                      const OrthonormalBasis& V);

// Finite pair minimizing |lambda~ - tau|; ties broken by smaller residual,
// then lexicographically on (Re, Im). Throws NoFinitePair.
const HarmonicRitzPair& select_nearest(
    const std::vector<HarmonicRitzPair>& pairs, Complex tau);

}  // namespace hrr
