// SPDX-License-Identifier: Apache-2.0
//
// A-priori convergence bounds for (harmonic) Rayleigh-Ritz extraction and
// the machinery they share: the unitary splitting [x, Xhat], the optimal
// subspace vector yhat, the coupling vector w and the eta factors. Every
// bound is returned as a named entry with an applicability flag so a report
// can carry inapplicable bounds (wrong shift frame, non-Hermitian input,
// vanishing separation) without aborting.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hrr/extraction.hpp"
#include "hrr/numkernel.hpp"
#include "hrr/types.hpp"

namespace hrr {

struct BoundValue {
  std::string name;
  double value = 0.0;  // +infinity permitted
  bool applicable = true;
  std::string reason;  // set when applicable is false or value degenerate
  std::map<std::string, double> components;
};

// Everything the bounds need for one (A, tau, lambda, x, K) instance.
struct BoundContext {
  Matrix A;
  Complex tau;
  Complex lambda;
  Vector x;             // unit eigenvector for lambda
  OrthonormalBasis V;   // basis of K
  Matrix Xhat;          // n x (n-1), [x, Xhat] unitary
  Matrix R;             // Xhat^H (A - tau I) Xhat
  Vector w;             // w^H = x^H A Xhat
  Vector yhat;          // unit vector in K attaining the angle to x
  Vector zhat;          // Xhat^H yhat
  Complex alpha;        // x^H yhat
  double eps = 0.0;     // sin angle(x, K)
  double sigma_min = 0.0, sigma_max = 0.0;  // of A - tau I
  double kappa = 0.0;
  double inv_norm = 0.0;  // ||(A - tau I)^{-1}||
  double a_norm = 0.0;    // ||A||
  double w_norm = 0.0;
  double cos_w_zhat = 0.0;
  double eta1 = 0.0, eta2 = 0.0, etahat2 = 0.0;
  bool normal = false;
};

BoundContext build_context(const Matrix& A, Complex tau, Complex lambda,
                           const Vector& x, const OrthonormalBasis& V,
                           double normality_threshold = 1e-12);

// Stewart's bound on the Ritz vector selected for lambda.
BoundValue stewart_bound(const Matrix& A, const OrthonormalBasis& V,
                         const RitzPair& pair, Complex lambda, const Vector& x);

// Chen-Jia bound; requires the tau = 0 frame and a nonsingular B.
BoundValue chen_jia_bound(const Matrix& A, Complex tau,
                          const OrthonormalBasis& V,
                          const HarmonicRitzPair& pair, Complex lambda,
                          const Vector& x, double b_singular_threshold = 1e-14);

// Jia's harmonic-vector bound; value follows the published evaluation,
// the literal formula is kept in components["literal"].
BoundValue jia_vector_bound(const Matrix& A, Complex tau,
                            const OrthonormalBasis& V,
                            const HarmonicRitzPair& pair, Complex lambda,
                            const Vector& x,
                            double b_singular_threshold = 1e-14);

struct JiaValueBounds {
  BoundValue e_norm;       // perturbation-size bound on E
  BoundValue value_error;  // Elsner-type bound on |lambda - mu|
};
JiaValueBounds jia_value_bounds(const Matrix& A, Complex tau,
                                const OrthonormalBasis& V, Complex lambda,
                                const Vector& x,
                                double b_singular_threshold = 1e-14);

// Two-sided multiplicative bound on sin angle(x, (A - tau I) y).
std::pair<double, double> sigma_sandwich(const Matrix& A, Complex tau,
                                         Complex lambda, const Vector& x,
                                         const Vector& y);

// Two-sided eta-corrected bound on sin angle(x, (A - tau I) y).
std::pair<double, double> eta_sandwich(const BoundContext& ctx,
                                       const Vector& y);

// Hermitian tau = 0 specialization of the eta sandwich (eigenvalue form).
std::pair<double, double> hermitian_sandwich(const Matrix& A, Complex lambda,
                                             const Vector& x, const Vector& y);

// Vecharynski's lemma: |lmin/lambda| s <= sin angle(x, A y) <= |lmax/lambda| s.
std::pair<double, double> vecharynski_lemma(const Matrix& A, Complex lambda,
                                            const Vector& x, const Vector& y);

BoundValue new_harmonic_vector_bound(const BoundContext& ctx,
                                     const HarmonicRitzPair& pair);

BoundValue vecharynski_bound(const BoundContext& ctx,
                             const std::vector<HarmonicRitzPair>& all_pairs,
                             const HarmonicRitzPair& selected);

BoundValue subspace_image_angle_bound(const BoundContext& ctx);

BoundValue f_norm_bound(const BoundContext& ctx);

BoundValue harmonic_value_error_bound(const BoundContext& ctx, Index m,
                                      const BoundValue& f_bound);

double uniform_separation_ratio(const Matrix& A, Complex tau, double eps);

// Thresholds for the four sufficient-condition flags in a report.
struct ConditionThresholds {
  double good_subspace = 1e-3;     // (i)   eps below this
  double b_conditioning = 1e-6;    // (ii)  sigma_min(B)/sigma_max(B) above
  double sep_min = 1e-8;           // (iii) sep(1/(lambda-tau), Ghat) above
  double separation_ratio = 10.0;  // (iv)  uniform separation ratio above
};

struct BoundReport {
  Index n = 0, m = 0;
  Complex tau{0.0, 0.0};
  Complex lambda{0.0, 0.0};
  Thresholds thresholds;
  ConditionThresholds condition_thresholds;

  // measured quantities
  double actual_sin_x_K = 0.0;
  double actual_sin_x_xtilde = 0.0;
  double actual_value_error = 0.0;         // |lambda - lambda~| for selection
  double actual_sin_x_imageK = 0.0;        // angle to (A - tau I) K
  double actual_reciprocal_error = 0.0;    // nearest eigenvalue of D
  bool selected_finite = false;
  Complex lambda_tilde{0.0, 0.0};          // selected
  Complex lambda_tilde_best{0.0, 0.0};     // best match to lambda
  int infinite_pair_count = 0;
  double b_sigma_ratio = 0.0;              // sigma_min(B)/sigma_max(B)
  double b_inv_norm = 0.0;                 // +inf when B singular
  double uniform_separation = 0.0;         // ratio, +inf when eps = 0
  double refined_residual = 0.0;
  double harmonic_residual = 0.0;

  std::vector<BoundValue> bounds;          // fixed name order
  std::array<bool, 4> conditions{};        // (i)..(iv)
};

// Runs both extraction routes, selects the pair nearest tau and evaluates
// every applicable bound. Per-bound failures become applicability flags.
BoundReport full_report(const Matrix& A, Complex tau, Complex lambda,
                        const Vector& x, const OrthonormalBasis& V,
                        const Thresholds& thresholds = {},
                        const ConditionThresholds& cond = {});

}  // namespace hrr
