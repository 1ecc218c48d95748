// SPDX-License-Identifier: Apache-2.0
//
// Reproduction of the worked 3x3 example, tau-grid sweeps, random-instance
// property campaigns, and the brute-force oracles the tests cross-check
// against. All randomness flows through Rng so results are reproducible
// bit-for-bit from a seed.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hrr/bounds.hpp"
#include "hrr/extraction.hpp"
#include "hrr/numkernel.hpp"
#include "hrr/types.hpp"

namespace hrr {

// Deterministic random source. Uniform doubles take the top 53 bits of the
// raw engine output so the stream is identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  double uniform();                 // [0, 1)
  double normal();                  // standard normal, Box-Muller
  Complex complex_normal();         // independent N(0,1) parts
  std::uint64_t bits();             // raw engine output
  Matrix unitary(Index n);          // Haar-ish via MGS of a Gaussian matrix

 private:
  std::uint64_t splitmix();
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// One fully specified (A, tau, lambda, x, K) problem.
struct Instance {
  Matrix A;
  Complex tau{0.0, 0.0};
  Complex lambda{0.0, 0.0};
  Vector x;
  OrthonormalBasis V;
  double target_angle = 0.0;  // requested sin angle(x, K); 0 = x in K
};

// The 3x3 matrix [[2,2,3],[0,1,4],[0,6,6]] with tau = 1, target (2, e1),
// K = span{e1 + eps*e3, e2}. epsilon absent gives the exact subspace.
Instance example1_instance(std::optional<double> epsilon);

BoundReport example1(std::optional<double> epsilon,
                     const Thresholds& thresholds = {},
                     const ConditionThresholds& cond = {});

struct GridSpec {
  double re0 = 0.0, re1 = 0.0;
  int n_re = 1;
  double im0 = 0.0, im1 = 0.0;
  int n_im = 1;
};

struct SweepRecord {
  Complex tau{0.0, 0.0};
  bool skipped = false;
  std::string skip_reason;
  BoundReport report;  // valid only when !skipped
};

// Row-major traversal: Re outer, Im inner. Grid points within 1e-12 of an
// eigenvalue of A are skipped with a reason. Throws EmptyGrid.
std::vector<SweepRecord> tau_sweep(const Matrix& A, Complex lambda,
                                   const Vector& x, const OrthonormalBasis& V,
                                   const GridSpec& grid,
                                   const Thresholds& thresholds = {},
                                   const ConditionThresholds& cond = {});

// A = S diag(eigs) S^{-1} with S = Q1 diag(geometric decay) Q2; the decay
// ratio steers kappa(S) and hence the non-normality of A. Exact eigenpairs
// are known by construction. The subspace hits sin angle(x, K) =
// target_angle exactly: first column x cos + u sin, rest orthogonal to
// both x and the tilt direction.
Instance random_instance(Index n, Index m, double target_angle,
                         double decay_ratio, Rng& rng);

struct Violation {
  int instance = 0;
  std::string bound;
  double value = 0.0;
  double actual = 0.0;
};

struct CampaignSummary {
  int instances = 0;
  int reports = 0;           // instances that produced a report
  int skipped = 0;           // degenerate draws (exceptions), re-rolled
  std::vector<Violation> violations;
  double min_tightness = 0.0;  // min over bound/actual ratios (actual > 0)
  double max_tightness = 0.0;
  std::vector<std::string> notes;
};

// Runs full_report on `count` random instances with sin angle(x, K) cycling
// through {1e-2, 1e-4, 1e-6} and collects inequality violations. Upper
// bounds must dominate their actuals; *_lower entries must stay below.
CampaignSummary random_campaign(int count, Index n_max, Index m_max,
                                std::uint64_t seed,
                                const Thresholds& thresholds = {});

// Least-squares oracle for sin angle(x, span(M)) via normal equations with
// one step of iterative refinement. Cross-checks the numkernel routines.
double oracle_angle_min(const Vector& x, const Matrix& M);

}  // namespace hrr
