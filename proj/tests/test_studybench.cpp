// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "hrr/studybench.hpp"

using namespace hrr;

TEST_CASE("rng streams are deterministic and well distributed") {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());
  Rng c(7);
  double mean = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = c.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    mean += u;
  }
  CHECK(std::abs(mean / 10000.0 - 0.5) < 0.02);
  Matrix U = c.unitary(6);
  CHECK(norm2(U.adjoint() * U - Matrix::Identity(6, 6)) <= 1e-12);
}

TEST_CASE("example1 instance matches the published setup") {
  Instance inst = example1_instance(1e-6);
  CHECK(inst.A(0, 0) == Complex(2.0));
  CHECK(inst.A(2, 1) == Complex(6.0));
  CHECK(inst.tau == Complex(1.0));
  CHECK(inst.lambda == Complex(2.0));
  CHECK(std::abs(inst.x(0)) == doctest::Approx(1.0));
  CHECK(cond_shifted(inst.A, inst.tau) ==
        doctest::Approx(10.006189420283654).epsilon(1e-12));
  CHECK(sin_angle_vec_subspace(inst.x, inst.V) ==
        doctest::Approx(9.999999999995000e-7).epsilon(1e-9));

  Instance exact = example1_instance(std::nullopt);
  CHECK(sin_angle_vec_subspace(exact.x, exact.V) <= 1e-14);
}

TEST_CASE("example1 report carries the golden numbers") {
  BoundReport rep = example1(1e-6);
  CHECK(std::abs(rep.lambda_tilde - Complex(2.000001666687963)) <= 1e-12);
  CHECK(rep.b_inv_norm == doctest::Approx(2.795084971879544e5).epsilon(1e-9));
  CHECK(rep.conditions[0]);

  BoundReport exact = example1(std::nullopt);
  CHECK(exact.actual_sin_x_xtilde <= 1e-12);
  CHECK(std::abs(exact.lambda_tilde - Complex(2.0)) <= 1e-12);
}

TEST_CASE("tau_sweep visits the grid row-major and reproduces example1") {
  Instance inst = example1_instance(1e-6);
  GridSpec grid;
  grid.re0 = 0.5;
  grid.re1 = 1.5;
  grid.n_re = 3;  // 0.5, 1.0, 1.5
  grid.im0 = 0.0;
  grid.im1 = 0.0;
  grid.n_im = 1;
  auto records = tau_sweep(inst.A, inst.lambda, inst.x, inst.V, grid);
  REQUIRE(records.size() == 3);
  CHECK(records[0].tau == Complex(0.5, 0.0));
  CHECK(records[1].tau == Complex(1.0, 0.0));
  CHECK(records[2].tau == Complex(1.5, 0.0));
  REQUIRE(!records[1].skipped);
  BoundReport ref = example1(1e-6);
  CHECK(std::abs(records[1].report.lambda_tilde - ref.lambda_tilde) <= 1e-12);
  CHECK(records[1].report.actual_sin_x_K ==
        doctest::Approx(ref.actual_sin_x_K).epsilon(1e-12));
}

TEST_CASE("tau_sweep skips grid points at eigenvalues of A") {
  Instance inst = example1_instance(1e-6);
  GridSpec grid;
  grid.re0 = 2.0;
  grid.re1 = 2.0;
  grid.n_re = 1;
  auto records = tau_sweep(inst.A, inst.lambda, inst.x, inst.V, grid);
  REQUIRE(records.size() == 1);
  CHECK(records[0].skipped);
  CHECK(records[0].skip_reason.find("eigenvalue") != std::string::npos);
}

TEST_CASE("tau_sweep rejects empty grids") {
  Instance inst = example1_instance(1e-6);
  GridSpec grid;
  grid.n_re = 0;
  CHECK_THROWS_AS(tau_sweep(inst.A, inst.lambda, inst.x, inst.V, grid),
                  EmptyGrid);
}

TEST_CASE("sweep detects a near-singular B pocket") {
  // sweep tau across a line; at every kept point the report carries a
  // consistent b_sigma_ratio and the conditions reflect the thresholds
  Instance inst = example1_instance(1e-2);
  GridSpec grid;
  grid.re0 = -1.0;
  grid.re1 = 3.0;
  grid.n_re = 9;
  grid.im0 = 0.5;
  grid.im1 = 0.5;
  grid.n_im = 1;
  auto records = tau_sweep(inst.A, inst.lambda, inst.x, inst.V, grid);
  int kept = 0;
  for (const auto& r : records) {
    if (r.skipped) continue;
    ++kept;
    CHECK(r.report.b_sigma_ratio >= 0.0);
    CHECK(r.report.b_sigma_ratio <= 1.0);
    const bool cond2 = r.report.b_sigma_ratio >=
                       r.report.condition_thresholds.b_conditioning;
    CHECK(r.report.conditions[1] == cond2);
  }
  CHECK(kept == 9);
}

TEST_CASE("random_instance realizes the requested geometry") {
  Rng rng(11);
  for (int t = 0; t < 25; ++t) {
    const double target = (t % 2 == 0) ? 1e-3 : 1e-5;
    Instance inst = random_instance(7, 3, target, 0.7, rng);
    // (lambda, x) is an exact eigenpair
    CHECK((inst.A * inst.x - inst.lambda * inst.x).norm() <=
          1e-10 * norm2(inst.A));
    CHECK(std::abs(inst.x.norm() - 1.0) <= 1e-12);
    CHECK(inst.V.cols() == 3);
    CHECK(inst.V.defect <= 1e-12);
    // the angle to the subspace hits the target
    CHECK(sin_angle_vec_subspace(inst.x, inst.V) ==
          doctest::Approx(target).epsilon(1e-8));
    // tau is off the spectrum
    CHECK(std::abs(inst.tau - inst.lambda) > 1e-3);
  }
}

TEST_CASE("random_instance decay ratio steers non-normality") {
  Rng rng1(12), rng2(12);
  Instance tame = random_instance(6, 2, 1e-4, 1.0, rng1);
  Instance wild = random_instance(6, 2, 1e-4, 0.5, rng2);
  const Matrix& T = tame.A;
  const Matrix& W = wild.A;
  const double dt = norm2(T.adjoint() * T - T * T.adjoint());
  const double dw = norm2(W.adjoint() * W - W * W.adjoint());
  CHECK(dw > dt);
}

TEST_CASE("random_campaign with zero instances is empty") {
  CampaignSummary s = random_campaign(0, 8, 4, 1);
  CHECK(s.instances == 0);
  CHECK(s.reports == 0);
  CHECK(s.violations.empty());
}

TEST_CASE("random_campaign is deterministic in the seed") {
  CampaignSummary a = random_campaign(25, 8, 4, 99);
  CampaignSummary b = random_campaign(25, 8, 4, 99);
  CHECK(a.reports == b.reports);
  CHECK(a.skipped == b.skipped);
  CHECK(a.min_tightness == b.min_tightness);
  CHECK(a.max_tightness == b.max_tightness);
  CHECK(a.violations.size() == b.violations.size());

  CampaignSummary c = random_campaign(25, 8, 4, 100);
  CHECK((c.min_tightness != a.min_tightness ||
         c.max_tightness != a.max_tightness));
}

TEST_CASE("random_campaign finds no inequality violations") {
  CampaignSummary s = random_campaign(200, 10, 4, 2024);
  CHECK(s.reports == 200);
  CHECK(s.violations.empty());
  CHECK(s.min_tightness >= 1.0 - 1e-10);
}

TEST_CASE("oracle_angle_min agrees with the projection formula") {
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    Matrix M(6, 2);
    for (Index j = 0; j < 2; ++j)
      for (Index i = 0; i < 6; ++i) M(i, j) = rng.complex_normal();
    Vector x(6);
    for (Index i = 0; i < 6; ++i) x(i) = rng.complex_normal();
    x.normalize();
    const double fast = sin_angle_vec_subspace(x, orthonormalize(M));
    const double slow = oracle_angle_min(x, M);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-9));
  }
  // containment and orthogonality extremes
  Matrix M = Matrix::Identity(4, 2);
  Vector e0 = Vector::Zero(4);
  e0(0) = 1.0;
  Vector e3 = Vector::Zero(4);
  e3(3) = 1.0;
  CHECK(oracle_angle_min(e0, M) <= 1e-12);
  CHECK(oracle_angle_min(e3, M) == doctest::Approx(1.0).epsilon(1e-12));
}
