// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hrr/bounds.hpp"
#include "hrr/studybench.hpp"

using namespace hrr;

namespace {

Matrix random_matrix(Index rows, Index cols, Rng& rng) {
  Matrix M(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) M(i, j) = rng.complex_normal();
  return M;
}

Matrix shift_eye(const Matrix& A, Complex tau) {
  return A - tau * Matrix::Identity(A.rows(), A.cols());
}

const BoundValue& find_bound(const BoundReport& r, const std::string& name) {
  for (const auto& b : r.bounds)
    if (b.name == name) return b;
  REQUIRE(false);
  return r.bounds.front();
}

// random Hermitian matrix with eigenvalues bounded away from zero
Matrix random_hermitian_nonsingular(Index n, Rng& rng) {
  Matrix U = rng.unitary(n);
  Vector d(n);
  for (Index i = 0; i < n; ++i) {
    double v = 0.3 + 3.0 * rng.uniform();
    if (rng.uniform() < 0.5) v = -v;
    d(i) = v;
  }
  return U * d.asDiagonal() * U.adjoint();
}

}  // namespace

TEST_CASE("build_context with x contained in K") {
  Rng rng(41);
  Instance inst = random_instance(5, 2, 0.0, 0.8, rng);
  BoundContext ctx =
      build_context(inst.A, inst.tau, inst.lambda, inst.x, inst.V);
  CHECK(ctx.eps <= 1e-12);
  CHECK(sin_angle_vec_vec(ctx.x, ctx.yhat) <= 1e-10);
  CHECK(ctx.zhat.norm() <= 1e-10);
}

TEST_CASE("build_context reproduces the published subspace angle") {
  Instance inst = example1_instance(1e-6);
  BoundContext ctx =
      build_context(inst.A, inst.tau, inst.lambda, inst.x, inst.V);
  CHECK(ctx.eps == doctest::Approx(9.999999999995000e-7).epsilon(1e-9));
}

TEST_CASE("build_context invariants on random instances") {
  Rng rng(42);
  for (int t = 0; t < 50; ++t) {
    Instance inst = random_instance(6, 3, 1e-2, 0.7, rng);
    BoundContext ctx =
        build_context(inst.A, inst.tau, inst.lambda, inst.x, inst.V);
    // unitary splitting
    Matrix U(6, 6);
    U.col(0) = ctx.x;
    U.rightCols(5) = ctx.Xhat;
    CHECK(norm2(U.adjoint() * U - Matrix::Identity(6, 6)) <= 1e-12);
    // decomposition yhat = alpha x + Xhat zhat
    Vector recon = ctx.alpha * ctx.x + ctx.Xhat * ctx.zhat;
    CHECK((ctx.yhat - recon).norm() <= 1e-12);
    CHECK(std::abs(std::abs(ctx.alpha) - cos_angle_vec_vec(ctx.x, ctx.yhat)) <=
          1e-12);
    CHECK(std::abs(ctx.zhat.norm() - sin_angle_vec_vec(ctx.x, ctx.yhat)) <=
          1e-12);
    CHECK(ctx.w_norm <= norm2(inst.A) * (1.0 + 1e-12));
    // eta definitions
    if (!ctx.normal) {
      const double coupling = ctx.cos_w_zhat * ctx.w_norm;
      CHECK(ctx.eta1 == doctest::Approx(coupling / ctx.sigma_min));
      CHECK(ctx.eta2 == doctest::Approx(coupling / ctx.sigma_max));
    }
  }
}

TEST_CASE("build_context error gates") {
  Instance inst = example1_instance(1e-6);
  Vector bogus = Vector::Ones(3).cast<Complex>();
  bogus.normalize();
  CHECK_THROWS_AS(build_context(inst.A, inst.tau, inst.lambda, bogus, inst.V),
                  NotAnEigenpair);
  CHECK_THROWS_AS(build_context(inst.A, 2.0, inst.lambda, inst.x, inst.V),
                  ShiftEqualsEigenvalue);
}

TEST_CASE("stewart bound trivial cases") {
  Rng rng(43);
  Instance inst = random_instance(5, 1, 0.0, 0.8, rng);
  auto ritz = rayleigh_ritz(inst.A, inst.V);
  BoundValue b =
      stewart_bound(inst.A, inst.V, ritz[0], inst.lambda, inst.x);
  // m = 1: sep is +inf by convention and the bound collapses to eps = 0
  CHECK(std::isinf(b.components.at("sep")));
  CHECK(b.value <= 1e-12);
}

TEST_CASE("stewart bound dominates the measured Ritz angle") {
  Rng rng(44);
  for (int t = 0; t < 50; ++t) {
    Instance inst = random_instance(8, 3, 1e-3, 0.7, rng);
    auto ritz = rayleigh_ritz(inst.A, inst.V);
    const RitzPair* best = &ritz[0];
    for (const auto& p : ritz)
      if (std::abs(p.lambda_hat - inst.lambda) <
          std::abs(best->lambda_hat - inst.lambda))
        best = &p;
    BoundValue b = stewart_bound(inst.A, inst.V, *best, inst.lambda, inst.x);
    const double actual = sin_angle_vec_vec(inst.x, best->x_hat);
    CHECK(actual <= b.value * (1.0 + 1e-10) + 1e-12);
  }
}

TEST_CASE("chen_jia requires the tau = 0 frame") {
  Instance inst = example1_instance(1e-6);
  auto pairs = harmonic_pairs_pencil(inst.A, inst.tau, inst.V);
  const auto& sel = select_nearest(pairs, inst.tau);
  BoundValue b = chen_jia_bound(inst.A, inst.tau, inst.V, sel, inst.lambda,
                                inst.x);
  CHECK(!b.applicable);
  CHECK(b.reason == "requires tau=0");
}

TEST_CASE("chen_jia dominates on random tau = 0 instances") {
  Rng rng(45);
  int tested = 0;
  while (tested < 50) {
    Instance inst = random_instance(6, 3, 1e-3, 0.8, rng);
    // move to the tau = 0 frame
    Matrix A0 = shift_eye(inst.A, inst.tau);
    const Complex l0 = inst.lambda - inst.tau;
    auto pairs = harmonic_pairs_pencil(A0, 0.0, inst.V);
    std::vector<HarmonicRitzPair> finite;
    for (const auto& p : pairs)
      if (!p.infinite) finite.push_back(p);
    if (finite.empty()) continue;
    const HarmonicRitzPair* sel = &finite[0];
    for (const auto& p : finite)
      if (std::abs(p.lambda_tilde - l0) < std::abs(sel->lambda_tilde - l0))
        sel = &p;
    BoundValue b = chen_jia_bound(A0, 0.0, inst.V, *sel, l0, inst.x);
    if (!b.applicable) continue;
    ++tested;
    const double actual = sin_angle_vec_vec(inst.x, sel->x_tilde);
    CHECK(actual <= b.value * (1.0 + 1e-10) + 1e-12);
  }
}

TEST_CASE("jia vector bound reproduces the published number") {
  Instance inst = example1_instance(1e-6);
  Matrix A0 = shift_eye(inst.A, inst.tau);
  auto pairs = harmonic_pairs_pencil(A0, 0.0, inst.V);
  const auto& sel = select_nearest(pairs, 0.0);
  BoundValue b = jia_vector_bound(A0, 0.0, inst.V, sel, 1.0, inst.x);
  REQUIRE(b.applicable);
  CHECK(b.value == doctest::Approx(2.830019056701876).epsilon(1e-9));
  CHECK(b.components.at("b_inv_norm") ==
        doctest::Approx(2.795084971879544e5).epsilon(1e-9));
}

TEST_CASE("jia vector bound vanishes with the subspace angle") {
  Rng rng(46);
  Instance inst = random_instance(5, 2, 0.0, 0.8, rng);
  Matrix A0 = shift_eye(inst.A, inst.tau);
  auto pairs = harmonic_pairs_pencil(A0, 0.0, inst.V);
  const auto& sel = select_nearest(pairs, 0.0);
  BoundValue b = jia_vector_bound(A0, 0.0, inst.V, sel,
                                  inst.lambda - inst.tau, inst.x);
  if (b.applicable) CHECK(b.value <= 1e-8);
}

TEST_CASE("jia value bounds: trivial, inclusion, and inflation") {
  Instance inst = example1_instance(1e-6);
  Matrix A0 = shift_eye(inst.A, inst.tau);
  JiaValueBounds jb = jia_value_bounds(A0, 0.0, inst.V, 1.0, inst.x);
  REQUIRE(jb.e_norm.applicable);
  // the near-singular B inflates the E bound far past the actual error
  CHECK(jb.e_norm.value >= 1.0);

  Rng rng(47);
  int tested = 0;
  while (tested < 30) {
    Instance r = random_instance(5, 2, 1e-6, 0.9, rng);
    Matrix R0 = shift_eye(r.A, r.tau);
    const Complex l0 = r.lambda - r.tau;
    JiaValueBounds v = jia_value_bounds(R0, 0.0, r.V, l0, r.x);
    if (!v.value_error.applicable) continue;
    auto [B, C] = form_harmonic_pencil(R0, 0.0, r.V);
    Svd sb = svd(B);
    if (sb.sigma(1) <= 1e-10 * sb.sigma(0)) continue;
    ++tested;
    Matrix M = B.partialPivLu().solve(C);
    EigenDecomposition ed = eig_dense(M);
    double best = 1e300;
    for (Index i = 0; i < ed.values.size(); ++i)
      best = std::min(best, std::abs(ed.values(i) - l0));
    CHECK(best <= v.value_error.value * (1.0 + 1e-10) + 1e-12);
  }

  // eps = 0 collapses both bounds
  Instance z = random_instance(5, 2, 0.0, 0.8, rng);
  JiaValueBounds zb = jia_value_bounds(shift_eye(z.A, z.tau), 0.0, z.V,
                                       z.lambda - z.tau, z.x);
  if (zb.e_norm.applicable) {
    CHECK(zb.e_norm.value <= 1e-8);
  }
}

TEST_CASE("sigma sandwich holds on 1000 seeded instances") {
  Rng rng(48);
  for (int t = 0; t < 1000; ++t) {
    const Index n = 3 + Index(rng.bits() % 10);  // up to 12
    const Index m = 1 + Index(rng.bits() % std::uint64_t(n - 2));
    Instance inst = random_instance(n, m, 1e-2, 0.8, rng);
    BoundContext ctx =
        build_context(inst.A, inst.tau, inst.lambda, inst.x, inst.V);
    auto [lo, hi] =
        sigma_sandwich(inst.A, inst.tau, inst.lambda, inst.x, ctx.yhat);
    const double actual =
        sin_angle_vec_vec(ctx.x, shift_eye(inst.A, inst.tau) * ctx.yhat);
    CHECK(lo <= actual * (1.0 + 1e-10) + 1e-12);
    CHECK(actual <= hi * (1.0 + 1e-10) + 1e-12);
  }
}

TEST_CASE("sigma sandwich trivial eigen-direction") {
  Instance inst = example1_instance(1e-6);
  auto [lo, hi] = sigma_sandwich(inst.A, inst.tau, inst.lambda, inst.x,
                                 inst.x);
  CHECK(lo <= 1e-12);
  CHECK(hi <= 1e-12);
  CHECK_THROWS_AS(
      sigma_sandwich(inst.A, inst.lambda, inst.lambda, inst.x, inst.x),
      ShiftEqualsEigenvalue);
}

TEST_CASE("eta sandwich holds on 1000 seeded instances") {
  Rng rng(49);
  for (int t = 0; t < 1000; ++t) {
    const Index n = 3 + Index(rng.bits() % 10);
    const Index m = 1 + Index(rng.bits() % std::uint64_t(n - 2));
    Instance inst = random_instance(n, m, 1e-2, 0.8, rng);
    BoundContext ctx =
        build_context(inst.A, inst.tau, inst.lambda, inst.x, inst.V);
    auto [lo, hi] = eta_sandwich(ctx, ctx.yhat);
    const double actual =
        sin_angle_vec_vec(ctx.x, shift_eye(inst.A, inst.tau) * ctx.yhat);
    CHECK(lo <= actual * (1.0 + 1e-10) + 1e-12);
    CHECK(actual <= hi * (1.0 + 1e-10) + 1e-12);
  }
}

TEST_CASE("eta sandwich matches the normal specialization") {
  Rng rng(50);
  Matrix U = rng.unitary(5);
  Vector d(5);
  for (Index i = 0; i < 5; ++i)
    d(i) = Complex(1.0 + i, 0.3 * i);
  Matrix A = U * d.asDiagonal() * U.adjoint();
  Vector x = U.col(0);
  const Complex tau(0.4, 0.1);
  OrthonormalBasis V = orthonormalize(x);
  BoundContext ctx = build_context(A, tau, d(0), x, V);
  REQUIRE(ctx.normal);
  Vector y = random_matrix(5, 1, rng).col(0);
  auto [lo, hi] = eta_sandwich(ctx, y);
  // closed forms of the eta-free specialization
  const double s = sin_angle_vec_vec(x, y);
  const double c = cos_angle_vec_vec(x, y);
  const double dd = std::abs(d(0) - tau);
  const double tlo = dd / ctx.sigma_min * c;
  const double thi = dd / ctx.sigma_max * c;
  CHECK(lo == doctest::Approx(s / std::sqrt(s * s + tlo * tlo)).epsilon(1e-10));
  CHECK(hi == doctest::Approx(s / std::sqrt(s * s + thi * thi)).epsilon(1e-10));
}

TEST_CASE("hermitian corollary is sharper than the Vecharynski lemma") {
  Rng rng(51);
  for (int t = 0; t < 200; ++t) {
    const Index n = 3 + Index(rng.bits() % 6);
    Matrix A = random_hermitian_nonsingular(n, rng);
    EigenDecomposition ed = eig_dense(A);
    const Index pick = Index(rng.bits() % std::uint64_t(n));
    const Complex lambda = ed.values(pick).real();
    Vector x = ed.vectors.col(pick);
    Vector y = random_matrix(n, 1, rng).col(0);
    auto [clo, chi] = hermitian_sandwich(A, lambda, x, y);
    auto [vlo, vhi] = vecharynski_lemma(A, lambda, x, y);
    CHECK(chi <= vhi * (1.0 + 1e-10) + 1e-14);
    CHECK(clo >= vlo * (1.0 - 1e-10) - 1e-14);
    // and both really sandwich the measured angle
    const double actual = sin_angle_vec_vec(x, A * y);
    CHECK(clo <= actual * (1.0 + 1e-10) + 1e-12);
    CHECK(actual <= chi * (1.0 + 1e-10) + 1e-12);
  }
}

TEST_CASE("new harmonic vector bound reproduces the published number") {
  Instance inst = example1_instance(1e-6);
  BoundContext ctx =
      build_context(inst.A, inst.tau, inst.lambda, inst.x, inst.V);
  auto pairs = harmonic_pairs_pencil(inst.A, inst.tau, inst.V);
  const auto& sel = select_nearest(pairs, inst.tau);
  BoundValue b = new_harmonic_vector_bound(ctx, sel);
  REQUIRE(b.applicable);
  CHECK(b.value == doctest::Approx(1.084005507313452e-5).epsilon(1e-8));
  const double actual = sin_angle_vec_vec(inst.x, sel.x_tilde);
  CHECK(actual == doctest::Approx(1.201849695848198e-6).epsilon(1e-6));
  CHECK(actual <= b.value);
}

TEST_CASE("new harmonic vector bound is zero in the exact case") {
  Instance inst = example1_instance(std::nullopt);
  BoundContext ctx =
      build_context(inst.A, inst.tau, inst.lambda, inst.x, inst.V);
  auto pairs = harmonic_pairs_pencil(inst.A, inst.tau, inst.V);
  const auto& sel = select_nearest(pairs, inst.tau);
  BoundValue b = new_harmonic_vector_bound(ctx, sel);
  CHECK(b.value <= 1e-12);
  CHECK(sin_angle_vec_vec(inst.x, sel.x_tilde) <= 1e-12);
}

TEST_CASE("vecharynski bound gates and dominance") {
  Instance inst = example1_instance(1e-6);
  BoundContext ctx =
      build_context(inst.A, inst.tau, inst.lambda, inst.x, inst.V);
  auto pairs = harmonic_pairs_pencil(inst.A, inst.tau, inst.V);
  const auto& sel = select_nearest(pairs, inst.tau);
  BoundValue gate = vecharynski_bound(ctx, pairs, sel);
  CHECK(!gate.applicable);

  // Hermitian diag(1,2,3), K = span{e1 + d e2, e3}, tau = 0.9
  Matrix A = Matrix::Zero(3, 3);
  A(0, 0) = 1.0;
  A(1, 1) = 2.0;
  A(2, 2) = 3.0;
  Matrix Vraw = Matrix::Zero(3, 2);
  Vraw(0, 0) = 1.0;
  Vraw(1, 0) = 1e-3;
  Vraw(2, 1) = 1.0;
  OrthonormalBasis V = orthonormalize(Vraw);
  Vector x = Vector::Zero(3);
  x(0) = 1.0;
  BoundContext hctx = build_context(A, 0.9, 1.0, x, V);
  auto hp = harmonic_pairs_pencil(A, 0.9, V);
  const auto& hsel = select_nearest(hp, 0.9);
  BoundValue hb = vecharynski_bound(hctx, hp, hsel);
  REQUIRE(hb.applicable);
  const double actual = sin_angle_vec_vec(x, hsel.x_tilde);
  CHECK(actual <= hb.value * (1.0 + 1e-10) + 1e-12);
}

TEST_CASE("subspace image angle bound") {
  Instance exact = example1_instance(std::nullopt);
  BoundContext zctx =
      build_context(exact.A, exact.tau, exact.lambda, exact.x, exact.V);
  CHECK(subspace_image_angle_bound(zctx).value <= 1e-12);

  Instance inst = example1_instance(1e-6);
  BoundContext ctx =
      build_context(inst.A, inst.tau, inst.lambda, inst.x, inst.V);
  BoundValue b = subspace_image_angle_bound(ctx);
  Matrix S = shift_eye(inst.A, inst.tau);
  const double actual =
      sin_angle_vec_subspace(ctx.x, orthonormalize(S * inst.V.Q));
  CHECK(actual <= b.value * (1.0 + 1e-10) + 1e-12);

  Rng rng(52);
  for (int t = 0; t < 50; ++t) {
    Matrix U = rng.unitary(5);
    Vector d(5);
    for (Index i = 0; i < 5; ++i) d(i) = Complex(1.0 + i, -0.2 * i);
    Matrix A = U * d.asDiagonal() * U.adjoint();
    Vector x = U.col(0);
    Matrix span(5, 2);
    span.col(0) = x + 1e-3 * U.col(1);
    span.col(1) = U.col(2);
    OrthonormalBasis V = orthonormalize(span);
    const Complex tau = d(0) + 0.4;
    BoundContext nctx = build_context(A, tau, d(0), x, V);
    BoundValue nb = subspace_image_angle_bound(nctx);
    Matrix NS = shift_eye(A, tau);
    const double na = sin_angle_vec_subspace(nctx.x, orthonormalize(NS * V.Q));
    CHECK(na <= nb.value * (1.0 + 1e-10) + 1e-12);
  }
}

TEST_CASE("f_norm bound: trivial, normal specialization, asymptotics") {
  Instance exact = example1_instance(std::nullopt);
  BoundContext zctx =
      build_context(exact.A, exact.tau, exact.lambda, exact.x, exact.V);
  CHECK(f_norm_bound(zctx).value <= 1e-12);

  Rng rng(53);
  Matrix U = rng.unitary(4);
  Vector d(4);
  for (Index i = 0; i < 4; ++i) d(i) = Complex(1.0 + 2.0 * i, 0.5);
  Matrix A = U * d.asDiagonal() * U.adjoint();
  Vector x = U.col(0);
  Matrix span(4, 2);
  span.col(0) = x + 1e-4 * U.col(1);
  span.col(1) = U.col(2);
  OrthonormalBasis V = orthonormalize(span);
  const Complex tau = d(0) + 0.5;
  BoundContext ctx = build_context(A, tau, d(0), x, V);
  REQUIRE(ctx.normal);
  BoundValue b = f_norm_bound(ctx);
  const double s = ctx.eps;
  const double c = std::sqrt(1.0 - s * s);
  const double expected =
      ctx.kappa / std::abs(d(0) - tau) * (s / c);
  CHECK(b.value == doctest::Approx(expected).epsilon(1e-10));

  // asymptotic dominance on a non-normal instance with small coupling
  for (int t = 0; t < 30; ++t) {
    Instance inst = random_instance(6, 2, 1e-6, 0.7, rng);
    BoundContext rc =
        build_context(inst.A, inst.tau, inst.lambda, inst.x, inst.V);
    const double coupling = rc.cos_w_zhat * rc.w_norm;
    const double dd = std::abs(rc.lambda - rc.tau);
    const double cot = std::sqrt(1.0 - rc.eps * rc.eps) / rc.eps;
    if (coupling > 0.01 * dd * cot) continue;
    BoundValue rb = f_norm_bound(rc);
    if (!rb.applicable) continue;
    CHECK(rb.value ==
          doctest::Approx(rb.components.at("asymptotic")).epsilon(0.02));
  }
}

TEST_CASE("elsner oracle over 200 random perturbation pairs") {
  Rng rng(54);
  for (int t = 0; t < 200; ++t) {
    const Index n = 2 + Index(rng.bits() % 5);  // up to 6
    Matrix M = random_matrix(n, n, rng);
    Matrix D = 1e-4 * random_matrix(n, n, rng);
    Matrix Mp = M + D;
    EigenDecomposition em = eig_dense(M);
    EigenDecomposition ep = eig_dense(Mp);
    const double bound = std::pow(norm2(M) + norm2(Mp), 1.0 - 1.0 / n) *
                         std::pow(norm2(D), 1.0 / n);
    for (Index i = 0; i < n; ++i) {
      double best = 1e300;
      for (Index j = 0; j < n; ++j)
        best = std::min(best, std::abs(em.values(i) - ep.values(j)));
      CHECK(best <= bound * (1.0 + 1e-10));
    }
  }
}

TEST_CASE("harmonic value error bound includes an eigenvalue of D") {
  Rng rng(55);
  int tested = 0;
  while (tested < 100) {
    Instance inst = random_instance(6, 3, 1e-4, 0.7, rng);
    BoundContext ctx =
        build_context(inst.A, inst.tau, inst.lambda, inst.x, inst.V);
    BoundValue fb = f_norm_bound(ctx);
    if (!fb.applicable) continue;
    BoundValue vb = harmonic_value_error_bound(ctx, 3, fb);
    if (!vb.applicable) continue;
    ++tested;
    Matrix S = shift_eye(inst.A, inst.tau);
    OrthonormalBasis W = orthonormalize(S * inst.V.Q);
    Matrix D = W.Q.adjoint() * solve_shifted(inst.A, inst.tau, W.Q);
    EigenDecomposition ed = eig_dense(D);
    const Complex target = 1.0 / (inst.lambda - inst.tau);
    double best = 1e300;
    for (Index i = 0; i < ed.values.size(); ++i)
      best = std::min(best, std::abs(target - ed.values(i)));
    CHECK(best <= vb.value * (1.0 + 1e-10) + 1e-12);
  }
}

TEST_CASE("harmonic value error with a one-dimensional subspace") {
  Rng rng(56);
  Instance inst = random_instance(5, 1, 0.0, 0.8, rng);
  BoundContext ctx =
      build_context(inst.A, inst.tau, inst.lambda, inst.x, inst.V);
  BoundValue fb = f_norm_bound(ctx);
  REQUIRE(fb.applicable);
  BoundValue vb = harmonic_value_error_bound(ctx, 1, fb);
  // m = 1 makes the Elsner composite collapse to the F bound itself
  CHECK(vb.value == doctest::Approx(fb.value).epsilon(1e-12));
}

TEST_CASE("uniform separation ratio") {
  Instance inst = example1_instance(1e-6);
  CHECK(std::isinf(uniform_separation_ratio(inst.A, inst.tau, 0.0)));
  const double kappa = cond_shifted(inst.A, inst.tau);
  const double eps = 9.999999999995000e-7;
  CHECK(uniform_separation_ratio(inst.A, inst.tau, eps) ==
        doctest::Approx(1.0 / (kappa * eps)).epsilon(1e-10));
  // ratio vanishes as tau approaches an eigenvalue
  Matrix D2 = Matrix::Zero(2, 2);
  D2(0, 0) = 1.0;
  D2(1, 1) = 2.0;
  const double far = uniform_separation_ratio(D2, 0.5, 1e-3);
  const double near = uniform_separation_ratio(D2, 0.999999, 1e-3);
  CHECK(near < 1e-3 * far);
}

TEST_CASE("full_report on the invariant case is clean") {
  Instance inst = example1_instance(std::nullopt);
  BoundReport rep =
      full_report(inst.A, inst.tau, inst.lambda, inst.x, inst.V);
  CHECK(rep.actual_sin_x_K <= 1e-12);
  CHECK(rep.actual_sin_x_xtilde <= 1e-12);
  CHECK(rep.actual_value_error <= 1e-12);
  CHECK(rep.infinite_pair_count == 1);
  CHECK(rep.uniform_separation > 1e10);
  for (const auto& b : rep.bounds) {
    if (!b.applicable) continue;
    auto it = b.components.find("actual");
    if (it == b.components.end()) continue;
    if (b.name.size() > 6 &&
        b.name.compare(b.name.size() - 6, 6, "_lower") == 0)
      CHECK(b.value <= it->second * (1.0 + 1e-10) + 1e-12);
    else
      CHECK(it->second <= b.value * (1.0 + 1e-10) + 1e-12);
  }
}

TEST_CASE("full_report carries the five published golden numbers") {
  BoundReport rep = example1(1e-6);
  CHECK(rep.actual_sin_x_K ==
        doctest::Approx(9.999999999995000e-7).epsilon(1e-9));
  CHECK(rep.b_inv_norm == doctest::Approx(2.795084971879544e5).epsilon(1e-9));
  CHECK(find_bound(rep, "jia_vector").value ==
        doctest::Approx(2.830019056701876).epsilon(1e-9));
  CHECK(find_bound(rep, "new_harmonic_vector").value ==
        doctest::Approx(1.084005507313452e-5).epsilon(1e-8));
  CHECK(std::abs(rep.lambda_tilde - Complex(2.000001666687963)) <= 1e-12);
  CHECK(rep.actual_sin_x_xtilde ==
        doctest::Approx(1.201849695848198e-6).epsilon(1e-6));
  CHECK(rep.selected_finite);
}
