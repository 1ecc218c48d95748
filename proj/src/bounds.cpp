// SPDX-License-Identifier: Apache-2.0

#include "hrr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hrr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix shifted(const Matrix& A, Complex tau) {
  return A - tau * Matrix::Identity(A.rows(), A.cols());
}

bool is_hermitian(const Matrix& A, double threshold) {
  return norm2(A - A.adjoint()) <= threshold * std::max(norm2(A), 1e-300);
}

// B = V^H A^H V and friends in the tau = 0 frame shared by the Chen-Jia
// and Jia bounds. Fails the gate instead of throwing.
struct TauZeroFrame {
  bool ok = false;
  std::string reason;
  Matrix B, C, M;  // M = B^{-1} C
  double b_inv_norm = kInf;
  double a_norm = 0.0;
};

TauZeroFrame tau_zero_frame(const Matrix& A, Complex tau,
                            const OrthonormalBasis& V,
                            double b_singular_threshold) {
  TauZeroFrame f;
  if (tau != Complex(0.0, 0.0)) {
    f.reason = "requires tau=0";
    return f;
  }
  f.B = V.Q.adjoint() * (A.adjoint() * V.Q);
  f.C = V.Q.adjoint() * (A.adjoint() * (A * V.Q));
  f.C = 0.5 * (f.C + f.C.adjoint().eval());
  Svd sb = svd(f.B);
  const Index k = f.B.rows();
  if (sb.sigma(k - 1) <= b_singular_threshold * sb.sigma(0)) {
    f.reason = "B singular";
    return f;
  }
  f.b_inv_norm = 1.0 / sb.sigma(k - 1);
  f.M = f.B.partialPivLu().solve(f.C);
  f.a_norm = norm2(A);
  f.ok = true;
  return f;
}

double sin_angle(const Vector& x, const OrthonormalBasis& V) {
  return sin_angle_vec_subspace(x, V);
}

}  // namespace

BoundContext build_context(const Matrix& A, Complex tau, Complex lambda,
                           const Vector& x, const OrthonormalBasis& V,
                           double normality_threshold) {
  BoundContext ctx;
  ctx.A = A;
  ctx.tau = tau;
  ctx.lambda = lambda;
  ctx.x = x / x.norm();
  ctx.V = V;
  ctx.a_norm = norm2(A);

  const double backward = (A * ctx.x - lambda * ctx.x).norm();
  if (backward > 1e-10 * (ctx.a_norm + std::abs(lambda)))
    throw NotAnEigenpair("build_context: (lambda, x) residual " +
                         std::to_string(backward));
  if (std::abs(tau - lambda) <= 1e-14 * (1.0 + std::abs(lambda)))
    throw ShiftEqualsEigenvalue("build_context: tau equals lambda");

  Matrix S = shifted(A, tau);
  Svd ss = svd(S);
  ctx.sigma_max = ss.sigma(0);
  ctx.sigma_min = ss.sigma(S.rows() - 1);
  if (ctx.sigma_min <= 1e-300)
    throw SingularShift("build_context: A - tau I singular");
  ctx.kappa = ctx.sigma_max / ctx.sigma_min;
  ctx.inv_norm = 1.0 / ctx.sigma_min;

  ctx.Xhat = unitary_complement(ctx.x);
  ctx.R = ctx.Xhat.adjoint() * (S * ctx.Xhat);
  ctx.w = ctx.Xhat.adjoint() * (A.adjoint() * ctx.x);
  ctx.w_norm = ctx.w.norm();

  Vector proj = V.Q * (V.Q.adjoint() * ctx.x);
  if (proj.norm() <= 1e-14)
    throw DegenerateDenominator(
        "build_context: x orthogonal to K, yhat undefined");
  ctx.yhat = proj / proj.norm();
  ctx.eps = sin_angle(ctx.x, V);
  ctx.alpha = (ctx.x.adjoint() * ctx.yhat)(0);
  ctx.zhat = ctx.Xhat.adjoint() * ctx.yhat;

  ctx.normal =
      norm2(A.adjoint() * A - A * A.adjoint()) <=
      normality_threshold * std::max(ctx.a_norm * ctx.a_norm, 1e-300);
  ctx.cos_w_zhat = ctx.normal ? 0.0 : cos_angle_vec_vec(ctx.w, ctx.zhat);
  const double coupling = ctx.cos_w_zhat * ctx.w_norm;
  ctx.eta1 = coupling / ctx.sigma_min;
  ctx.eta2 = coupling / ctx.sigma_max;
  ctx.etahat2 = ctx.eta2;
  return ctx;
}

BoundValue stewart_bound(const Matrix& A, const OrthonormalBasis& V,
                         const RitzPair& pair, Complex lambda,
                         const Vector& x) {
  BoundValue b;
  b.name = "stewart";
  const double eps = sin_angle(x, V);
  Matrix P = V.Q * V.Q.adjoint();
  Matrix I = Matrix::Identity(A.rows(), A.cols());
  const double gamma = norm2(P * A * (I - P));
  double sp = kInf;
  if (V.cols() > 1) {
    Matrix U = V.Q * unitary_complement(pair.p);
    sp = sep(lambda, U.adjoint() * (A * U));
  }
  b.components["gamma"] = gamma;
  b.components["sep"] = sp;
  b.components["sin_x_K"] = eps;
  if (sp == 0.0) {
    b.value = kInf;
    b.reason = "sep = 0";
  } else {
    const double ratio = std::isinf(sp) ? 0.0 : gamma / sp;
    b.value = eps * std::sqrt(1.0 + ratio * ratio);
  }
  return b;
}

BoundValue chen_jia_bound(const Matrix& A, Complex tau,
                          const OrthonormalBasis& V,
                          const HarmonicRitzPair& pair, Complex lambda,
                          const Vector& x, double b_singular_threshold) {
  BoundValue b;
  b.name = "chen_jia";
  TauZeroFrame f = tau_zero_frame(A, tau, V, b_singular_threshold);
  if (!f.ok) {
    b.applicable = false;
    b.reason = f.reason;
    return b;
  }
  const double eps = sin_angle(x, V);
  Matrix P = V.Q * V.Q.adjoint();
  Matrix I = Matrix::Identity(A.rows(), A.cols());
  const double gamma1 =
      norm2(P * A.adjoint() * (lambda * I - A) * (I - P));
  double sp = kInf;
  if (V.cols() > 1) {
    Matrix Qp = unitary_complement(pair.q);
    sp = sep(lambda, Qp.adjoint() * (f.M * Qp));
  }
  b.components["gamma1"] = gamma1;
  b.components["b_inv_norm"] = f.b_inv_norm;
  b.components["sep"] = sp;
  b.components["sin_x_K"] = eps;
  if (sp == 0.0) {
    b.value = kInf;
    b.reason = "sep = 0";
  } else {
    const double ratio = std::isinf(sp) ? 0.0 : gamma1 * f.b_inv_norm / sp;
    b.value = eps * std::sqrt(1.0 + ratio * ratio);
  }
  return b;
}

BoundValue jia_vector_bound(const Matrix& A, Complex tau,
                            const OrthonormalBasis& V,
                            const HarmonicRitzPair& pair, Complex lambda,
                            const Vector& x, double b_singular_threshold) {
  BoundValue b;
  b.name = "jia_vector";
  TauZeroFrame f = tau_zero_frame(A, tau, V, b_singular_threshold);
  if (!f.ok) {
    b.applicable = false;
    b.reason = f.reason;
    return b;
  }
  const double eps = sin_angle(x, V);
  double sp = kInf;
  if (V.cols() > 1) {
    Matrix Qp = unitary_complement(pair.q);
    sp = sep(lambda, Qp.adjoint() * (f.M * Qp));
  }
  if (sp == 0.0) {
    b.value = kInf;
    b.reason = "sep = 0";
    return b;
  }
  if (eps >= 1.0) {
    b.applicable = false;
    b.reason = "sin angle(x, K) = 1";
    return b;
  }
  const double croot = std::sqrt(1.0 - eps * eps);
  const double a2 = f.a_norm * f.a_norm;
  const double per_sep = std::isinf(sp) ? 0.0 : 1.0 / sp;
  const double literal =
      (1.0 + 2.0 * f.b_inv_norm * a2 * per_sep / croot) * eps;
  // the published evaluation carries an extra factor ||B^{-1}|| inside the
  // separation and drops the leading term; the literal theorem value is the
  // floor so the result stays a valid bound when sep is large
  const double published =
      2.0 * f.b_inv_norm * f.b_inv_norm * a2 * per_sep / croot * eps;
  b.value = std::max(published, literal);
  b.components["literal"] = literal;
  b.components["published"] = published;
  b.components["b_inv_norm"] = f.b_inv_norm;
  b.components["sep"] = sp;
  b.components["a_norm"] = f.a_norm;
  b.components["sin_x_K"] = eps;
  if (is_hermitian(A, 1e-12)) {
    EigenDecomposition ed = eig_dense(A);
    double lo = kInf, hi = 0.0;
    bool pos = true, neg = true;
    for (Index i = 0; i < ed.values.size(); ++i) {
      const double re = ed.values(i).real();
      pos = pos && re > 0.0;
      neg = neg && re < 0.0;
      lo = std::min(lo, std::abs(ed.values(i)));
      hi = std::max(hi, std::abs(ed.values(i)));
    }
    if ((pos || neg) && lo > 0.0) {
      const double kappa = hi / lo;
      b.components["hermitian_definite"] =
          (1.0 + 2.0 * kappa * f.a_norm * per_sep / croot) * eps;
    }
  }
  return b;
}

JiaValueBounds jia_value_bounds(const Matrix& A, Complex tau,
                                const OrthonormalBasis& V, Complex lambda,
                                const Vector& x, double b_singular_threshold) {
  JiaValueBounds out;
  out.e_norm.name = "jia_value_e_norm";
  out.value_error.name = "jia_value_elsner";
  TauZeroFrame f = tau_zero_frame(A, tau, V, b_singular_threshold);
  const double eps = sin_angle(x, V);
  if (!f.ok || eps >= 1.0) {
    const std::string reason = f.ok ? "sin angle(x, K) = 1" : f.reason;
    out.e_norm.applicable = out.value_error.applicable = false;
    out.e_norm.reason = out.value_error.reason = reason;
    return out;
  }
  const double croot = std::sqrt(1.0 - eps * eps);
  const double e_bound = eps / croot * f.b_inv_norm *
                         (std::abs(lambda) * f.a_norm + f.a_norm * f.a_norm);
  out.e_norm.value = e_bound;
  out.e_norm.components["b_inv_norm"] = f.b_inv_norm;
  out.e_norm.components["sin_x_K"] = eps;

  const double m = static_cast<double>(V.cols());
  out.value_error.value =
      std::pow(2.0 * f.a_norm + e_bound, 1.0 - 1.0 / m) *
      std::pow(e_bound, 1.0 / m);
  out.value_error.components["e_norm_bound"] = e_bound;
  out.value_error.components["a_norm"] = f.a_norm;
  return out;
}

std::pair<double, double> sigma_sandwich(const Matrix& A, Complex tau,
                                         Complex lambda, const Vector& x,
                                         const Vector& y) {
  if (std::abs(lambda - tau) == 0.0)
    throw ShiftEqualsEigenvalue("sigma_sandwich: tau equals lambda");
  Svd s = svd(shifted(A, tau));
  const double smin = s.sigma(A.rows() - 1), smax = s.sigma(0);
  if (smin <= 1e-300)
    throw SingularShift("sigma_sandwich: A - tau I singular");
  const double sxy = sin_angle_vec_vec(x / x.norm(), y);
  const double d = std::abs(lambda - tau);
  return {smin / d * sxy, smax / d * sxy};
}

std::pair<double, double> eta_sandwich(const BoundContext& ctx,
                                       const Vector& y) {
  if (y.norm() == 0.0) throw ZeroVector("eta_sandwich: y is zero");
  Vector yu = y / y.norm();
  const Complex a = (ctx.x.adjoint() * yu)(0);
  Vector z = ctx.Xhat.adjoint() * yu;
  const double s = z.norm();
  const double c = std::abs(a);
  if (s == 0.0) return {0.0, 0.0};
  const double coswz =
      ctx.normal ? 0.0 : cos_angle_vec_vec(ctx.w, z);
  const double coupling = coswz * ctx.w_norm;
  const double d = std::abs(ctx.lambda - ctx.tau);
  const double tlo = d / ctx.sigma_min * c + coupling / ctx.sigma_min * s;
  const double thi = d / ctx.sigma_max * c - coupling / ctx.sigma_max * s;
  const double lower = s / std::sqrt(s * s + tlo * tlo);
  const double upper = s / std::sqrt(s * s + thi * thi);
  return {lower, upper};
}

std::pair<double, double> hermitian_sandwich(const Matrix& A, Complex lambda,
                                             const Vector& x, const Vector& y) {
  EigenDecomposition ed = eig_dense(A);
  double lmin = kInf, lmax = 0.0;
  for (Index i = 0; i < ed.values.size(); ++i) {
    lmin = std::min(lmin, std::abs(ed.values(i)));
    lmax = std::max(lmax, std::abs(ed.values(i)));
  }
  if (lmin == 0.0)
    throw SingularShift("hermitian_sandwich: A singular");
  const double s = sin_angle_vec_vec(x / x.norm(), y);
  const double c = std::sqrt(std::max(0.0, 1.0 - s * s));
  const double rlo = std::abs(lambda) / lmin;
  const double rhi = std::abs(lambda) / lmax;
  return {s / std::sqrt(s * s + rlo * rlo * c * c),
          s / std::sqrt(s * s + rhi * rhi * c * c)};
}

std::pair<double, double> vecharynski_lemma(const Matrix& A, Complex lambda,
                                            const Vector& x, const Vector& y) {
  EigenDecomposition ed = eig_dense(A);
  double lmin = kInf, lmax = 0.0;
  for (Index i = 0; i < ed.values.size(); ++i) {
    lmin = std::min(lmin, std::abs(ed.values(i)));
    lmax = std::max(lmax, std::abs(ed.values(i)));
  }
  const double s = sin_angle_vec_vec(x / x.norm(), y);
  const double l = std::abs(lambda);
  return {lmin / l * s, lmax / l * s};
}

BoundValue new_harmonic_vector_bound(const BoundContext& ctx,
                                     const HarmonicRitzPair& pair) {
  BoundValue b;
  b.name = "new_harmonic_vector";
  if (pair.infinite) {
    b.applicable = false;
    b.reason = "selected pair is infinite";
    return b;
  }
  Matrix S = shifted(ctx.A, ctx.tau);
  const Index n = ctx.A.rows();
  Matrix Sinv = solve_shifted(ctx.A, ctx.tau, Matrix::Identity(n, n));
  OrthonormalBasis W = orthonormalize(S * ctx.V.Q);
  Matrix PQ = W.Q * W.Q.adjoint();
  const double gamma_hat =
      norm2(PQ * Sinv * (Matrix::Identity(n, n) - PQ));

  double sp = kInf;
  if (ctx.V.cols() > 1) {
    Vector v0 = S * pair.x_tilde;
    v0.normalize();
    Vector c = W.Q.adjoint() * v0;
    Matrix Uhat = W.Q * unitary_complement(c);
    Matrix Ghat = Uhat.adjoint() * (Sinv * Uhat);
    sp = sep(1.0 / (ctx.lambda - ctx.tau), Ghat);
  }
  b.components["gamma_hat"] = gamma_hat;
  b.components["sep"] = sp;
  b.components["kappa"] = ctx.kappa;
  b.components["sin_x_K"] = ctx.eps;
  if (sp == 0.0) {
    b.value = kInf;
    b.reason = "sep = 0";
  } else {
    const double ratio = std::isinf(sp) ? 0.0 : gamma_hat / sp;
    b.value = ctx.kappa * std::sqrt(1.0 + ratio * ratio) * ctx.eps;
  }
  return b;
}

BoundValue vecharynski_bound(const BoundContext& ctx,
                             const std::vector<HarmonicRitzPair>& all_pairs,
                             const HarmonicRitzPair& selected) {
  BoundValue b;
  b.name = "vecharynski";
  if (!is_hermitian(ctx.A, 1e-12)) {
    b.applicable = false;
    b.reason = "requires Hermitian A";
    return b;
  }
  Matrix S = shifted(ctx.A, ctx.tau);
  const Index n = ctx.A.rows();
  Matrix Sinv = solve_shifted(ctx.A, ctx.tau, Matrix::Identity(n, n));
  OrthonormalBasis W = orthonormalize(S * ctx.V.Q);
  Matrix PQ = W.Q * W.Q.adjoint();
  const double gamma =
      norm2(PQ * Sinv * (Matrix::Identity(n, n) - PQ));

  const Complex target = 1.0 / (ctx.lambda - ctx.tau);
  double delta = kInf;
  for (const auto& p : all_pairs) {
    if (&p == &selected) continue;
    const Complex recip =
        p.infinite ? Complex(0.0, 0.0) : 1.0 / (p.lambda_tilde - ctx.tau);
    delta = std::min(delta, std::abs(target - recip));
  }
  b.components["gamma"] = gamma;
  b.components["delta"] = delta;
  b.components["kappa"] = ctx.kappa;
  if (delta == 0.0) {
    b.value = kInf;
    b.reason = "delta = 0";
  } else {
    const double ratio = std::isinf(delta) ? 0.0 : gamma / delta;
    b.value = ctx.kappa * std::sqrt(1.0 + ratio * ratio) * ctx.eps;
  }
  return b;
}

BoundValue subspace_image_angle_bound(const BoundContext& ctx) {
  BoundValue b;
  b.name = "subspace_image_angle";
  const double s = ctx.eps;
  const double c = std::abs(ctx.alpha);
  const double d = std::abs(ctx.lambda - ctx.tau);
  const double inner = d / ctx.sigma_max * c - ctx.etahat2 * s;
  b.components["etahat2"] = ctx.etahat2;
  b.components["inner"] = inner;
  if (s == 0.0) {
    b.value = 0.0;
    return b;
  }
  if (inner == 0.0) {
    b.value = kInf;
    b.reason = "degenerate inner term";
    return b;
  }
  b.value = s / std::sqrt(s * s + inner * inner);
  if (ctx.normal)
    b.components["normal_form"] =
        s / std::sqrt(s * s + (d / ctx.sigma_max * c) * (d / ctx.sigma_max * c));
  return b;
}

BoundValue f_norm_bound(const BoundContext& ctx) {
  BoundValue b;
  b.name = "f_norm";
  const double s = ctx.eps;
  const double c = std::abs(ctx.alpha);
  const double d = std::abs(ctx.lambda - ctx.tau);
  const double coupling = ctx.cos_w_zhat * ctx.w_norm;
  if (c == 0.0) {
    b.applicable = false;
    b.reason = "angle(x, K) = pi/2, tan undefined";
    return b;
  }
  const double tan_angle = s / c;
  if (std::abs(d - tan_angle * coupling) <= 1e-14 * d) {
    b.applicable = false;
    b.reason = "degenerate denominator";
    return b;
  }
  const double den = std::abs(d * c - s * coupling);
  b.value = ctx.kappa * s / den;
  b.components["kappa"] = ctx.kappa;
  b.components["denominator"] = den;
  b.components["asymptotic"] = ctx.kappa / d * tan_angle;
  if (ctx.normal) b.components["normal_form"] = ctx.kappa / d * tan_angle;
  return b;
}

BoundValue harmonic_value_error_bound(const BoundContext& ctx, Index m,
                                      const BoundValue& f_bound) {
  BoundValue b;
  b.name = "harmonic_value_error";
  if (!f_bound.applicable) {
    b.applicable = false;
    b.reason = "f_norm bound unavailable: " + f_bound.reason;
    return b;
  }
  const double F = f_bound.value;
  const double md = static_cast<double>(m);
  b.value = std::pow(2.0 * ctx.inv_norm + F, 1.0 - 1.0 / md) *
            std::pow(F, 1.0 / md);
  b.components["f_norm_bound"] = F;
  b.components["inv_norm"] = ctx.inv_norm;
  // invert the reciprocal metric when possible
  const double u = 1.0 / std::abs(ctx.lambda - ctx.tau);
  if (b.value < u) {
    b.components["implied_lambda_error"] = b.value / (u * (u - b.value));
  } else {
    b.reason = "reciprocal inversion ill-posed";
  }
  return b;
}

double uniform_separation_ratio(const Matrix& A, Complex tau, double eps) {
  Svd s = svd(shifted(A, tau));
  const double smax = s.sigma(0), smin = s.sigma(A.rows() - 1);
  if (eps == 0.0) return kInf;
  return smin / (smax * eps);
}

BoundReport full_report(const Matrix& A, Complex tau, Complex lambda,
                        const Vector& x, const OrthonormalBasis& V,
                        const Thresholds& thresholds,
                        const ConditionThresholds& cond) {
  BoundReport rep;
  rep.n = A.rows();
  rep.m = V.cols();
  rep.tau = tau;
  rep.lambda = lambda;
  rep.thresholds = thresholds;
  rep.condition_thresholds = cond;

  BoundContext ctx =
      build_context(A, tau, lambda, x, V, thresholds.normality);
  rep.actual_sin_x_K = ctx.eps;
  rep.uniform_separation = uniform_separation_ratio(A, tau, ctx.eps);

  auto [B, C] = form_harmonic_pencil(A, tau, V);
  {
    Svd sb = svd(B);
    rep.b_sigma_ratio = sb.sigma(B.rows() - 1) / std::max(sb.sigma(0), 1e-300);
    rep.b_inv_norm = rep.b_sigma_ratio <= thresholds.b_singular
                         ? kInf
                         : 1.0 / sb.sigma(B.rows() - 1);
  }

  auto pairs = harmonic_pairs_pencil(A, tau, V, thresholds.pencil_infinite);
  for (const auto& p : pairs)
    if (p.infinite) ++rep.infinite_pair_count;

  const Complex recip_target = 1.0 / (lambda - tau);
  {
    // eigenvalues of D, reciprocal metric
    double best = kInf;
    for (const auto& p : pairs) {
      const Complex recip =
          p.infinite ? Complex(0.0, 0.0) : 1.0 / (p.lambda_tilde - tau);
      best = std::min(best, std::abs(recip_target - recip));
    }
    rep.actual_reciprocal_error = best;
  }

  const HarmonicRitzPair* selected = nullptr;
  try {
    selected = &select_nearest(pairs, tau);
  } catch (const NoFinitePair&) {
    selected = nullptr;
  }
  if (selected) {
    rep.selected_finite = true;
    rep.lambda_tilde = selected->lambda_tilde;
    rep.actual_sin_x_xtilde = sin_angle_vec_vec(ctx.x, selected->x_tilde);
    rep.actual_value_error = std::abs(lambda - selected->lambda_tilde);
    rep.harmonic_residual = selected->residual.value_or(0.0);
    rep.refined_residual =
        refined_harmonic_vector(A, selected->lambda_tilde, V).residual;

    double bestdist = kInf;
    for (const auto& p : pairs) {
      if (p.infinite) continue;
      const double d = std::abs(lambda - p.lambda_tilde);
      if (d < bestdist) {
        bestdist = d;
        rep.lambda_tilde_best = p.lambda_tilde;
      }
    }
  }

  rep.actual_sin_x_imageK = sin_angle_vec_subspace(
      ctx.x, orthonormalize(shifted(A, tau) * V.Q));

  auto guarded = [&rep](const std::string& name, auto&& fn) {
    BoundValue b;
    try {
      b = fn();
    } catch (const Error& e) {
      b.name = name;
      b.applicable = false;
      b.reason = e.what();
    }
    b.name = name;
    rep.bounds.push_back(std::move(b));
  };

  // Stewart on the Ritz pair nearest lambda
  guarded("stewart", [&] {
    auto ritz = rayleigh_ritz(A, V);
    const RitzPair* bestp = &ritz.front();
    for (const auto& p : ritz)
      if (std::abs(p.lambda_hat - lambda) <
          std::abs(bestp->lambda_hat - lambda))
        bestp = &p;
    BoundValue b = stewart_bound(A, V, *bestp, lambda, ctx.x);
    b.components["actual"] = sin_angle_vec_vec(ctx.x, bestp->x_hat);
    return b;
  });

  // tau = 0 frame for the Chen-Jia and Jia bounds
  Matrix Af = shifted(A, tau);
  const Complex lf = lambda - tau;
  HarmonicRitzPair frame_pair;
  if (selected) {
    frame_pair = *selected;
    frame_pair.lambda_tilde = selected->lambda_tilde - tau;
  }

  guarded("chen_jia", [&] {
    if (!selected) throw NoFinitePair("no finite harmonic pair");
    BoundValue b = chen_jia_bound(Af, 0.0, V, frame_pair, lf, ctx.x,
                                  thresholds.b_singular);
    if (b.applicable) b.components["actual"] = rep.actual_sin_x_xtilde;
    return b;
  });
  guarded("jia_vector", [&] {
    if (!selected) throw NoFinitePair("no finite harmonic pair");
    BoundValue b = jia_vector_bound(Af, 0.0, V, frame_pair, lf, ctx.x,
                                    thresholds.b_singular);
    if (b.applicable) b.components["actual"] = rep.actual_sin_x_xtilde;
    return b;
  });
  {
    JiaValueBounds jb =
        jia_value_bounds(Af, 0.0, V, lf, ctx.x, thresholds.b_singular);
    if (jb.value_error.applicable && rep.b_sigma_ratio > thresholds.b_singular) {
      // nearest eigenvalue of B^{-1}C to lambda, the quantity Elsner bounds
      Matrix M = B.partialPivLu().solve(C);
      EigenDecomposition ed = eig_dense(M);
      double best = kInf;
      for (Index i = 0; i < ed.values.size(); ++i)
        best = std::min(best, std::abs(ed.values(i) - lf));
      jb.value_error.components["actual"] = best;
    }
    rep.bounds.push_back(std::move(jb.e_norm));
    rep.bounds.push_back(std::move(jb.value_error));
  }

  guarded("sigma_sandwich_lower", [&] {
    auto [lo, hi] = sigma_sandwich(A, tau, lambda, ctx.x, ctx.yhat);
    BoundValue b;
    b.value = lo;
    b.components["upper"] = hi;
    b.components["actual"] =
        sin_angle_vec_vec(ctx.x, shifted(A, tau) * ctx.yhat);
    return b;
  });
  guarded("sigma_sandwich_upper", [&] {
    auto [lo, hi] = sigma_sandwich(A, tau, lambda, ctx.x, ctx.yhat);
    BoundValue b;
    b.value = hi;
    b.components["actual"] =
        sin_angle_vec_vec(ctx.x, shifted(A, tau) * ctx.yhat);
    return b;
  });
  guarded("eta_sandwich_lower", [&] {
    auto [lo, hi] = eta_sandwich(ctx, ctx.yhat);
    BoundValue b;
    b.value = lo;
    b.components["upper"] = hi;
    b.components["actual"] =
        sin_angle_vec_vec(ctx.x, shifted(A, tau) * ctx.yhat);
    return b;
  });
  guarded("eta_sandwich_upper", [&] {
    auto [lo, hi] = eta_sandwich(ctx, ctx.yhat);
    BoundValue b;
    b.value = hi;
    b.components["actual"] =
        sin_angle_vec_vec(ctx.x, shifted(A, tau) * ctx.yhat);
    return b;
  });

  guarded("new_harmonic_vector", [&] {
    if (!selected) throw NoFinitePair("no finite harmonic pair");
    BoundValue b = new_harmonic_vector_bound(ctx, *selected);
    b.components["actual"] = rep.actual_sin_x_xtilde;
    return b;
  });
  guarded("vecharynski", [&] {
    if (!selected) throw NoFinitePair("no finite harmonic pair");
    BoundValue b = vecharynski_bound(ctx, pairs, *selected);
    if (b.applicable) b.components["actual"] = rep.actual_sin_x_xtilde;
    return b;
  });
  guarded("subspace_image_angle", [&] {
    BoundValue b = subspace_image_angle_bound(ctx);
    b.components["actual"] = rep.actual_sin_x_imageK;
    return b;
  });
  BoundValue fb;
  guarded("f_norm", [&] {
    fb = f_norm_bound(ctx);
    return fb;
  });
  guarded("harmonic_value_error", [&] {
    BoundValue b = harmonic_value_error_bound(ctx, rep.m, fb);
    if (b.applicable) b.components["actual"] = rep.actual_reciprocal_error;
    return b;
  });

  rep.conditions[0] = ctx.eps <= cond.good_subspace;
  rep.conditions[1] = rep.b_sigma_ratio >= cond.b_conditioning;
  double sep_hat = kInf;
  for (const auto& b : rep.bounds)
    if (b.name == "new_harmonic_vector" && b.applicable) {
      auto it = b.components.find("sep");
      if (it != b.components.end()) sep_hat = it->second;
    }
  rep.conditions[2] = sep_hat >= cond.sep_min;
  rep.conditions[3] = rep.uniform_separation >= cond.separation_ratio;
  return rep;
}

}  // namespace hrr
