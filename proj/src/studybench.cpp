// SPDX-License-Identifier: Apache-2.0

#include "hrr/studybench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hrr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix example1_matrix() {
  Matrix A(3, 3);
  A << Complex(2), Complex(2), Complex(3),
       Complex(0), Complex(1), Complex(4),
       Complex(0), Complex(6), Complex(6);
  return A;
}

}  // namespace

std::uint64_t Rng::splitmix() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::bits() { return splitmix(); }

double Rng::uniform() { return (bits() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * M_PI * u2;
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Matrix Rng::unitary(Index n) {
  Matrix G(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) G(i, j) = complex_normal();
  return orthonormalize(G).Q;
}

Instance example1_instance(std::optional<double> epsilon) {
  Instance inst;
  inst.A = example1_matrix();
  inst.tau = 1.0;
  inst.lambda = 2.0;
  inst.x = Vector::Zero(3);
  inst.x(0) = 1.0;
  Matrix Vraw = Matrix::Zero(3, 2);
  Vraw(0, 0) = 1.0;
  Vraw(1, 1) = 1.0;
  if (epsilon) Vraw(2, 0) = *epsilon;
  inst.V = orthonormalize(Vraw);
  inst.target_angle = epsilon ? sin_angle_vec_subspace(inst.x, inst.V) : 0.0;
  return inst;
}

BoundReport example1(std::optional<double> epsilon,
                     const Thresholds& thresholds,
                     const ConditionThresholds& cond) {
  Instance inst = example1_instance(epsilon);
  return full_report(inst.A, inst.tau, inst.lambda, inst.x, inst.V,
                     thresholds, cond);
}

std::vector<SweepRecord> tau_sweep(const Matrix& A, Complex lambda,
                                   const Vector& x, const OrthonormalBasis& V,
                                   const GridSpec& grid,
                                   const Thresholds& thresholds,
                                   const ConditionThresholds& cond) {
  if (grid.n_re < 1 || grid.n_im < 1)
    throw EmptyGrid("tau_sweep: grid has no points");
  EigenDecomposition spectrum = eig_dense(A);

  std::vector<SweepRecord> records;
  records.reserve(static_cast<std::size_t>(grid.n_re) * grid.n_im);
  for (int i = 0; i < grid.n_re; ++i) {
    const double re = grid.n_re == 1
                          ? grid.re0
                          : grid.re0 + i * (grid.re1 - grid.re0) / (grid.n_re - 1);
    for (int j = 0; j < grid.n_im; ++j) {
      const double im = grid.n_im == 1
                            ? grid.im0
                            : grid.im0 + j * (grid.im1 - grid.im0) / (grid.n_im - 1);
      SweepRecord rec;
      rec.tau = Complex(re, im);
      double dist = kInf;
      for (Index k = 0; k < spectrum.values.size(); ++k)
        dist = std::min(dist, std::abs(rec.tau - spectrum.values(k)));
      if (dist <= 1e-12) {
        rec.skipped = true;
        rec.skip_reason = "tau within 1e-12 of an eigenvalue of A";
      } else {
        try {
          rec.report = full_report(A, rec.tau, lambda, x, V, thresholds, cond);
        } catch (const Error& e) {
          rec.skipped = true;
          rec.skip_reason = e.what();
        }
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

Instance random_instance(Index n, Index m, double target_angle,
                         double decay_ratio, Rng& rng) {
  // well separated eigenvalues keep the eigenvector solve benign
  Vector eigs(n);
  for (Index i = 0; i < n; ++i) {
    for (int attempt = 0; attempt < 200; ++attempt) {
      Complex cand(6.0 * rng.uniform() - 3.0, 6.0 * rng.uniform() - 3.0);
      bool ok = true;
      for (Index k = 0; k < i; ++k)
        if (std::abs(cand - eigs(k)) < 0.5) { ok = false; break; }
      if (ok) { eigs(i) = cand; break; }
      if (attempt == 199) eigs(i) = Complex(6.0 * i, 0.0);
    }
  }

  Matrix Q1 = rng.unitary(n), Q2 = rng.unitary(n);
  Vector d(n);
  for (Index i = 0; i < n; ++i) d(i) = std::pow(decay_ratio, double(i));
  Matrix S = Q1 * d.asDiagonal() * Q2;
  Matrix Sinv = Q2.adjoint() * d.cwiseInverse().asDiagonal() * Q1.adjoint();

  Instance inst;
  inst.A = S * eigs.asDiagonal() * Sinv;
  inst.lambda = eigs(0);
  inst.x = S.col(0) / S.col(0).norm();
  inst.target_angle = target_angle;

  double dmin = kInf;
  for (Index i = 1; i < n; ++i)
    dmin = std::min(dmin, std::abs(eigs(i) - eigs(0)));
  const double phase = 2.0 * M_PI * rng.uniform();
  inst.tau = inst.lambda +
             0.3 * dmin * Complex(std::cos(phase), std::sin(phase));

  // subspace with sin angle(x, K) = target_angle exactly
  Matrix Xc = unitary_complement(inst.x);
  Vector c(n - 1);
  for (Index i = 0; i < n - 1; ++i) c(i) = rng.complex_normal();
  Vector u1 = Xc * (c / c.norm());

  Matrix V(n, m);
  const double s = target_angle;
  const double co = std::sqrt(std::max(0.0, 1.0 - s * s));
  V.col(0) = co * inst.x + s * u1;
  if (m > 1) {
    Matrix pair(n, 2);
    pair.col(0) = inst.x;
    pair.col(1) = u1;
    Eigen::HouseholderQR<Matrix> qr(pair);
    Matrix full = qr.householderQ() * Matrix::Identity(n, n);
    Matrix rest = full.rightCols(n - 2);
    Matrix mix = rng.unitary(n - 2);
    V.rightCols(m - 1) = rest * mix.leftCols(m - 1);
  }
  inst.V = orthonormalize(V);
  return inst;
}

CampaignSummary random_campaign(int count, Index n_max, Index m_max,
                                std::uint64_t seed,
                                const Thresholds& thresholds) {
  static const double kAngles[] = {1e-2, 1e-4, 1e-6};
  Rng rng(seed);
  CampaignSummary summary;
  summary.min_tightness = kInf;
  summary.max_tightness = 0.0;

  for (int i = 0; i < count; ++i) {
    ++summary.instances;
    const Index n = 4 + Index(rng.bits() % std::uint64_t(std::max<Index>(1, n_max - 3)));
    const Index m_cap = std::min<Index>(m_max, n - 2);
    const Index m = 1 + Index(rng.bits() % std::uint64_t(std::max<Index>(1, m_cap)));
    const double angle = kAngles[i % 3];
    Instance inst = random_instance(n, m, angle, 0.7, rng);

    BoundReport rep;
    try {
      rep = full_report(inst.A, inst.tau, inst.lambda, inst.x, inst.V,
                        thresholds);
    } catch (const Error& e) {
      ++summary.skipped;
      summary.notes.push_back(std::string("instance skipped: ") + e.what());
      continue;
    }
    ++summary.reports;

    for (const auto& b : rep.bounds) {
      if (!b.applicable) continue;
      auto it = b.components.find("actual");
      if (it == b.components.end()) continue;
      const double actual = it->second;
      const bool lower = b.name.size() > 6 &&
                         b.name.compare(b.name.size() - 6, 6, "_lower") == 0;
      const double slack_rel = 1e-10, slack_abs = 1e-12;
      bool violated = lower
                          ? b.value > actual * (1.0 + slack_rel) + slack_abs
                          : actual > b.value * (1.0 + slack_rel) + slack_abs;
      if (violated) {
        summary.violations.push_back({i, b.name, b.value, actual});
      } else if (!lower && actual > 0.0 && std::isfinite(b.value)) {
        const double ratio = b.value / actual;
        summary.min_tightness = std::min(summary.min_tightness, ratio);
        summary.max_tightness = std::max(summary.max_tightness, ratio);
      }
    }
  }
  if (summary.reports == 0) summary.min_tightness = 0.0;
  return summary;
}

double oracle_angle_min(const Vector& x, const Matrix& M) {
  if (M.cols() == 0) return 1.0;
  Matrix G = M.adjoint() * M;
  Vector b = M.adjoint() * x;
  Eigen::LDLT<Matrix> ldlt(G);
  Vector c = ldlt.solve(b);
  // one step of iterative refinement on the normal equations
  Vector r = b - G * c;
  c += ldlt.solve(r);
  const double res = (x - M * c).norm();
  return std::min(1.0, std::max(0.0, res));
}

}  // namespace hrr
