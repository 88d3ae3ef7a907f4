#include "rdmlab/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace rdmlab {

ProjectionSplit split_projections(const OneBodyRDM& gamma) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (gamma + gamma.adjoint()));
  ProjectionSplit s;
  s.eigvecs = es.eigenvectors();
  s.eigvals = es.eigenvalues();
  const int n = static_cast<int>(gamma.rows());
  s.P = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    // Eigenvalue exactly 1/2 belongs to the P_perp branch.
    if (s.eigvals[i] > 0.5)
      s.P += s.eigvecs.col(i) * s.eigvecs.col(i).adjoint();
  }
  s.Pperp = Mat::Identity(n, n) - s.P;
  return s;
}

Mat random_projection(int n, int d, Rng& rng) {
  if (d < 0 || d > n)
    throw std::invalid_argument("random_projection: rank out of range");
  if (d == 0) return Mat::Zero(n, n);
  Mat g(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.cnormal();
  const Eigen::HouseholderQR<Mat> qr(g);
  const Mat q = Mat(qr.householderQ()).leftCols(d);
  return q * q.adjoint();
}

Mat random_commuting_projection(const ProjectionSplit& split, int d,
                                Rng& rng) {
  const int n = static_cast<int>(split.eigvals.size());
  if (d < 0 || d > n)
    throw std::invalid_argument("random_commuting_projection: rank range");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  // Fisher-Yates with the suite generator.
  for (int i = n - 1; i > 0; --i)
    std::swap(idx[i], idx[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  Mat q = Mat::Zero(n, n);
  for (int j = 0; j < d; ++j)
    q += split.eigvecs.col(idx[j]) * split.eigvecs.col(idx[j]).adjoint();
  return q;
}

cd trace2(const Mat& S, const Mat& T, const Mat& M) {
  return (Eigen::kroneckerProduct(S, T) * M).trace();
}

double correlation_lhs(const Mat& X, const OneBodyRDM& gamma,
                       const TwoBodyRDM& Gamma) {
  const cd v = trace2(X, X, transposed_gamma_term(gamma, Gamma));
  if (std::abs(v.imag()) > 1e-10)
    throw std::runtime_error("correlation_lhs: imaginary residue " +
                             std::to_string(v.imag()));
  return v.real();
}

TermTable decompose(const Mat& X, const ProjectionSplit& split,
                    const TwoBodyRDM& Gamma) {
  const Mat A = split.P * X * split.P;
  const Mat B = split.P * X * split.Pperp;
  const Mat C = split.Pperp * X * split.P;
  const Mat D = split.Pperp * X * split.Pperp;
  TermTable t;
  t.t1 = trace2(A, A, Gamma).real();
  t.t2r = trace2(A, C, Gamma).real();
  t.t3 = trace2(B, C, Gamma).real();
  t.t4 = trace2(D, D, Gamma).real();
  t.t5r = trace2(C, D, Gamma).real();
  t.t6 = trace2(D, A, Gamma).real();
  t.t7r = trace2(B, B, Gamma).real();
  t.t_mp = t.t1 + 4.0 * t.t2r + 4.0 * t.t3;
  t.t_r1 = t.t4 + 4.0 * t.t5r + 2.0 * t.t6;
  t.t_r2 = -2.0 * t.t3;
  t.t_r = t.t_r1 + t.t_r2;
  t.t_met = 2.0 * t.t7r;
  t.total = trace2(X, X, Gamma).real();
  t.reconstruction_residual =
      std::abs(t.t_mp + t.t_r + t.t_met - t.total);
  if (t.reconstruction_residual > 1e-8)
    throw std::runtime_error("decompose: regrouped sum fails to reconstruct");
  return t;
}

std::pair<double, double> b_operator_identity(const Mat& Y, const Mat& Q,
                                              const OneBodyRDM& gamma,
                                              const TwoBodyRDM& Gamma) {
  const int n = static_cast<int>(gamma.rows());
  const Mat id = Mat::Identity(n, n);
  const Mat Qp = id - Q;
  const Mat K =
      Gamma + exchange_operator(n) * Eigen::kroneckerProduct(gamma, id);
  const Mat QY = Q * Y;
  const Mat QpY = Qp * Y;
  double side1 = 0.0;
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      const Mat b = QY.col(r) * QpY.col(s).adjoint();
      side1 += trace2(b.adjoint(), b, K).real();
    }
  const double side2 =
      trace2(QY * Q, Qp * Y * Qp,
             Mat(-Gamma + Eigen::kroneckerProduct(id, gamma)))
          .real();
  return {side1, side2};
}

namespace {

struct AB {
  double a2 = 0.0;  // tr(X(gamma - gamma^2)), clamped at 0
  double a = 0.0;
  double b = 0.0;  // tr(X gamma)
};

AB ab_terms(const Mat& X, const OneBodyRDM& gamma) {
  AB r;
  r.b = (X * gamma).trace().real();
  r.a2 = (X * (gamma - gamma * gamma)).trace().real();
  if (r.a2 < 0.0) {
    if (r.a2 < -1e-12)
      throw std::runtime_error("tr(X(gamma-gamma^2)) significantly negative");
    r.a2 = 0.0;
  }
  r.a = std::sqrt(r.a2);
  return r;
}

}  // namespace

std::pair<double, double> fundsatz_check(const Mat& X,
                                         const ProjectionSplit& split,
                                         const OneBodyRDM& gamma,
                                         const TwoBodyRDM& Gamma) {
  const AB ab = ab_terms(X, gamma);
  const Mat A = split.P * X * split.P;
  const Mat D = split.Pperp * X * split.Pperp;
  const double rhs = 4.0 * ab.b * ab.a2;
  return {rhs - trace2(A, D, Gamma).real(), rhs - trace2(D, A, Gamma).real()};
}

RemainderSlacks bound_remainder(const Mat& X, const ProjectionSplit& split,
                                const OneBodyRDM& gamma,
                                const TwoBodyRDM& Gamma) {
  const AB ab = ab_terms(X, gamma);
  const TermTable t = decompose(X, split, Gamma);
  RemainderSlacks s;
  s.slack_r1 = t.t_r1 + 8.0 * ab.b * ab.a2;
  s.slack_r2 = t.t_r2 + 8.0 * ab.b * ab.a2;
  s.slack_r = t.t_r + 16.0 * ab.b * ab.a2;
  return s;
}

MetSlack bound_met(const Mat& X, const ProjectionSplit& split,
                   const OneBodyRDM& gamma, const TwoBodyRDM& Gamma) {
  const AB ab = ab_terms(X, gamma);
  const TermTable t = decompose(X, split, Gamma);
  MetSlack s;
  s.slack = t.t_met +
            2.0 * ab.b * std::sqrt(8.0 * ab.a2 * (1.0 + 4.0 * ab.a2));
  const int n = static_cast<int>(gamma.rows());
  const Mat C = split.Pperp * X * split.P;
  s.exchange_residual =
      std::abs(trace2(C, C,
                      Mat(exchange_operator(n) *
                          Eigen::kroneckerProduct(gamma, Mat::Identity(n, n)))));
  return s;
}

MainPartSlack bound_main_part(const Mat& X, const ProjectionSplit& split,
                              const OneBodyRDM& gamma,
                              const TwoBodyRDM& Gamma) {
  const AB ab = ab_terms(X, gamma);
  const TermTable t = decompose(X, split, Gamma);
  MainPartSlack s;
  const Mat L = split.P * X * (split.P + 2.0 * split.Pperp);
  const Mat R = (split.P + 2.0 * split.Pperp) * X * split.P;
  s.identity_residual = std::abs(trace2(L, R, Gamma).real() - t.t_mp);
  if (s.identity_residual > 1e-9)
    throw std::runtime_error("bound_main_part: rewriting identity failed");
  s.hf_term = trace2(X, X, hartree_fock_two_pdm(gamma)).real();
  s.slack = t.t_mp - s.hf_term + 22.0 * ab.b * ab.a2;
  return s;
}

double theorem_4_4_check(const Mat& X, const OneBodyRDM& gamma,
                         const TwoBodyRDM& Gamma) {
  const AB ab = ab_terms(X, gamma);
  return correlation_lhs(X, gamma, Gamma) + ab.b;
}

double combined_constant(double a) {
  return 38.0 * a + 2.0 * std::sqrt(8.0 + 32.0 * a * a);
}

CorrelationReport main_theorem_check(const Mat& X, const OneBodyRDM& gamma,
                                     const TwoBodyRDM& Gamma, double tol) {
  const AB ab = ab_terms(X, gamma);
  const ProjectionSplit split = split_projections(gamma);
  const TermTable t = decompose(X, split, Gamma);
  CorrelationReport r;
  r.a = ab.a;
  r.b = ab.b;
  r.lhs = correlation_lhs(X, gamma, Gamma);
  r.t_mp = t.t_mp;
  r.t_r1 = t.t_r1;
  r.t_r2 = t.t_r2;
  r.t_r = t.t_r;
  r.t_met = t.t_met;
  r.reconstruction_residual = t.reconstruction_residual;
  const auto fs = fundsatz_check(X, split, gamma, Gamma);
  r.slack_fundsatz = std::min(fs.first, fs.second);
  const RemainderSlacks rem = bound_remainder(X, split, gamma, Gamma);
  r.slack_tr1 = rem.slack_r1;
  r.slack_tr2 = rem.slack_r2;
  r.slack_tr = rem.slack_r;
  const MetSlack met = bound_met(X, split, gamma, Gamma);
  r.slack_tmet = met.slack;
  r.exchange_residual = met.exchange_residual;
  const MainPartSlack mp = bound_main_part(X, split, gamma, Gamma);
  r.slack_tmp = mp.slack;
  r.hf_term = mp.hf_term;
  r.identity_residual = mp.identity_residual;
  r.slack_thm44 = r.lhs + ab.b;
  r.slack_thm51 = r.lhs + ab.b * std::min(1.0, 10.0 * ab.a);
  r.slack_combined =
      r.lhs + ab.b * std::min(1.0, ab.a * combined_constant(ab.a));
  r.slack_headline_linear =
      r.lhs + ab.b * std::min(1.0, 38.0 * ab.a2 +
                                       4.0 * ab.a * std::sqrt(2.0 + 8.0 * ab.a2));
  r.slack_headline_squared =
      r.lhs +
      ab.b * std::min(1.0, 38.0 * ab.a2 +
                               4.0 * ab.a *
                                   std::sqrt(2.0 + 8.0 * ab.a2 * ab.a2));
  r.worst_slack =
      std::min({r.slack_thm44, r.slack_fundsatz, r.slack_tr1, r.slack_tr2,
                r.slack_tr, r.slack_tmet, r.slack_tmp, r.slack_thm51,
                r.slack_combined});
  r.pass = r.worst_slack >= -tol && r.reconstruction_residual <= 1e-10 &&
           r.identity_residual <= 1e-9 && r.exchange_residual <= 1e-9;
  return r;
}

ConstantChainTable constant_chain(const std::vector<double>& a_grid) {
  ConstantChainTable t;
  const double a_star = 1.0 / std::sqrt(94.0);
  t.value_at_a_star = combined_constant(a_star);
  t.identity_error = std::abs(t.value_at_a_star - std::sqrt(94.0));
  t.sqrt94_below_10 = std::sqrt(94.0) < 10.0;
  t.monotone = true;
  t.crossover_ok = true;
  double prev = -std::numeric_limits<double>::infinity();
  for (double a : a_grid) {
    if (a <= 0.0 || a > a_star + 1e-15)
      throw std::invalid_argument("constant_chain: grid outside (0, 1/sqrt(94)]");
    ConstantChainRow row;
    row.a = a;
    row.value = combined_constant(a);
    row.a_times_value = a * row.value;
    if (row.value <= prev) t.monotone = false;
    prev = row.value;
    if (row.a_times_value > 1.0 + 1e-12) t.crossover_ok = false;
    t.rows.push_back(row);
  }
  // Just above a*, the min switches branches: a f(a) must exceed 1.
  const double above = a_star * 1.0001;
  if (above * combined_constant(above) <= 1.0) t.crossover_ok = false;
  return t;
}

std::vector<ThresholdRow> threshold_sweep(const std::vector<double>& t_grid) {
  std::vector<ThresholdRow> out;
  for (double t : t_grid) {
    if (t <= 0.0 || t >= 1.0)
      throw std::invalid_argument("threshold_sweep: t outside (0,1)");
    // Constants the derivation chain produces for a split at t instead of
    // 1/2: the key inequality picks up c_F = 1/(t(1-t)), the remainder
    // bound 4 c_F, and the main part 2/(1-t) + 4/(t(1-t)) + 1/t.
    const double c_f = 1.0 / (t * (1.0 - t));
    const double c_r = 4.0 * c_f;
    const double c_mp = 2.0 / (1.0 - t) + 4.0 * c_f + 1.0 / t;
    auto g = [&](double a) {
      return (c_r + c_mp) * a +
             2.0 * std::sqrt(2.0 * c_f * (1.0 + c_f * a * a));
    };
    // Solve a g(a) = 1 by bisection; K(t) = 1/a*.
    double lo = 1e-12, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (mid * g(mid) < 1.0 ? lo : hi) = mid;
    }
    out.push_back({t, 1.0 / (0.5 * (lo + hi))});
  }
  return out;
}

}  // namespace rdmlab
