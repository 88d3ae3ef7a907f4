#include "rdmlab/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace rdmlab {

namespace {

// Orthonormal Hermitian basis of m x m matrices under <A,B> = tr(AB).
std::vector<Mat> hermitian_basis(int m) {
  std::vector<Mat> basis;
  basis.reserve(static_cast<std::size_t>(m) * m);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < m; ++i) {
    Mat e = Mat::Zero(m, m);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Mat e = Mat::Zero(m, m);
      e(i, j) = s;
      e(j, i) = s;
      basis.push_back(e);
      Mat f = Mat::Zero(m, m);
      f(i, j) = cd(0.0, s);
      f(j, i) = cd(0.0, -s);
      basis.push_back(f);
    }
  return basis;
}

struct Geometry {
  int n = 0, N = 0, m2 = 0, d = 0;
  Mat W;    // antisym isometry n^2 x m2
  Mat Ex;   // exchange operator
  Mat U;    // (n^2+1) x n^2 complement of the structural G-kernel direction
  std::vector<Mat> basis;  // Hermitian basis of the S space
};

Geometry make_geometry(int n, int N) {
  Geometry g;
  g.n = n;
  g.N = N;
  g.m2 = n * (n - 1) / 2;
  g.d = g.m2 * g.m2;
  g.W = antisym_isometry(n);
  g.Ex = exchange_operator(n);
  g.basis = hermitian_basis(g.m2);
  // The bordered G block annihilates u = (vec(1); -N) identically on the
  // trace shell, so the barrier acts on its orthogonal complement.
  Vec u = Vec::Zero(n * n + 1);
  for (int k = 0; k < n; ++k) u[pair_index(k, k, n)] = 1.0;
  u[n * n] = -static_cast<double>(N);
  Eigen::HouseholderQR<Mat> qr{Mat(u)};
  g.U = Mat(qr.householderQ()).rightCols(n * n);
  return g;
}

OneBodyRDM gamma_of(const Geometry& geo, const Mat& S) {
  return contract_two_pdm(Mat(geo.W * S * geo.W.adjoint()), geo.N);
}

// The five affine PSD blocks as a function of S.
std::vector<Mat> blocks_of(const Geometry& geo, const Mat& S) {
  const int n = geo.n;
  const Mat Gamma = geo.W * S * geo.W.adjoint();
  const Mat gamma = contract_two_pdm(Gamma, geo.N);
  const Mat id = Mat::Identity(n, n);
  std::vector<Mat> b;
  b.push_back(S);
  b.push_back(gamma);
  b.push_back(id - gamma);
  const Mat inner = Eigen::kroneckerProduct(id, id).eval() -
                    Eigen::kroneckerProduct(gamma, id).eval() -
                    Eigen::kroneckerProduct(id, gamma).eval();
  b.push_back(S + geo.W.adjoint() * (inner - geo.Ex * inner) * geo.W);
  const Mat K = Gamma + geo.Ex * Eigen::kroneckerProduct(gamma, id);
  Mat M(n * n, n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m)
        for (int nn = 0; nn < n; ++nn)
          M(pair_index(k, l, n), pair_index(m, nn, n)) =
              K(pair_index(k, nn, n), pair_index(l, m, n));
  Mat bord = Mat::Zero(n * n + 1, n * n + 1);
  bord.topLeftCorner(n * n, n * n) = 0.5 * (M + M.adjoint());
  Vec v(n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) v[pair_index(k, l, n)] = gamma(k, l);
  bord.block(0, n * n, n * n, 1) = v;
  bord.block(n * n, 0, 1, n * n) = v.adjoint();
  bord(n * n, n * n) = 1.0;
  b.push_back(geo.U.adjoint() * bord * geo.U);
  return b;
}

double objective_of(const Geometry& geo, const ModelHamiltonian& model,
                    const Mat& S) {
  const Mat Gamma = geo.W * S * geo.W.adjoint();
  const Mat gamma = contract_two_pdm(Gamma, geo.N);
  return ((model.h * gamma).trace() + 0.5 * (model.V * Gamma).trace()).real();
}

Mat coords_to_S(const Geometry& geo, const Eigen::VectorXd& x) {
  Mat S = Mat::Zero(geo.m2, geo.m2);
  for (int j = 0; j < geo.d; ++j) S += x[j] * geo.basis[j];
  return S;
}

Eigen::VectorXd S_to_coords(const Geometry& geo, const Mat& S) {
  Eigen::VectorXd x(geo.d);
  for (int j = 0; j < geo.d; ++j)
    x[j] = (geo.basis[j] * S).trace().real();
  return x;
}

double min_block_eig(const std::vector<Mat>& blocks) {
  double worst = std::numeric_limits<double>::infinity();
  for (const Mat& b : blocks) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (b + b.adjoint()),
                                          Eigen::EigenvaluesOnly);
    worst = std::min(worst, es.eigenvalues().minCoeff());
  }
  return worst;
}

bool all_pd(const std::vector<Mat>& blocks, double floor_eig = 0.0) {
  return min_block_eig(blocks) > floor_eig;
}

double log_det_sum(const std::vector<Mat>& blocks) {
  double acc = 0.0;
  for (const Mat& b : blocks) {
    Eigen::LLT<Mat> llt(0.5 * (b + b.adjoint()));
    if (llt.info() != Eigen::Success)
      return -std::numeric_limits<double>::infinity();
    acc += 2.0 * llt.matrixL().toDenseMatrix().diagonal().real().array().log().sum();
  }
  return acc;
}

}  // namespace

double restore_feasibility(const ModelHamiltonian& model, int N, Mat& S,
                           int max_sweeps) {
  (void)model;
  const int n = static_cast<int>(std::lround(
      0.5 * (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(S.rows())))));
  const Geometry geo = make_geometry(n, N);
  const double c = static_cast<double>(N) * (N - 1);
  const Mat ref = (c / geo.m2) * Mat::Identity(geo.m2, geo.m2);
  double worst = min_block_eig(blocks_of(geo, S));
  for (int sweep = 0; sweep < max_sweeps && worst <= 1e-10; ++sweep) {
    // PSD clip of S itself, trace renormalization, then a pull toward the
    // symmetric interior point until every block clears the floor.
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.adjoint()));
    Mat clipped = Mat::Zero(geo.m2, geo.m2);
    for (int i = 0; i < geo.m2; ++i) {
      const double lam = std::max(es.eigenvalues()[i], 0.0);
      if (lam > 0.0)
        clipped +=
            lam * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
    const double tr = clipped.trace().real();
    if (tr > 1e-14) clipped *= c / tr;
    const double beta = 1.0 / (1 << std::max(0, 10 - sweep));
    S = (1.0 - beta) * clipped + beta * ref;
    worst = min_block_eig(blocks_of(geo, S));
  }
  return worst;
}

RelaxResult relaxed_lower_bound(const ModelHamiltonian& model, int N,
                                const RelaxParams& params) {
  const int n = model.n;
  if (n > 6)
    throw std::invalid_argument("relaxed_lower_bound: n <= 6 supported");
  if (N < 2) throw std::invalid_argument("relaxed_lower_bound: N >= 2");
  const Geometry geo = make_geometry(n, N);
  const double c_eq = static_cast<double>(N) * (N - 1);

  // Affine structure of the blocks and the linear objective.
  const std::vector<Mat> b0 = blocks_of(geo, Mat::Zero(geo.m2, geo.m2));
  const int n_blocks = static_cast<int>(b0.size());
  std::vector<std::vector<Mat>> A(n_blocks);  // A[i][j] = dB_i/dx_j
  Eigen::VectorXd cost(geo.d), a_eq(geo.d);
  const double obj0 = 0.0;
  for (int j = 0; j < geo.d; ++j) {
    const std::vector<Mat> bj = blocks_of(geo, geo.basis[j]);
    for (int i = 0; i < n_blocks; ++i) {
      if (j == 0) A[i].resize(geo.d);
      A[i][j] = bj[i] - b0[i];
    }
    cost[j] = objective_of(geo, model, geo.basis[j]) - obj0;
    a_eq[j] = geo.basis[j].trace().real();
  }
  double nu = 0.0;  // total barrier parameter
  for (const Mat& b : b0) nu += static_cast<double>(b.rows());

  // Start: the maximally mixed sector-N pair, which is (c/m2) * identity in
  // the antisymmetric parametrization.
  Mat S = (c_eq / geo.m2) * Mat::Identity(geo.m2, geo.m2);
  if (!all_pd(blocks_of(geo, S), 1e-12)) {
    restore_feasibility(model, N, S);
    if (!all_pd(blocks_of(geo, S)))
      throw std::runtime_error(
          "relaxed_lower_bound: no strictly feasible start found");
  }
  Eigen::VectorXd x = S_to_coords(geo, S);

  RelaxResult res;
  double t = params.t0;
  int total_newton = 0;
  while (true) {
    // Newton centering for the current barrier parameter.
    for (int it = 0; it < params.max_newton; ++it) {
      const Mat Sx = coords_to_S(geo, x);
      const std::vector<Mat> blocks = blocks_of(geo, Sx);
      std::vector<Mat> inv(n_blocks);
      for (int i = 0; i < n_blocks; ++i)
        inv[i] = blocks[i].inverse();
      Eigen::VectorXd grad = t * cost;
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(geo.d, geo.d);
      for (int i = 0; i < n_blocks; ++i) {
        std::vector<Mat> ia(geo.d);
        for (int j = 0; j < geo.d; ++j) {
          ia[j] = inv[i] * A[i][j];
          grad[j] -= ia[j].trace().real();
        }
        for (int j = 0; j < geo.d; ++j)
          for (int k = j; k < geo.d; ++k) {
            const double hjk = (ia[j] * ia[k]).trace().real();
            hess(j, k) += hjk;
            if (k != j) hess(k, j) += hjk;
          }
      }
      // Equality-constrained Newton step (KKT system).
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(geo.d + 1, geo.d + 1);
      kkt.topLeftCorner(geo.d, geo.d) = hess;
      kkt.topRightCorner(geo.d, 1) = a_eq;
      kkt.bottomLeftCorner(1, geo.d) = a_eq.transpose();
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(geo.d + 1);
      rhs.head(geo.d) = -grad;
      const Eigen::VectorXd sol = kkt.ldlt().solve(rhs);
      const Eigen::VectorXd dx = sol.head(geo.d);
      const double decrement2 = dx.dot(hess * dx);
      ++total_newton;
      if (decrement2 < params.newton_tol) break;
      // Backtracking: stay strictly feasible, decrease the barrier value.
      const double phi0 = t * cost.dot(x) - log_det_sum(blocks);
      double step = 1.0;
      for (; step > 1e-14; step *= 0.5) {
        const Eigen::VectorXd xn = x + step * dx;
        const std::vector<Mat> bn = blocks_of(geo, coords_to_S(geo, xn));
        if (!all_pd(bn)) continue;
        const double phin = t * cost.dot(xn) - log_det_sum(bn);
        if (phin < phi0 - 1e-4 * step * decrement2 ||
            phin < phi0 - 1e-13 * std::abs(phi0)) {
          x = xn;
          break;
        }
      }
      if (step <= 1e-14) break;
    }
    if (nu / t <= params.gap_tol) {
      res.converged = true;
      break;
    }
    t *= params.t_factor;
    if (total_newton > 100000) break;
  }

  const Mat Sx = coords_to_S(geo, x);
  res.Gamma = geo.W * Sx * geo.W.adjoint();
  res.gamma = gamma_of(geo, Sx);
  res.energy = obj0 + cost.dot(x);
  res.gap_bound = nu / t;
  res.iterations = total_newton;
  const ConditionReport rep =
      run_conditions({res.gamma, res.Gamma, N}, 1e-7);
  res.feas_residual = std::max(
      {rep.adm.worst, -rep.p_min_eig, -rep.g_min_eig, -rep.q_min_eig, 0.0});
  return res;
}

}  // namespace rdmlab
