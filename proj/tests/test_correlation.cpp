#include <doctest.h>

#include <cmath>

#include "rdmlab/correlation.hpp"

using namespace rdmlab;

namespace {

// Independent oracle for tr{(X (x) X) Gamma} with X a projection onto the
// orthonormal frame {x_a}: the Fock-space expectation of
//   sum_{a,b} c*(x_b) c*(x_a) c(x_a) c(x_b).
double lhs_oracle(const DensityMatrix& rho, const Mat& X) {
  Eigen::SelfAdjointEigenSolver<Mat> es(X);
  const BasisPtr& b = rho.basis;
  cd acc = 0.0;
  for (int a = 0; a < X.rows(); ++a) {
    if (es.eigenvalues()[a] < 0.5) continue;
    for (int c = 0; c < X.rows(); ++c) {
      if (es.eigenvalues()[c] < 0.5) continue;
      const Vec xa = es.eigenvectors().col(a);
      const Vec xc = es.eigenvectors().col(c);
      const FockOperator op =
          creation_general(xc, b) * creation_general(xa, b) *
          annihilation_general(xa, b) * annihilation_general(xc, b);
      acc += expectation(rho, op);
    }
  }
  return acc.real();
}

DensityMatrix sample_state(const BasisPtr& b, int N, bool mixed, Rng& rng) {
  return mixed ? random_mixed(b, N, 2, rng)
               : pure_state(random_pure(b, N, rng));
}

}  // namespace

TEST_CASE("correlation_lhs matches the Fock-space oracle") {
  const BasisPtr b = build_basis(4);
  Rng rng(1, "lhs_oracle");
  for (int t = 0; t < 4; ++t) {
    const DensityMatrix rho = sample_state(b, 2, t % 2 == 1, rng);
    const Mat X = random_projection(4, 1 + t % 3, rng);
    const OneBodyRDM gamma = one_pdm(rho);
    const TwoBodyRDM Gamma = two_pdm(rho);
    // lhs uses Gamma^(T); the oracle covers the raw trace, so compare
    // through the Hartree-Fock subtraction.
    const double raw =
        std::real(trace2(X, X, Gamma));
    CHECK(std::abs(raw - lhs_oracle(rho, X)) < 1e-11);
    const double hf = std::real(trace2(X, X, hartree_fock_two_pdm(gamma)));
    CHECK(std::abs(correlation_lhs(X, gamma, Gamma) - (raw - hf)) < 1e-11);
  }
}

TEST_CASE("split_projections puts an exact 1/2 eigenvalue below") {
  Mat gamma = Mat::Zero(4, 4);
  gamma(0, 0) = 1.0;
  gamma(1, 1) = 0.5;
  gamma(2, 2) = 0.5;
  const ProjectionSplit s = split_projections(gamma);
  CHECK(std::abs(std::real(s.P.trace()) - 1.0) < 1e-14);
  CHECK(std::abs(std::real(s.Pperp.trace()) - 3.0) < 1e-14);
  CHECK(max_abs(Mat(s.P + s.Pperp - Mat::Identity(4, 4))) < 1e-14);
  CHECK(max_abs(Mat(s.P * s.P - s.P)) < 1e-14);
  CHECK(max_abs(Mat(s.P * gamma - gamma * s.P)) < 1e-14);
}

TEST_CASE("term table reconstructs the full trace") {
  const BasisPtr b = build_basis(6);
  Rng rng(2, "terms");
  for (int t = 0; t < 4; ++t) {
    const DensityMatrix rho = sample_state(b, 3, t % 2 == 1, rng);
    const OneBodyRDM gamma = one_pdm(rho);
    const TwoBodyRDM Gamma = two_pdm(rho);
    const Mat X = random_projection(6, 1 + t, rng);
    const TermTable tt = decompose(X, split_projections(gamma), Gamma);
    CHECK(tt.reconstruction_residual < 1e-10);
    CHECK(std::abs(tt.t_mp + tt.t_r + tt.t_met - tt.total) < 1e-10);
    CHECK(std::abs(tt.total - std::real(trace2(X, X, Gamma))) < 1e-10);
  }
}

TEST_CASE("key operator identity holds on random triples") {
  const BasisPtr b = build_basis(5);
  Rng rng(3, "hil");
  for (int t = 0; t < 6; ++t) {
    const DensityMatrix rho = sample_state(b, 2, t % 2 == 1, rng);
    const OneBodyRDM gamma = one_pdm(rho);
    const TwoBodyRDM Gamma = two_pdm(rho);
    const ProjectionSplit s = split_projections(gamma);
    const Mat Y = random_projection(5, 1 + t % 4, rng);
    const Mat Q =
        random_commuting_projection(s, 1 + static_cast<int>(rng.below(4)), rng);
    const auto sides = b_operator_identity(Y, Q, gamma, Gamma);
    CHECK(std::abs(sides.first - sides.second) < 1e-10);
  }
}

TEST_CASE("all slacks are nonnegative on genuine states") {
  const BasisPtr b = build_basis(6);
  Rng rng(4, "slacks");
  for (int t = 0; t < 6; ++t) {
    const int N = 2 + t % 3;
    const DensityMatrix rho = sample_state(b, N, t % 2 == 1, rng);
    const Mat X = random_projection(6, 1 + t % 6, rng);
    const CorrelationReport r =
        main_theorem_check(X, one_pdm(rho), two_pdm(rho));
    CHECK(r.pass);
    CHECK(r.worst_slack >= -1e-9);
    CHECK(r.slack_fundsatz >= -1e-9);
    CHECK(r.slack_tr >= -1e-9);
    CHECK(r.slack_tmet >= -1e-9);
    CHECK(r.slack_tmp >= -1e-9);
    CHECK(r.slack_thm44 >= -1e-9);
    CHECK(r.slack_thm51 >= -1e-9);
    CHECK(r.slack_combined >= -1e-9);
    // Pieces recombine: T_R = T_R1 + T_R2, lhs = T_MP + T_R + T_MET - hf.
    CHECK(std::abs(r.t_r - (r.t_r1 + r.t_r2)) < 1e-12);
    CHECK(std::abs(r.lhs - (r.t_mp + r.t_r + r.t_met - r.hf_term)) < 1e-9);
    // The combined estimate is at least as tight as the constant-10 form.
    CHECK(r.slack_thm51 - r.slack_combined >= -1e-12);
  }
}

TEST_CASE("Slater determinants are uncorrelated: lhs vanishes") {
  const BasisPtr b = build_basis(5);
  Rng rng(5, "slater_corr");
  Mat g(5, 2);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = rng.cnormal();
  const Mat q =
      Eigen::HouseholderQR<Mat>(g).householderQ() * Mat::Identity(5, 2);
  std::vector<Vec> orbitals{q.col(0), q.col(1)};
  const DensityMatrix rho = pure_state(slater_state(orbitals, b));
  const OneBodyRDM gamma = one_pdm(rho);
  const TwoBodyRDM Gamma = two_pdm(rho);
  const Mat X = random_projection(5, 2, rng);
  CHECK(std::abs(correlation_lhs(X, gamma, Gamma)) < 1e-11);
  // a^2 = tr X(gamma - gamma^2) = 0 for a projection gamma.
  const CorrelationReport r = main_theorem_check(X, gamma, Gamma);
  CHECK(r.a < 1e-6);
  CHECK(r.pass);
}

TEST_CASE("constant chain closes exactly at a*") {
  std::vector<double> grid;
  const double a_star = 1.0 / std::sqrt(94.0);
  for (int i = 1; i <= 1000; ++i) grid.push_back(a_star * i / 1000.0);
  const ConstantChainTable t = constant_chain(grid);
  CHECK(t.identity_error < 1e-12);
  CHECK(t.monotone);
  CHECK(t.sqrt94_below_10);
  CHECK(t.crossover_ok);
  CHECK(t.rows.size() == 1000);
  CHECK(combined_constant(0.0) == doctest::Approx(std::sqrt(32.0)));
}

TEST_CASE("threshold sweep reproduces sqrt(94) at t = 1/2") {
  const auto rows = threshold_sweep({0.3, 0.5, 0.7});
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].constant == doctest::Approx(std::sqrt(94.0)).epsilon(1e-9));
  // Any other threshold in the sweep does no better than 1/2 here.
  CHECK(rows[0].constant >= rows[1].constant - 1e-9);
  CHECK(rows[2].constant >= rows[1].constant - 1e-9);
  CHECK_THROWS(threshold_sweep({0.0}));
}
