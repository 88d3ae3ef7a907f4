#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "rdmlab/conditions.hpp"

using namespace rdmlab;

TEST_CASE("admissibility holds for genuine states") {
  const BasisPtr b = build_basis(5);
  Rng rng(1, "adm");
  for (int t = 0; t < 4; ++t) {
    const DensityMatrix rho = (t % 2 == 0)
                                  ? pure_state(random_pure(b, 2, rng))
                                  : random_mixed(b, 3, 3, rng);
    const int N = (t % 2 == 0) ? 2 : 3;
    const auto rep = check_admissible(make_pair(rho, N), 1e-9);
    CHECK(rep.pass);
    CHECK(rep.worst < 1e-11);
  }
}

TEST_CASE("P, G and Q conditions hold for genuine states") {
  const BasisPtr b = build_basis(5);
  Rng rng(2, "pgq");
  for (int t = 0; t < 6; ++t) {
    const int N = 2 + t % 2;
    const DensityMatrix rho = (t % 3 == 0)
                                  ? pure_state(random_pure(b, N, rng))
                                  : random_mixed(b, N, 2, rng);
    const ConditionReport rep = run_conditions(make_pair(rho, N), 1e-9);
    CHECK(rep.pass);
    CHECK(rep.p_min_eig >= -1e-11);
    CHECK(rep.g_min_eig >= -1e-11);
    CHECK(rep.q_min_eig >= -1e-11);
  }
}

TEST_CASE("g_condition_matrix represents the direct G-form") {
  const BasisPtr b = build_basis(4);
  Rng rng(3, "gform");
  const DensityMatrix rho = random_mixed(b, 2, 2, rng);
  const auto pair = make_pair(rho, 2);
  const Mat mg = g_condition_matrix(pair.gamma, pair.Gamma);
  const int n = 4;
  for (int s = 0; s < 10; ++s) {
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.cnormal();
    // Quadratic-form value of M_G on vec(A) vs. the Fock-space definition.
    Vec a(n * n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) a[pair_index(k, l, n)] = A(k, l);
    const double form = std::real((a.adjoint() * (mg * a))(0, 0));
    CHECK(std::abs(form - g_form_direct(pair.gamma, pair.Gamma, A)) < 1e-11);
  }
}

TEST_CASE("G-form vanishes identically on the identity operator") {
  const BasisPtr b = build_basis(5);
  Rng rng(4, "gid");
  const DensityMatrix rho = random_mixed(b, 3, 2, rng);
  const auto pair = make_pair(rho, 3);
  CHECK(std::abs(g_form_direct(pair.gamma, pair.Gamma,
                               Mat::Identity(5, 5))) < 1e-11);
}

TEST_CASE("Q-matrix eigenvalues: antisymmetric subspace vs full space") {
  const BasisPtr b = build_basis(4);
  Rng rng(5, "qsub");
  const DensityMatrix rho = random_mixed(b, 2, 3, rng);
  const auto pair = make_pair(rho, 2);
  const QConditionResult q = q_condition_matrix(pair.gamma, pair.Gamma);
  const Mat w = antisym_isometry(4);
  CHECK(max_abs(Mat(w.adjoint() * w - Mat::Identity(6, 6))) < 1e-14);
  Eigen::SelfAdjointEigenSolver<Mat> es(
      Mat(w.adjoint() * q.matrix * w));
  CHECK(std::abs(q.min_eig_antisym - es.eigenvalues().minCoeff()) < 1e-12);
  CHECK(q.min_eig_full <= q.min_eig_antisym + 1e-12);
  CHECK(q.min_eig_antisym >= -1e-11);
}

TEST_CASE("polynomial_expectation is nonnegative on states") {
  const BasisPtr b = build_basis(4);
  Rng rng(6, "polypos");
  const DensityMatrix rho = random_mixed(b, 2, 2, rng);
  for (int s = 0; s < 8; ++s) {
    const Polynomial2 P = random_polynomial(4, rng);
    CHECK(polynomial_expectation(rho, P) >= -1e-11);
  }
}

TEST_CASE("sector decomposition sums for particle-conserving states") {
  const BasisPtr b = build_basis(4);
  Rng rng(7, "sector");
  const DensityMatrix rho = random_mixed(b, 2, 3, rng);
  for (int s = 0; s < 5; ++s) {
    const Polynomial2 P = random_polynomial(4, rng);
    const SectorDecomposition d = polynomial_sector_decomposition(rho, P);
    CHECK(d.residual < 1e-10);
    CHECK(d.part_linear >= -1e-11);
    CHECK(d.part_alpha >= -1e-11);
    CHECK(d.part_beta >= -1e-11);
    CHECK(d.part_theta >= -1e-11);
  }
}

TEST_CASE("dual verdicts agree and genuine states never fail") {
  const BasisPtr b = build_basis(4);
  Rng rng(8, "dual");
  const DensityMatrix rho = random_mixed(b, 2, 2, rng);
  const DualVerdict v = theorem_equivalence_check(rho, 2, 50, 1e-6, rng);
  CHECK(v.consistent);
  CHECK(v.verdict_conditions);
  CHECK(v.verdict_polynomials);
}

TEST_CASE("dual verdicts catch a signed trace-one non-state together") {
  const BasisPtr b = build_basis(4);
  bool found = false;
  for (std::uint64_t s = 0; s < 20 && !found; ++s) {
    Rng rng(s, "dual_signed");
    const DensityMatrix rho = signed_trace_one(b, 2, rng);
    const DualVerdict v = theorem_equivalence_check(rho, 2, 100, 1e-6, rng);
    CHECK(v.consistent);
    if (!v.verdict_conditions) {
      CHECK_FALSE(v.verdict_polynomials);
      // The failing polynomial is an explicit witness:
      // tr(rho P*P) < 0 certifies non-positivity of rho itself.
      CHECK(v.worst_poly_value < -1e-6);
      found = true;
    }
  }
  CHECK(found);
}
