#include <doctest.h>

#include <Eigen/QR>

#include "rdmlab/rdm.hpp"

using namespace rdmlab;

namespace {

// Independent oracle: every RDM entry from a separate Fock-operator trace.
OneBodyRDM one_pdm_oracle(const DensityMatrix& rho) {
  const int n = rho.basis->n_modes();
  OneBodyRDM g(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      g(k, l) = expectation(
          rho, creation(l, rho.basis) * annihilation(k, rho.basis));
  return g;
}

TwoBodyRDM two_pdm_oracle(const DensityMatrix& rho) {
  const int n = rho.basis->n_modes();
  TwoBodyRDM G(n * n, n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m)
        for (int p = 0; p < n; ++p) {
          const FockOperator op = creation(p, rho.basis) *
                                  creation(m, rho.basis) *
                                  annihilation(k, rho.basis) *
                                  annihilation(l, rho.basis);
          G(pair_index(k, l, n), pair_index(m, p, n)) = expectation(rho, op);
        }
  return G;
}

}  // namespace

TEST_CASE("exchange operator swaps tensor factors") {
  const int n = 3;
  const Mat ex = exchange_operator(n);
  Rng rng(1, "exchange");
  Vec f(n), g(n);
  for (int i = 0; i < n; ++i) {
    f[i] = rng.cnormal();
    g[i] = rng.cnormal();
  }
  Vec fg = Vec::Zero(n * n), gf = Vec::Zero(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      fg[pair_index(i, j, n)] = f[i] * g[j];
      gf[pair_index(i, j, n)] = g[i] * f[j];
    }
  CHECK((ex * fg - gf).norm() < 1e-15);
  CHECK(max_abs(Mat(ex * ex - Mat::Identity(n * n, n * n))) == 0.0);
}

TEST_CASE("one_pdm matches the operator-trace oracle") {
  const BasisPtr b = build_basis(5);
  for (std::uint64_t seed : {1ull, 2ull}) {
    Rng rng(seed, "one_pdm_test");
    const DensityMatrix rho = random_mixed(b, 2, 3, rng);
    CHECK(max_abs(Mat(one_pdm(rho) - one_pdm_oracle(rho))) < 1e-13);
  }
}

TEST_CASE("two_pdm matches the operator-trace oracle") {
  const BasisPtr b = build_basis(4);
  Rng rng(7, "two_pdm_test");
  const DensityMatrix rho = random_mixed(b, 2, 2, rng);
  CHECK(max_abs(Mat(two_pdm(rho) - two_pdm_oracle(rho))) < 1e-13);
  const DensityMatrix rho3 =
      pure_state(random_pure(b, 3, rng));
  CHECK(max_abs(Mat(two_pdm(rho3) - two_pdm_oracle(rho3))) < 1e-13);
}

TEST_CASE("two_pdm traces and symmetries") {
  const BasisPtr b = build_basis(5);
  const int N = 3;
  Rng rng(9, "trace_test");
  const DensityMatrix rho = random_mixed(b, N, 3, rng);
  const OneBodyRDM gamma = one_pdm(rho);
  const TwoBodyRDM Gamma = two_pdm(rho);
  const int n = 5;
  const Mat ex = exchange_operator(n);
  CHECK(std::abs(gamma.trace() - cd(N, 0.0)) < 1e-12);
  CHECK(std::abs(Gamma.trace() - cd(N * (N - 1), 0.0)) < 1e-12);
  CHECK(max_abs(Mat(Gamma - Gamma.adjoint())) < 1e-13);
  CHECK(max_abs(Mat(ex * Gamma + Gamma)) < 1e-13);
  CHECK(max_abs(Mat(Gamma * ex + Gamma)) < 1e-13);
  // Contraction recovers gamma.
  CHECK(max_abs(Mat(contract_two_pdm(Gamma, N) - gamma)) < 1e-12);
}

TEST_CASE("Slater determinant has the Hartree-Fock two_pdm") {
  const BasisPtr b = build_basis(5);
  Rng rng(13, "slater_rdm");
  const int N = 2;
  Mat g(5, N);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < N; ++j) g(i, j) = rng.cnormal();
  const Mat q = Eigen::HouseholderQR<Mat>(g).householderQ() *
                Mat::Identity(5, N);
  std::vector<Vec> orbitals;
  for (int j = 0; j < N; ++j) orbitals.push_back(q.col(j));
  const DensityMatrix rho = pure_state(slater_state(orbitals, b));
  const OneBodyRDM gamma = one_pdm(rho);
  // gamma is the projection onto the occupied span.
  CHECK(max_abs(Mat(gamma - q * q.adjoint())) < 1e-12);
  CHECK(max_abs(Mat(two_pdm(rho) - hartree_fock_two_pdm(gamma))) < 1e-12);
  CHECK(max_abs(transposed_gamma_term(gamma, two_pdm(rho))) < 1e-12);
}

TEST_CASE("rdm pair JSON round-trips exactly") {
  const BasisPtr b = build_basis(4);
  Rng rng(17, "json_test");
  const DensityMatrix rho = random_mixed(b, 2, 2, rng);
  const OneBodyRDM gamma = one_pdm(rho);
  const TwoBodyRDM Gamma = two_pdm(rho);
  const auto j = rdm_pair_to_json(4, 2, gamma, Gamma);
  int n2 = 0, N2 = 0;
  OneBodyRDM g2;
  TwoBodyRDM G2;
  rdm_pair_from_json(j, n2, N2, g2, G2);
  CHECK(n2 == 4);
  CHECK(N2 == 2);
  CHECK(max_abs(Mat(gamma - g2)) == 0.0);
  CHECK(max_abs(Mat(Gamma - G2)) == 0.0);
  // Serialization is byte-stable.
  CHECK(j.dump() == rdm_pair_to_json(4, 2, g2, G2).dump());
}
