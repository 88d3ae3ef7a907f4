#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cstdio>
#include <fstream>

#include "rdmlab/energy.hpp"
#include "rdmlab/sdp.hpp"

using namespace rdmlab;

TEST_CASE("energy functional agrees with the assembled Hamiltonian") {
  const BasisPtr b = build_basis(4);
  Rng rng(1, "energy_dual");
  const ModelHamiltonian model = model_random_repulsive(4, 1.0, 3);
  const FockOperator H = assemble_hamiltonian(model, b);
  CHECK(max_abs(SpMat(H.matrix - H.adjoint().matrix)) < 1e-12);
  for (int t = 0; t < 4; ++t) {
    const DensityMatrix rho = (t % 2 == 0)
                                  ? pure_state(random_pure(b, 2, rng))
                                  : random_mixed(b, 3, 2, rng);
    const double via_rdm =
        energy_functional(one_pdm(rho), two_pdm(rho), model);
    const double via_fock = std::real(expectation(rho, H));
    CHECK(std::abs(via_rdm - via_fock) < 1e-11);
  }
}

TEST_CASE("noninteracting and diagonal-repulsion ground states are known") {
  // h = diag(-2, -1, 0, 1); two particles fill the lowest two levels.
  const GroundStateResult g0 = exact_ground_state(model_noninteracting(4), 2);
  CHECK(g0.energy == doctest::Approx(-3.0).epsilon(1e-12));
  // Adding U = 1 on every occupied pair shifts each two-particle basis
  // state by exactly U; the minimizer is unchanged.
  const GroundStateResult g1 =
      exact_ground_state(model_diagonal_repulsion(4, 1.0), 2);
  CHECK(g1.energy == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("exact ground state is variational") {
  const BasisPtr b = build_basis(4);
  Rng rng(2, "variational");
  const ModelHamiltonian model = model_random_repulsive(4, 1.5, 5);
  const GroundStateResult gs = exact_ground_state(model, 2);
  const FockOperator H = assemble_hamiltonian(model, b);
  for (int t = 0; t < 6; ++t) {
    const DensityMatrix rho = random_mixed(b, 2, 2, rng);
    CHECK(std::real(expectation(rho, H)) >= gs.energy - 1e-10);
  }
  CHECK(std::abs(std::real(expectation(pure_state(gs.state), H)) -
                 gs.energy) < 1e-10);
}

TEST_CASE("hf_gradient matches finite differences") {
  Rng rng(3, "fd_grad");
  const ModelHamiltonian model = model_random_repulsive(4, 1.0, 9);
  Mat gamma = Mat::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gamma(i, j) = 0.1 * rng.cnormal();
  gamma = Mat(0.5 * (gamma + gamma.adjoint())) + 0.5 * Mat::Identity(4, 4);
  const Mat grad = hf_gradient(gamma, model);
  CHECK(max_abs(Mat(grad - grad.adjoint())) < 1e-12);
  const double eps = 1e-6;
  for (int t = 0; t < 5; ++t) {
    Mat dir = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) dir(i, j) = rng.cnormal();
    dir = Mat(0.5 * (dir + dir.adjoint()));
    const double fd = (hf_energy(gamma + eps * dir, model) -
                       hf_energy(gamma - eps * dir, model)) /
                      (2.0 * eps);
    const double analytic = std::real((grad * dir).trace());
    CHECK(std::abs(fd - analytic) < 1e-6);
  }
}

TEST_CASE("project_gamma lands on the capped simplex") {
  Rng rng(4, "proj");
  for (int t = 0; t < 5; ++t) {
    Mat g(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) g(i, j) = rng.cnormal();
    g = Mat(0.5 * (g + g.adjoint()));
    const Mat p = project_gamma(g, 3);
    Eigen::SelfAdjointEigenSolver<Mat> es(p);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-12);
    CHECK(std::abs(std::real(p.trace()) - 3.0) < 1e-10);
    // Projection is idempotent.
    CHECK(max_abs(Mat(project_gamma(p, 3) - p)) < 1e-10);
  }
}

TEST_CASE("Hartree-Fock upper-bounds the ground state for repulsive V") {
  for (std::uint64_t s : {3ull, 5ull}) {
    const ModelHamiltonian model = model_random_repulsive(4, 1.0, s);
    const GroundStateResult gs = exact_ground_state(model, 2);
    const HartreeFockResult hf = hartree_fock(model, 2, 4, 1);
    CHECK(hf.converged);
    CHECK(hf.energy >= gs.energy - 1e-9);
    CHECK(hf.grad_norm < 1e-6);
    // The HF energy is reproduced by the functional at the minimizer.
    CHECK(std::abs(hf_energy(hf.gamma, model) - hf.energy) < 1e-12);
  }
}

TEST_CASE("Hartree-Fock is exact without interaction") {
  const ModelHamiltonian model = model_noninteracting(5);
  const GroundStateResult gs = exact_ground_state(model, 2);
  const HartreeFockResult hf = hartree_fock(model, 2, 2, 1);
  CHECK(std::abs(hf.energy - gs.energy) < 1e-9);
}

TEST_CASE("relaxation certifies a lower bound") {
  const ModelHamiltonian model = model_diagonal_repulsion(4, 1.0);
  const RelaxResult r = relaxed_lower_bound(model, 2);
  CHECK(r.converged);
  CHECK(r.feas_residual <= 1e-7);
  const GroundStateResult gs = exact_ground_state(model, 2);
  CHECK(r.energy <= gs.energy + 1e-6);
  // Certificate pair evaluates to the reported energy.
  CHECK(std::abs(energy_functional(r.gamma, r.Gamma, model) - r.energy) <
        1e-8);
}

TEST_CASE("model JSON round-trips exactly") {
  const ModelHamiltonian model = model_random_repulsive(4, 1.0, 11);
  const auto j = model_to_json(model);
  const ModelHamiltonian back = model_from_json(j);
  CHECK(back.n == model.n);
  CHECK(max_abs(Mat(back.h - model.h)) == 0.0);
  CHECK(max_abs(Mat(back.V - model.V)) == 0.0);
  const std::string path = "test_model_roundtrip.json";
  save_model(model, path);
  const ModelHamiltonian loaded = load_model(path);
  CHECK(max_abs(Mat(loaded.V - model.V)) == 0.0);
  std::remove(path.c_str());
  CHECK_THROWS(load_model("no_such_model_file.json"));
}
