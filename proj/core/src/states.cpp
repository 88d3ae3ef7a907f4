#include "rdmlab/states.hpp"

#include <stdexcept>

namespace rdmlab {

int StateVector::sector(double tol) const {
  int found = -1;
  for (int N = 0; N <= basis->n_modes(); ++N) {
    const double norm2 = amplitudes
                             .segment(basis->sector_begin(N),
                                      basis->sector_size(N))
                             .squaredNorm();
    if (norm2 > tol * tol) {
      if (found >= 0) return -1;
      found = N;
    }
  }
  return found;
}

StateVector basis_state(std::uint32_t mask, const BasisPtr& basis) {
  Vec v = Vec::Zero(basis->dim());
  v[basis->index_of(mask)] = 1.0;
  return {std::move(v), basis};
}

StateVector slater_state(const std::vector<Vec>& orbitals,
                         const BasisPtr& basis) {
  const int N = static_cast<int>(orbitals.size());
  if (N > basis->n_modes())
    throw std::invalid_argument("slater_state: more orbitals than modes");
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j <= i; ++j) {
      const cd ip = orbitals[j].dot(orbitals[i]);  // <phi_j | phi_i>
      const double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - cd(target)) > 1e-12)
        throw std::invalid_argument(
            "slater_state: orbitals not orthonormal, <" + std::to_string(j) +
            "|" + std::to_string(i) + "> deviates by " +
            std::to_string(std::abs(ip - cd(target))));
    }
  }
  Vec v = Vec::Zero(basis->dim());
  v[0] = 1.0;  // vacuum
  for (int i = N - 1; i >= 0; --i)
    v = creation_general(orbitals[i], basis).matrix * v;
  return {std::move(v), basis};
}

DensityMatrix pure_state(const StateVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("pure_state: vector not normalized");
  if (psi.sector() < 0)
    throw std::invalid_argument(
        "pure_state: support spans multiple particle-number sectors");
  return {psi.amplitudes * psi.amplitudes.adjoint(), psi.basis, true};
}

StateVector random_pure(const BasisPtr& basis, int N, Rng& rng) {
  if (N < 0 || N > basis->n_modes())
    throw std::invalid_argument("random_pure: N out of range");
  Vec v = Vec::Zero(basis->dim());
  const Eigen::Index begin = basis->sector_begin(N);
  const Eigen::Index size = basis->sector_size(N);
  for (Eigen::Index i = 0; i < size; ++i) v[begin + i] = rng.cnormal();
  v /= v.norm();
  return {std::move(v), basis};
}

StateVector random_pure(const BasisPtr& basis, int N, std::uint64_t seed) {
  Rng rng(seed, "random_pure");
  return random_pure(basis, N, rng);
}

DensityMatrix random_mixed(const BasisPtr& basis, int N, int rank, Rng& rng) {
  if (rank < 1 || rank > basis->sector_size(N))
    throw std::invalid_argument("random_mixed: rank out of range");
  const std::vector<double> w = rng.dirichlet_uniform(rank);
  Mat rho = Mat::Zero(basis->dim(), basis->dim());
  for (int r = 0; r < rank; ++r) {
    const StateVector psi = random_pure(basis, N, rng);
    rho += w[r] * (psi.amplitudes * psi.amplitudes.adjoint());
  }
  return {std::move(rho), basis, true};
}

DensityMatrix random_mixed(const BasisPtr& basis, int N, int rank,
                           std::uint64_t seed) {
  Rng rng(seed, "random_mixed");
  return random_mixed(basis, N, rank, rng);
}

DensityMatrix signed_trace_one(const BasisPtr& basis, int N, Rng& rng) {
  constexpr double eps = 0.25;
  const int full_rank = static_cast<int>(basis->sector_size(N));
  const DensityMatrix rho1 =
      pure_state(random_pure(basis, N, rng));
  const DensityMatrix rho2 = random_mixed(basis, N, full_rank, rng);
  DensityMatrix rho{(1.0 + eps) * rho1.matrix - eps * rho2.matrix, basis,
                    false};
  return rho;
}

DensityMatrix signed_trace_one(const BasisPtr& basis, int N,
                               std::uint64_t seed) {
  Rng rng(seed, "signed_trace_one");
  return signed_trace_one(basis, N, rng);
}

cd expectation(const DensityMatrix& rho, const SpMat& A) {
  if (A.rows() != rho.matrix.rows())
    throw std::invalid_argument("expectation: dimension mismatch");
  // tr(rho A) = sum_{ij} A_{ij} rho_{ji}
  cd acc = 0.0;
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMat::InnerIterator it(A, k); it; ++it)
      acc += it.value() * rho.matrix(it.col(), it.row());
  return acc;
}

cd expectation(const DensityMatrix& rho, const FockOperator& A) {
  return expectation(rho, A.matrix);
}

}  // namespace rdmlab
