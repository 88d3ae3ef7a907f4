#pragma once

#include <cstdint>
#include <vector>

#include "rdmlab/fock.hpp"
#include "rdmlab/rng.hpp"

namespace rdmlab {

struct StateVector {
  Vec amplitudes;
  BasisPtr basis;

  double norm() const { return amplitudes.norm(); }
  /// Particle number if supported on a single sector, -1 otherwise.
  int sector(double tol = 1e-12) const;
};

struct DensityMatrix {
  Mat matrix;
  BasisPtr basis;
  bool positive = false;  // genuine state vs. merely trace-one

  cd trace() const { return matrix.trace(); }
};

/// c*(phi_1)...c*(phi_N) applied to the vacuum; orbitals must be
/// orthonormal (checked to 1e-12).
StateVector slater_state(const std::vector<Vec>& orbitals,
                         const BasisPtr& basis);

StateVector basis_state(std::uint32_t mask, const BasisPtr& basis);

/// |psi><psi| for a normalized single-sector psi.
DensityMatrix pure_state(const StateVector& psi);

StateVector random_pure(const BasisPtr& basis, int N, Rng& rng);
StateVector random_pure(const BasisPtr& basis, int N, std::uint64_t seed);

/// Convex combination of `rank` random pure states on sector N with
/// Dirichlet(1,...,1) weights.
DensityMatrix random_mixed(const BasisPtr& basis, int N, int rank, Rng& rng);
DensityMatrix random_mixed(const BasisPtr& basis, int N, int rank,
                           std::uint64_t seed);

/// Hermitian, trace-one, sector-supported, but NOT positive:
/// rho = (1+eps) rho_1 - eps rho_2 with eps = 0.25, rho_1 pure and rho_2
/// full-rank mixed, which forces a negative eigenvalue whenever the sector
/// has dimension >= 2.
DensityMatrix signed_trace_one(const BasisPtr& basis, int N, Rng& rng);
DensityMatrix signed_trace_one(const BasisPtr& basis, int N,
                               std::uint64_t seed);

/// tr(rho A).
cd expectation(const DensityMatrix& rho, const FockOperator& A);
cd expectation(const DensityMatrix& rho, const SpMat& A);

}  // namespace rdmlab
