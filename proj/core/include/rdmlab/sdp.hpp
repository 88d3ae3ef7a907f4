#pragma once

#include "rdmlab/energy.hpp"

namespace rdmlab {

struct RelaxParams {
  double gap_tol = 1e-9;      // target duality-gap bound m/t
  double newton_tol = 1e-11;  // squared Newton decrement
  int max_newton = 200;
  double t0 = 1.0;
  double t_factor = 10.0;
};

struct RelaxResult {
  double energy = 0.0;
  OneBodyRDM gamma;
  TwoBodyRDM Gamma;          // certificate pair
  double feas_residual = 0.0;  // worst constraint violation of the pair
  double gap_bound = 0.0;      // certified distance to the relaxation optimum
  int iterations = 0;          // total Newton steps
  bool converged = false;
};

/// Lower bound on the sector-N ground-state energy: minimizes the energy
/// functional over the convex set
///   {Gamma Hermitian, Ex-antisymmetric, tr Gamma = N(N-1),
///    gamma = contraction/(N-1), Gamma >= 0 (P), G-matrix >= 0,
///    Q-matrix >= 0, 0 <= gamma <= 1}
/// by a log-det barrier Newton method on the antisymmetric-subspace
/// parametrization Gamma = W S W*. Every N-representable pair is feasible,
/// so the optimum is <= E_gs.
RelaxResult relaxed_lower_bound(const ModelHamiltonian& model, int N,
                                const RelaxParams& params = {});

/// Alternating-projection feasibility restoration in S-space (projects the
/// P/Q/G blocks to the PSD cone and re-imposes the linear constraints).
/// Used to repair a start point if the analytic one is not strictly
/// feasible; returns the worst block eigenvalue reached.
double restore_feasibility(const ModelHamiltonian& model, int N, Mat& S,
                           int max_sweeps = 200);

}  // namespace rdmlab
