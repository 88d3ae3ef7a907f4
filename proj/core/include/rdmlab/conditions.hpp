#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "rdmlab/rdm.hpp"

namespace rdmlab {

struct AdmissiblePair {
  OneBodyRDM gamma;
  TwoBodyRDM Gamma;
  int N = 0;
};

AdmissiblePair make_pair(const DensityMatrix& rho, int N);

struct AdmissibilityReport {
  double gamma_min_eig = 0.0;     // must be >= -tol
  double gamma_max_excess = 0.0;  // max eig of gamma minus 1, must be <= tol
  double trace_dev = 0.0;         // |tr gamma - N|
  double antisym_dev = 0.0;       // max |(Ex Gamma + Gamma)|, |(Gamma Ex + Gamma)|
  double hermiticity_dev = 0.0;
  double worst = 0.0;             // largest violation among the clauses
  bool pass = false;
};

AdmissibilityReport check_admissible(const AdmissiblePair& pair, double tol);

struct ConditionReport {
  AdmissibilityReport adm;
  double p_min_eig = 0.0;
  double g_min_eig = 0.0;
  double q_min_eig = 0.0;       // on the antisymmetric subspace (primary)
  double q_min_eig_full = 0.0;  // informational
  double tol = 1e-9;
  bool pass = false;
};

/// Serializes exactly the documented fields:
/// {admissible, p_min_eig, g_min_eig, q_min_eig, tol, pass}.
nlohmann::ordered_json condition_report_to_json(const ConditionReport& r);

double p_condition(const TwoBodyRDM& Gamma);

/// Hermitian n^2 x n^2 matrix M_G of the quadratic form
///   A -> tr{(A* (x) A)(Gamma + Ex(gamma (x) 1))} - |tr(A gamma)|^2
/// on the operator basis E_{kl}; the G-Condition holds iff M_G >= 0.
Mat g_condition_matrix(const OneBodyRDM& gamma, const TwoBodyRDM& Gamma);

/// Direct evaluation of the G-form on a concrete operator A (cross-check).
double g_form_direct(const OneBodyRDM& gamma, const TwoBodyRDM& Gamma,
                     const Mat& A);

struct QConditionResult {
  Mat matrix;  // Gamma + (1-Ex)(1(x)1 - gamma(x)1 - 1(x)gamma)
  double min_eig_antisym = 0.0;
  double min_eig_full = 0.0;
};

QConditionResult q_condition_matrix(const OneBodyRDM& gamma,
                                    const TwoBodyRDM& Gamma);

/// Isometry n^2 x m2 whose columns are (e_k (x) e_l - e_l (x) e_k)/sqrt(2),
/// k < l; m2 = n(n-1)/2.
Mat antisym_isometry(int n);

/// Weaker symmetrized variant of the G-form:
///   tr{(A* (x) A)(Gamma + (1/2)Ex(1(x)gamma + gamma(x)1))} - |tr(A gamma)|^2
/// evaluated on the E_{kl} basis plus `samples` random A; returns the minimum.
double symmetrized_g_check(const OneBodyRDM& gamma, const TwoBodyRDM& Gamma,
                           int samples, Rng& rng);

ConditionReport run_conditions(const AdmissiblePair& pair, double tol);

/// General polynomial of degree <= 2 in the creation/annihilation operators:
///   P = nu + sum_k alpha1_k c*_k + sum_k beta1_k c_k
///       + sum_{kl} alpha2_{kl} c*_k c*_l + sum_{kl} beta2_{kl} c_k c_l
///       + sum_{kl} kappa_{kl} c*_k c_l + sum_{kl} eta_{kl} c_k c*_l.
struct Polynomial2 {
  cd nu = 0.0;
  Vec alpha1, beta1;
  Mat alpha2, beta2, kappa, eta;

  static Polynomial2 zero(int n);
};

Polynomial2 random_polynomial(int n, Rng& rng);

FockOperator polynomial_operator(const Polynomial2& P, const BasisPtr& basis);

/// tr(rho P*P); the imaginary residue must vanish for Hermitian rho.
double polynomial_expectation(const DensityMatrix& rho, const Polynomial2& P);

/// Particle-number-sector split of P: the Delta-N = 0 part (constant folded
/// in), the Delta-N = +-1 linear part, and the Delta-N = +2 / -2 quadratics.
/// For [N-hat, rho] = 0 the four sector expectations sum to tr(rho P*P).
struct SectorDecomposition {
  double total = 0.0;
  double part_linear = 0.0;  // alpha1/beta1 sector
  double part_alpha = 0.0;   // c* c* sector
  double part_beta = 0.0;    // c c sector
  double part_theta = 0.0;   // particle-conserving sector incl. constant
  double residual = 0.0;     // |total - sum of parts|
};

SectorDecomposition polynomial_sector_decomposition(const DensityMatrix& rho,
                                                    const Polynomial2& P);

/// Dual-verdict equivalence check: verdict (ii) from the condition
/// matrices, verdict (i) from explicit witness polynomials (built from the
/// minimizing eigenvectors of gamma, 1-gamma, Gamma, M_Q, M_G) plus
/// `random_polys` random degree-2 polynomials.
struct DualVerdict {
  ConditionReport cond;
  double worst_matrix_eig = 0.0;  // min over the five certified eigenvalues
  double worst_poly_value = 0.0;  // min of tr(rho P*P) over all sampled P
  std::string worst_poly_kind;
  bool verdict_conditions = false;
  bool verdict_polynomials = false;
  bool consistent = false;
};

DualVerdict theorem_equivalence_check(const DensityMatrix& rho, int N,
                                      int random_polys, double fail_threshold,
                                      Rng& rng);

}  // namespace rdmlab
