#pragma once

#include <json.hpp>
#include <string>

#include "rdmlab/conditions.hpp"

namespace rdmlab {

/// Second-quantized model on n modes:
///   H-hat = sum h_{kl} c*_k c_l + (1/2) sum V_{kl;mn} c*_l c*_k c_m c_n,
/// with V stored as the n^2 x n^2 operator matrix V[(k,l),(m,n)] on
/// h (x) h. The 1/2 makes <H-hat>_rho = tr(h gamma) + (1/2) tr(V Gamma)
/// hold exactly for the 2-pdm convention used here.
struct ModelHamiltonian {
  int n = 0;
  Mat h;  // n x n Hermitian
  Mat V;  // n^2 x n^2 Hermitian
  std::string name;
};

/// JSON schema: {n, h: [[...]], V: [{k,l,m,n,re,im}...]} with h given as
/// row-major [re, im] pairs and V as a sparse entry list (0-based indices).
nlohmann::ordered_json model_to_json(const ModelHamiltonian& model);
ModelHamiltonian model_from_json(const nlohmann::ordered_json& j);
ModelHamiltonian load_model(const std::string& path);
void save_model(const ModelHamiltonian& model, const std::string& path);

FockOperator assemble_hamiltonian(const ModelHamiltonian& model,
                                  const BasisPtr& basis);

/// tr(h gamma) + (1/2) tr(V Gamma); asserts the imaginary residue < 1e-10.
double energy_functional(const OneBodyRDM& gamma, const TwoBodyRDM& Gamma,
                         const ModelHamiltonian& model);

/// Hartree-Fock energy of a bare one-body matrix:
/// E(gamma) = tr(h gamma) + (1/2) tr{V (1-Ex)(gamma (x) gamma)}.
double hf_energy(const OneBodyRDM& gamma, const ModelHamiltonian& model);

/// Hermitian gradient F with dE = tr(F dgamma) for the HF functional.
Mat hf_gradient(const OneBodyRDM& gamma, const ModelHamiltonian& model);

struct GroundStateResult {
  double energy = 0.0;
  StateVector state;
};

GroundStateResult exact_ground_state(const ModelHamiltonian& model, int N);

struct HartreeFockResult {
  double energy = 0.0;
  Mat gamma;
  double grad_norm = 0.0;  // projected-gradient stationarity measure
  int iterations = 0;
  bool converged = false;
};

/// Minimizes the HF functional over {0 <= gamma <= 1, tr gamma = N}:
/// damped SCF with a projected-gradient fallback, best over `restarts`
/// random starts plus the non-interacting (Aufbau) start.
HartreeFockResult hartree_fock(const ModelHamiltonian& model, int N,
                               int restarts, std::uint64_t seed);

/// Projection of a Hermitian matrix onto {0 <= gamma <= 1, tr gamma = N}
/// (eigenvalue projection onto the capped simplex).
Mat project_gamma(const Mat& g, int N);

// Shipped model library.
ModelHamiltonian model_noninteracting(int n);
ModelHamiltonian model_diagonal_repulsion(int n, double U);
ModelHamiltonian model_random_repulsive(int n, double strength,
                                        std::uint64_t seed);

struct EnergyReport {
  double e_gs = 0.0;
  double e_hf = 0.0;
  double e_relax = 0.0;
  double gap_hf = 0.0;      // e_hf - e_gs
  double gap_relax = 0.0;   // e_gs - e_relax
  double hf_grad_norm = 0.0;
  double relax_feas_residual = 0.0;
  double relax_gap_bound = 0.0;
  int hf_iterations = 0;
  int relax_iterations = 0;
  bool ordering_ok = false;  // e_relax <= e_gs + tol <= e_hf + 2 tol
};

nlohmann::ordered_json energy_report_to_json(const EnergyReport& r);

}  // namespace rdmlab
