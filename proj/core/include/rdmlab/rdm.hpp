#pragma once

#include <json.hpp>
#include <vector>

#include "rdmlab/states.hpp"

namespace rdmlab {

// One-body RDM: n x n Hermitian, gamma_{kl} = tr(rho c*_l c_k).
// Two-body RDM: n^2 x n^2 Hermitian on h (x) h,
//   Gamma_{(k,l),(m,n)} = tr(rho c*_n c*_m c_k c_l),
// with the pair index (k,l) -> k*n + l (row-major, 0-based).
using OneBodyRDM = Mat;
using TwoBodyRDM = Mat;

inline Eigen::Index pair_index(int k, int l, int n) {
  return static_cast<Eigen::Index>(k) * n + l;
}

/// Ex (f (x) g) = g (x) f on h (x) h.
Mat exchange_operator(int n);

/// Read-only per-basis cache of the c_k and c_k c_l sparse products that
/// dominate RDM extraction. Built once, safe for concurrent use.
class RdmCache {
 public:
  explicit RdmCache(const BasisPtr& basis);

  const SpMat& c(int k) const { return c_[k]; }
  const SpMat& cc(int k, int l) const { return cc_[k * n_ + l]; }

  OneBodyRDM one_pdm(const DensityMatrix& rho) const;
  TwoBodyRDM two_pdm(const DensityMatrix& rho) const;

  const BasisPtr& basis() const { return basis_; }

 private:
  BasisPtr basis_;
  int n_;
  std::vector<SpMat> c_;
  std::vector<SpMat> cc_;
};

/// Shared cache for a basis (thread-safe registry).
const RdmCache& rdm_cache(const BasisPtr& basis);

OneBodyRDM one_pdm(const DensityMatrix& rho);
TwoBodyRDM two_pdm(const DensityMatrix& rho);

/// Lemma-type partial trace: gamma_{kl} = (1/(N-1)) sum_j Gamma_{(k,j),(l,j)}.
OneBodyRDM contract_two_pdm(const TwoBodyRDM& Gamma, int N);

/// (1 - Ex)(gamma (x) gamma).
TwoBodyRDM hartree_fock_two_pdm(const OneBodyRDM& gamma);

/// Gamma^(T) = Gamma - (1 - Ex)(gamma (x) gamma).
TwoBodyRDM transposed_gamma_term(const OneBodyRDM& gamma,
                                 const TwoBodyRDM& Gamma);

/// JSON schema: {n, N, gamma: [[re,im]...], Gamma: [[re,im]...]},
/// both matrices flattened row-major.
nlohmann::ordered_json rdm_pair_to_json(int n, int N, const OneBodyRDM& gamma,
                                        const TwoBodyRDM& Gamma);
void rdm_pair_from_json(const nlohmann::ordered_json& j, int& n, int& N,
                        OneBodyRDM& gamma, TwoBodyRDM& Gamma);

}  // namespace rdmlab
