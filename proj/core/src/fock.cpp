#include "rdmlab/fock.hpp"

#include <bit>
#include <stdexcept>

namespace rdmlab {

#ifdef RDMLAB_TEST_HOOKS
namespace testhooks {
bool corrupt_creation_sign = false;
}
#endif

FockBasis::FockBasis(int n_modes) : n_(n_modes) {
  if (n_modes < 1 || n_modes > kMaxModes)
    throw std::invalid_argument("FockBasis: n_modes must be in [1, 14]");
  const std::uint32_t dim = 1u << n_modes;
  masks_.reserve(dim);
  index_.assign(dim, -1);
  sector_begin_.assign(n_modes + 2, 0);
  for (int N = 0; N <= n_modes; ++N) {
    sector_begin_[N] = static_cast<Eigen::Index>(masks_.size());
    for (std::uint32_t m = 0; m < dim; ++m)
      if (std::popcount(m) == N) {
        index_[m] = static_cast<Eigen::Index>(masks_.size());
        masks_.push_back(m);
      }
  }
  sector_begin_[n_modes + 1] = static_cast<Eigen::Index>(masks_.size());
}

int FockBasis::particles(Eigen::Index idx) const {
  return std::popcount(masks_[idx]);
}

BasisPtr build_basis(int n_modes) {
  return std::make_shared<const FockBasis>(n_modes);
}

FockOperator FockOperator::adjoint() const {
  return {SpMat(matrix.adjoint()), basis};
}

namespace {

void check_mode(int k, const BasisPtr& basis) {
  if (!basis) throw std::invalid_argument("null basis");
  if (k < 0 || k >= basis->n_modes())
    throw std::invalid_argument("mode index out of range");
}

// Fermionic phase for inserting mode k in front of the modes below it:
// (-1)^{#occupied modes < k}.
double jw_sign(std::uint32_t mask, int k) {
  const int crossings = std::popcount(mask & ((1u << k) - 1u));
#ifdef RDMLAB_TEST_HOOKS
  if (testhooks::corrupt_creation_sign) return 1.0;
#endif
  return (crossings & 1) ? -1.0 : 1.0;
}

}  // namespace

FockOperator creation(int k, const BasisPtr& basis) {
  check_mode(k, basis);
  const Eigen::Index dim = basis->dim();
  SpMat m(dim, dim);
  std::vector<Eigen::Triplet<cd>> trips;
  trips.reserve(dim / 2);
  const std::uint32_t bit = 1u << k;
  for (Eigen::Index col = 0; col < dim; ++col) {
    const std::uint32_t s = basis->mask(col);
    if (s & bit) continue;  // Pauli exclusion
    trips.emplace_back(basis->index_of(s | bit), col, cd(jw_sign(s, k), 0.0));
  }
  m.setFromTriplets(trips.begin(), trips.end());
  return {std::move(m), basis};
}

FockOperator annihilation(int k, const BasisPtr& basis) {
  return creation(k, basis).adjoint();
}

FockOperator creation_general(const Vec& f, const BasisPtr& basis) {
  if (f.size() != basis->n_modes())
    throw std::invalid_argument("coefficient vector length mismatch");
  const Eigen::Index dim = basis->dim();
  SpMat acc(dim, dim);
  for (int k = 0; k < basis->n_modes(); ++k) {
    if (f[k] == cd(0.0)) continue;
    acc += f[k] * creation(k, basis).matrix;
  }
  return {std::move(acc), basis};
}

FockOperator annihilation_general(const Vec& f, const BasisPtr& basis) {
  // f |-> c(f) is antilinear: c(f) = sum conj(f_k) c_k.
  return creation_general(f, basis).adjoint();
}

FockOperator number_operator(const BasisPtr& basis) {
  const Eigen::Index dim = basis->dim();
  SpMat m(dim, dim);
  std::vector<Eigen::Triplet<cd>> trips;
  trips.reserve(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    trips.emplace_back(i, i, cd(basis->particles(i), 0.0));
  m.setFromTriplets(trips.begin(), trips.end());
  return {std::move(m), basis};
}

FockOperator identity_operator(const BasisPtr& basis) {
  SpMat m(basis->dim(), basis->dim());
  m.setIdentity();
  return {std::move(m), basis};
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  return {SpMat(a.matrix * b.matrix), a.basis};
}
FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  return {SpMat(a.matrix + b.matrix), a.basis};
}
FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  return {SpMat(a.matrix - b.matrix), a.basis};
}
FockOperator operator*(cd scale, const FockOperator& a) {
  return {SpMat(scale * a.matrix), a.basis};
}

FockOperator anticommutator(const FockOperator& a, const FockOperator& b) {
  return {SpMat(a.matrix * b.matrix + b.matrix * a.matrix), a.basis};
}

FockOperator commutator(const FockOperator& a, const FockOperator& b) {
  return {SpMat(a.matrix * b.matrix - b.matrix * a.matrix), a.basis};
}

double max_abs(const SpMat& m) {
  double worst = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace rdmlab
