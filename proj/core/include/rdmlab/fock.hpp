#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace rdmlab {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<cd>;

#ifdef RDMLAB_TEST_HOOKS
namespace testhooks {
// When set, creation() drops all fermionic phase factors. Exists only in
// the test build of the library; used to prove the CAR suite detects a
// broken sign convention.
extern bool corrupt_creation_sign;
}  // namespace testhooks
#endif

/// Occupation-number basis of the Fock space on n_modes modes.
///
/// Ordering is particle-number-major, bitmask-minor: all N=0 states first,
/// then N=1, ..., and within a sector ascending bitmask. The vacuum is
/// always index 0. Mode indices are 0-based throughout the library.
class FockBasis {
 public:
  explicit FockBasis(int n_modes);

  int n_modes() const { return n_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(masks_.size()); }
  std::uint32_t mask(Eigen::Index idx) const { return masks_[idx]; }
  Eigen::Index index_of(std::uint32_t mask) const { return index_[mask]; }
  int particles(Eigen::Index idx) const;
  Eigen::Index sector_begin(int N) const { return sector_begin_[N]; }
  Eigen::Index sector_size(int N) const {
    return sector_begin_[N + 1] - sector_begin_[N];
  }

  static constexpr int kMaxModes = 14;

 private:
  int n_;
  std::vector<std::uint32_t> masks_;
  std::vector<Eigen::Index> index_;
  std::vector<Eigen::Index> sector_begin_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

BasisPtr build_basis(int n_modes);

/// Operator on the Fock space, stored sparse (most CAR monomials have at
/// most one entry per column).
struct FockOperator {
  SpMat matrix;
  BasisPtr basis;

  FockOperator adjoint() const;
  Mat dense() const { return Mat(matrix); }
};

FockOperator creation(int k, const BasisPtr& basis);
FockOperator annihilation(int k, const BasisPtr& basis);
FockOperator creation_general(const Vec& f, const BasisPtr& basis);
FockOperator annihilation_general(const Vec& f, const BasisPtr& basis);
FockOperator number_operator(const BasisPtr& basis);
FockOperator identity_operator(const BasisPtr& basis);

FockOperator operator*(const FockOperator& a, const FockOperator& b);
FockOperator operator+(const FockOperator& a, const FockOperator& b);
FockOperator operator-(const FockOperator& a, const FockOperator& b);
FockOperator operator*(cd scale, const FockOperator& a);

/// {a, b} = ab + ba.
FockOperator anticommutator(const FockOperator& a, const FockOperator& b);
/// [a, b] = ab - ba.
FockOperator commutator(const FockOperator& a, const FockOperator& b);

double max_abs(const SpMat& m);
double max_abs(const Mat& m);

}  // namespace rdmlab
