#include "rdmlab/rdm.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace rdmlab {

Mat exchange_operator(int n) {
  Mat ex = Mat::Zero(n * n, n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      ex(pair_index(k, l, n), pair_index(l, k, n)) = 1.0;
  return ex;
}

RdmCache::RdmCache(const BasisPtr& basis)
    : basis_(basis), n_(basis->n_modes()) {
  c_.reserve(n_);
  for (int k = 0; k < n_; ++k) c_.push_back(annihilation(k, basis).matrix);
  cc_.resize(static_cast<std::size_t>(n_) * n_);
  for (int k = 0; k < n_; ++k)
    for (int l = 0; l < n_; ++l) cc_[k * n_ + l] = SpMat(c_[k] * c_[l]);
}

OneBodyRDM RdmCache::one_pdm(const DensityMatrix& rho) const {
  // gamma_{kl} = tr(rho c*_l c_k) = <c_l, c_k rho>_F
  OneBodyRDM gamma(n_, n_);
  std::vector<Mat> crho(n_);
  for (int k = 0; k < n_; ++k) crho[k] = c_[k] * rho.matrix;
  for (int k = 0; k < n_; ++k)
    for (int l = 0; l < n_; ++l) {
      cd acc = 0.0;
      for (int col = 0; col < c_[l].outerSize(); ++col)
        for (SpMat::InnerIterator it(c_[l], col); it; ++it)
          acc += std::conj(it.value()) * crho[k](it.row(), it.col());
      gamma(k, l) = acc;
    }
  return gamma;
}

TwoBodyRDM RdmCache::two_pdm(const DensityMatrix& rho) const {
  // Gamma_{(k,l),(m,n)} = tr(rho (c_m c_n)* c_k c_l) = <D_{mn}, D_{kl} rho>_F
  TwoBodyRDM Gamma = Mat::Zero(n_ * n_, n_ * n_);
  std::vector<Mat> y(static_cast<std::size_t>(n_) * n_);
  for (int k = 0; k < n_; ++k)
    for (int l = k + 1; l < n_; ++l)
      y[k * n_ + l] = cc_[k * n_ + l] * rho.matrix;
  for (int k = 0; k < n_; ++k)
    for (int l = k + 1; l < n_; ++l)
      for (int m = 0; m < n_; ++m)
        for (int nn = m + 1; nn < n_; ++nn) {
          const SpMat& d = cc_[m * n_ + nn];
          const Mat& ykl = y[k * n_ + l];
          cd acc = 0.0;
          for (int col = 0; col < d.outerSize(); ++col)
            for (SpMat::InnerIterator it(d, col); it; ++it)
              acc += std::conj(it.value()) * ykl(it.row(), it.col());
          // Fill the full antisymmetric index square from the k<l, m<n core.
          Gamma(pair_index(k, l, n_), pair_index(m, nn, n_)) = acc;
          Gamma(pair_index(l, k, n_), pair_index(m, nn, n_)) = -acc;
          Gamma(pair_index(k, l, n_), pair_index(nn, m, n_)) = -acc;
          Gamma(pair_index(l, k, n_), pair_index(nn, m, n_)) = acc;
        }
  return Gamma;
}

const RdmCache& rdm_cache(const BasisPtr& basis) {
  static std::mutex mu;
  static std::map<const FockBasis*, std::unique_ptr<RdmCache>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[basis.get()];
  if (!slot) slot = std::make_unique<RdmCache>(basis);
  return *slot;
}

OneBodyRDM one_pdm(const DensityMatrix& rho) {
  return rdm_cache(rho.basis).one_pdm(rho);
}

TwoBodyRDM two_pdm(const DensityMatrix& rho) {
  return rdm_cache(rho.basis).two_pdm(rho);
}

OneBodyRDM contract_two_pdm(const TwoBodyRDM& Gamma, int N) {
  if (N < 2)
    throw std::invalid_argument(
        "contract_two_pdm: contraction undefined for N < 2");
  const int n = static_cast<int>(std::lround(std::sqrt(
      static_cast<double>(Gamma.rows()))));
  OneBodyRDM gamma = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      cd acc = 0.0;
      for (int j = 0; j < n; ++j)
        acc += Gamma(pair_index(k, j, n), pair_index(l, j, n));
      gamma(k, l) = acc / static_cast<double>(N - 1);
    }
  return gamma;
}

TwoBodyRDM hartree_fock_two_pdm(const OneBodyRDM& gamma) {
  const int n = static_cast<int>(gamma.rows());
  const Mat gg = Eigen::kroneckerProduct(gamma, gamma);
  return gg - exchange_operator(n) * gg;
}

TwoBodyRDM transposed_gamma_term(const OneBodyRDM& gamma,
                                 const TwoBodyRDM& Gamma) {
  return Gamma - hartree_fock_two_pdm(gamma);
}

namespace {

nlohmann::ordered_json complex_matrix_to_json(const Mat& m) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return entries;
}

Mat complex_matrix_from_json(const nlohmann::ordered_json& entries,
                             Eigen::Index rows, Eigen::Index cols) {
  if (static_cast<Eigen::Index>(entries.size()) != rows * cols)
    throw std::invalid_argument("matrix entry count mismatch");
  Mat m(rows, cols);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j, ++idx)
      m(i, j) = cd(entries[idx][0].get<double>(),
                   entries[idx][1].get<double>());
  return m;
}

}  // namespace

nlohmann::ordered_json rdm_pair_to_json(int n, int N, const OneBodyRDM& gamma,
                                        const TwoBodyRDM& Gamma) {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["N"] = N;
  j["gamma"] = complex_matrix_to_json(gamma);
  j["Gamma"] = complex_matrix_to_json(Gamma);
  return j;
}

void rdm_pair_from_json(const nlohmann::ordered_json& j, int& n, int& N,
                        OneBodyRDM& gamma, TwoBodyRDM& Gamma) {
  n = j.at("n").get<int>();
  N = j.at("N").get<int>();
  gamma = complex_matrix_from_json(j.at("gamma"), n, n);
  Gamma = complex_matrix_from_json(j.at("Gamma"), n * n, n * n);
}

}  // namespace rdmlab
