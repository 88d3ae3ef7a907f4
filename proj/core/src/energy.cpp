#include "rdmlab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace rdmlab {

namespace {

Mat herm(const Mat& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

nlohmann::ordered_json model_to_json(const ModelHamiltonian& model) {
  nlohmann::ordered_json j;
  j["n"] = model.n;
  if (!model.name.empty()) j["name"] = model.name;
  nlohmann::ordered_json h = nlohmann::ordered_json::array();
  for (int k = 0; k < model.n; ++k)
    for (int l = 0; l < model.n; ++l)
      h.push_back({model.h(k, l).real(), model.h(k, l).imag()});
  j["h"] = h;
  nlohmann::ordered_json v = nlohmann::ordered_json::array();
  for (int k = 0; k < model.n; ++k)
    for (int l = 0; l < model.n; ++l)
      for (int m = 0; m < model.n; ++m)
        for (int nn = 0; nn < model.n; ++nn) {
          const cd val = model.V(pair_index(k, l, model.n),
                                 pair_index(m, nn, model.n));
          if (val == cd(0.0)) continue;
          nlohmann::ordered_json entry;
          entry["k"] = k;
          entry["l"] = l;
          entry["m"] = m;
          entry["n"] = nn;
          entry["re"] = val.real();
          entry["im"] = val.imag();
          v.push_back(entry);
        }
  j["V"] = v;
  return j;
}

ModelHamiltonian model_from_json(const nlohmann::ordered_json& j) {
  ModelHamiltonian model;
  model.n = j.at("n").get<int>();
  if (j.contains("name")) model.name = j.at("name").get<std::string>();
  const auto& h = j.at("h");
  if (static_cast<int>(h.size()) != model.n * model.n)
    throw std::invalid_argument("model h entry count mismatch");
  model.h = Mat(model.n, model.n);
  int idx = 0;
  for (int k = 0; k < model.n; ++k)
    for (int l = 0; l < model.n; ++l, ++idx)
      model.h(k, l) = cd(h[idx][0].get<double>(), h[idx][1].get<double>());
  model.V = Mat::Zero(model.n * model.n, model.n * model.n);
  for (const auto& entry : j.at("V")) {
    const int k = entry.at("k").get<int>();
    const int l = entry.at("l").get<int>();
    const int m = entry.at("m").get<int>();
    const int nn = entry.at("n").get<int>();
    model.V(pair_index(k, l, model.n), pair_index(m, nn, model.n)) =
        cd(entry.at("re").get<double>(), entry.at("im").get<double>());
  }
  if (max_abs(Mat(model.h - model.h.adjoint())) > 1e-12 ||
      max_abs(Mat(model.V - model.V.adjoint())) > 1e-12)
    throw std::invalid_argument("model is not Hermitian");
  return model;
}

ModelHamiltonian load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  nlohmann::ordered_json j;
  in >> j;
  return model_from_json(j);
}

void save_model(const ModelHamiltonian& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << model_to_json(model).dump(2) << "\n";
}

FockOperator assemble_hamiltonian(const ModelHamiltonian& model,
                                  const BasisPtr& basis) {
  const int n = model.n;
  if (n != basis->n_modes())
    throw std::invalid_argument("assemble_hamiltonian: mode count mismatch");
  const Eigen::Index dim = basis->dim();
  std::vector<SpMat> cr(n), an(n);
  for (int k = 0; k < n; ++k) {
    cr[k] = creation(k, basis).matrix;
    an[k] = SpMat(cr[k].adjoint());
  }
  SpMat H(dim, dim);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      if (model.h(k, l) != cd(0.0)) H += model.h(k, l) * SpMat(cr[k] * an[l]);
  // (1/2) sum V_{kl;mn} c*_l c*_k c_m c_n -- the 1/2 makes <H> equal the
  // energy functional for the 2-pdm convention used here.
  std::vector<SpMat> crcr(static_cast<std::size_t>(n) * n);
  std::vector<SpMat> anan(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      crcr[a * n + b] = SpMat(cr[a] * cr[b]);
      anan[a * n + b] = SpMat(an[a] * an[b]);
    }
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m)
        for (int nn = 0; nn < n; ++nn) {
          const cd v = model.V(pair_index(k, l, n), pair_index(m, nn, n));
          if (v == cd(0.0)) continue;
          H += (0.5 * v) * SpMat(crcr[l * n + k] * anan[m * n + nn]);
        }
  return {std::move(H), basis};
}

double energy_functional(const OneBodyRDM& gamma, const TwoBodyRDM& Gamma,
                         const ModelHamiltonian& model) {
  const cd e = (model.h * gamma).trace() + 0.5 * (model.V * Gamma).trace();
  if (std::abs(e.imag()) > 1e-10)
    throw std::runtime_error("energy_functional: imaginary residue " +
                             std::to_string(e.imag()));
  return e.real();
}

double hf_energy(const OneBodyRDM& gamma, const ModelHamiltonian& model) {
  return energy_functional(gamma, hartree_fock_two_pdm(gamma), model);
}

Mat hf_gradient(const OneBodyRDM& gamma, const ModelHamiltonian& model) {
  const int n = model.n;
  const Mat M = 0.5 * (model.V - model.V * exchange_operator(n));
  Mat f1 = Mat::Zero(n, n), f2 = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m) {
      cd acc = 0.0;
      for (int l = 0; l < n; ++l)
        for (int nn = 0; nn < n; ++nn)
          acc += M(pair_index(k, l, n), pair_index(m, nn, n)) * gamma(nn, l);
      f1(k, m) = acc;
    }
  for (int l = 0; l < n; ++l)
    for (int nn = 0; nn < n; ++nn) {
      cd acc = 0.0;
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
          acc += M(pair_index(k, l, n), pair_index(m, nn, n)) * gamma(m, k);
      f2(l, nn) = acc;
    }
  return herm(model.h + f1 + f2);
}

GroundStateResult exact_ground_state(const ModelHamiltonian& model, int N) {
  const BasisPtr basis = build_basis(model.n);
  if (basis->sector_size(N) > 4000)
    throw std::invalid_argument("exact_ground_state: sector too large");
  const FockOperator H = assemble_hamiltonian(model, basis);
  const Eigen::Index begin = basis->sector_begin(N);
  const Eigen::Index size = basis->sector_size(N);
  const Mat block = Mat(H.matrix).block(begin, begin, size, size);
  Eigen::SelfAdjointEigenSolver<Mat> es(herm(block));
  GroundStateResult r;
  r.energy = es.eigenvalues()[0];
  Vec full = Vec::Zero(basis->dim());
  full.segment(begin, size) = es.eigenvectors().col(0);
  r.state = {std::move(full), basis};
  return r;
}

Mat project_gamma(const Mat& g, int N) {
  const int n = static_cast<int>(g.rows());
  Eigen::SelfAdjointEigenSolver<Mat> es(herm(g));
  const RVec mu = es.eigenvalues();
  auto occ_sum = [&](double sigma) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      s += std::clamp(mu[i] - sigma, 0.0, 1.0);
    return s;
  };
  double lo = mu.minCoeff() - 1.0, hi = mu.maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (occ_sum(mid) > static_cast<double>(N) ? lo : hi) = mid;
  }
  const double sigma = 0.5 * (lo + hi);
  Mat out = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double lam = std::clamp(mu[i] - sigma, 0.0, 1.0);
    if (lam > 0.0)
      out += lam * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  // Exact trace repair of the bisection residue on the interior eigenvalues.
  const double dev = out.trace().real() - N;
  if (std::abs(dev) > 1e-13) {
    for (int i = 0; i < n; ++i) {
      const double lam = std::clamp(mu[i] - sigma, 0.0, 1.0);
      if (lam > 1e-9 && lam < 1.0 - 1e-9) {
        out -= dev * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
        break;
      }
    }
  }
  return out;
}

namespace {

Mat aufbau_projection(const Mat& f, int N) {
  Eigen::SelfAdjointEigenSolver<Mat> es(herm(f));
  const int n = static_cast<int>(f.rows());
  Mat g = Mat::Zero(n, n);
  for (int i = 0; i < N; ++i)
    g += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  return g;
}

struct LocalMin {
  Mat gamma;
  double energy = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

LocalMin minimize_from(Mat gamma, const ModelHamiltonian& model, int N) {
  constexpr int kMaxIter = 600;
  constexpr double kGradTol = 1e-9;
  constexpr double kProbe = 1e-4;
  double energy = hf_energy(gamma, model);
  double step = 1.0;
  LocalMin r;
  int it = 0;
  for (; it < kMaxIter; ++it) {
    const Mat grad = hf_gradient(gamma, model);
    const Mat pg = (gamma - project_gamma(gamma - kProbe * grad, N)) / kProbe;
    r.grad_norm = pg.norm();
    if (r.grad_norm < kGradTol) {
      r.converged = true;
      break;
    }
    // Candidate 1: damped SCF (Aufbau on the current Fock matrix).
    bool moved = false;
    {
      const Mat target = aufbau_projection(grad, N);
      for (double alpha = 1.0; alpha > 1e-4; alpha *= 0.5) {
        const Mat cand = (1.0 - alpha) * gamma + alpha * target;
        const double e = hf_energy(cand, model);
        if (e < energy - 1e-14) {
          gamma = cand;
          energy = e;
          moved = true;
          break;
        }
      }
    }
    // Candidate 2: projected gradient with backtracking.
    if (!moved) {
      for (; step > 1e-12; step *= 0.5) {
        const Mat cand = project_gamma(gamma - step * grad, N);
        const double e = hf_energy(cand, model);
        if (e < energy - 1e-15) {
          gamma = cand;
          energy = e;
          moved = true;
          step *= 2.0;
          break;
        }
      }
    }
    if (!moved) break;  // numerically stationary
  }
  r.gamma = gamma;
  r.energy = energy;
  r.iterations = it;
  if (!r.converged) {
    const Mat grad = hf_gradient(gamma, model);
    const Mat pg = (gamma - project_gamma(gamma - kProbe * grad, N)) / kProbe;
    r.grad_norm = pg.norm();
    r.converged = r.grad_norm < 1e-6;
  }
  return r;
}

}  // namespace

HartreeFockResult hartree_fock(const ModelHamiltonian& model, int N,
                               int restarts, std::uint64_t seed) {
  const int n = model.n;
  if (N > n) throw std::invalid_argument("hartree_fock: N > n");
  std::vector<Mat> starts;
  starts.push_back(aufbau_projection(model.h, N));
  Rng rng(seed, "hartree_fock");
  for (int r = 0; r < restarts; ++r) {
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = rng.cnormal();
    starts.push_back(project_gamma(herm(g), N));
  }
  HartreeFockResult best;
  best.energy = std::numeric_limits<double>::infinity();
  for (const Mat& s : starts) {
    const LocalMin m = minimize_from(s, model, N);
    best.iterations += m.iterations;
    if (m.energy < best.energy) {
      best.energy = m.energy;
      best.gamma = m.gamma;
      best.grad_norm = m.grad_norm;
      best.converged = m.converged;
    }
  }
  return best;
}

ModelHamiltonian model_noninteracting(int n) {
  ModelHamiltonian m;
  m.n = n;
  m.name = "noninteracting";
  m.h = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) m.h(k, k) = cd(k - 2, 0.0);
  m.V = Mat::Zero(n * n, n * n);
  return m;
}

ModelHamiltonian model_diagonal_repulsion(int n, double U) {
  ModelHamiltonian m = model_noninteracting(n);
  m.name = "diagonal_repulsion";
  // V[(k,l),(k,l)] = U for k != l realizes U * sum_{k<l} n_k n_l.
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      if (k != l) m.V(pair_index(k, l, n), pair_index(k, l, n)) = U;
  return m;
}

ModelHamiltonian model_random_repulsive(int n, double strength,
                                        std::uint64_t seed) {
  Rng rng(seed, "model_random_repulsive");
  ModelHamiltonian m;
  m.n = n;
  m.name = "random_repulsive";
  Mat h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = rng.cnormal();
  m.h = herm(h);
  Mat r(n * n, n * n);
  for (int i = 0; i < n * n; ++i)
    for (int j = 0; j < n * n; ++j) r(i, j) = rng.cnormal();
  Mat v = r * r.adjoint();
  // PSD on h (x) h, hence a repulsive (positive) interaction operator.
  m.V = strength * v / v.selfadjointView<Eigen::Lower>().operatorNorm();
  return m;
}

nlohmann::ordered_json energy_report_to_json(const EnergyReport& r) {
  nlohmann::ordered_json j;
  j["e_gs"] = r.e_gs;
  j["e_hf"] = r.e_hf;
  j["e_relax"] = r.e_relax;
  j["gaps"] = {{"hf", r.gap_hf}, {"relax", r.gap_relax}};
  j["residuals"] = {{"hf_grad_norm", r.hf_grad_norm},
                    {"relax_feasibility", r.relax_feas_residual},
                    {"relax_gap_bound", r.relax_gap_bound}};
  j["iterations"] = {{"hf", r.hf_iterations}, {"relax", r.relax_iterations}};
  return j;
}

}  // namespace rdmlab
