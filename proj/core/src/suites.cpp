#include "rdmlab/suites.hpp"

#include <algorithm>
#include <cmath>

#include "rdmlab/correlation.hpp"
#include "rdmlab/fdl.hpp"
#include "rdmlab/sdp.hpp"

namespace rdmlab {

namespace {

void note_failure(SuiteResult& res, bool ok, const std::string& name) {
  if (!ok && res.pass) {
    res.pass = false;
    res.failure = name;
  }
}

json car_row(const std::string& check, const std::string& anchor, double dev,
             double tol) {
  json row;
  row["suite"] = "car";
  row["check"] = check;
  row["anchor"] = anchor;
  row["max_dev"] = dev;
  row["tol"] = tol;
  row["pass"] = dev <= tol;
  return row;
}

}  // namespace

SuiteResult suite_car(const SuiteConfig& cfg) {
  SuiteResult res;
  const BasisPtr basis = build_basis(cfg.n);
  const int n = cfg.n;
  std::vector<SpMat> cr(n), an(n);
  for (int k = 0; k < n; ++k) {
    cr[k] = creation(k, basis).matrix;
    an[k] = SpMat(cr[k].adjoint());
  }
  SpMat id(basis->dim(), basis->dim());
  id.setIdentity();

  double dev_mixed = 0.0, dev_pair = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const SpMat anti = SpMat(an[i] * cr[j] + cr[j] * an[i]);
      const double delta = (i == j) ? 1.0 : 0.0;
      dev_mixed = std::max(dev_mixed, max_abs(SpMat(anti - delta * id)));
      dev_pair = std::max(
          dev_pair, max_abs(SpMat(cr[i] * cr[j] + cr[j] * cr[i])));
    }
  res.rows.push_back(
      car_row("anticommutator_mixed", "Eq. (DefCAR)", dev_mixed, 1e-14));
  res.rows.push_back(
      car_row("anticommutator_creation", "Eq. (DefCAR)", dev_pair, 1e-14));

  double dev_vac = 0.0;
  for (int k = 0; k < n; ++k) {
    Vec omega = Vec::Zero(basis->dim());
    omega[0] = 1.0;
    dev_vac = std::max(dev_vac, (an[k] * omega).norm());
  }
  res.rows.push_back(
      car_row("vacuum_annihilation", "Eq. (DefAni2)", dev_vac, 1e-14));

  SpMat assembled(basis->dim(), basis->dim());
  for (int k = 0; k < n; ++k) assembled += SpMat(cr[k] * an[k]);
  const double dev_num =
      max_abs(SpMat(assembled - number_operator(basis).matrix));
  res.rows.push_back(
      car_row("number_operator_assembly", "§2.1 N-operator", dev_num, 1e-14));

  const SpMat& nhat = number_operator(basis).matrix;
  double dev_comm = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      const SpMat q = SpMat(cr[k] * an[l]);
      dev_comm = std::max(dev_comm, max_abs(SpMat(nhat * q - q * nhat)));
    }
  res.rows.push_back(
      car_row("number_commutes_quadratic", "§2.1 N-operator", dev_comm,
              1e-13));

  for (const json& row : res.rows)
    note_failure(res, row.at("pass").get<bool>(),
                 row.at("check").get<std::string>());
  return res;
}

SuiteResult suite_conditions(const SuiteConfig& cfg) {
  SuiteResult res;
  const BasisPtr basis = build_basis(cfg.n);
  const Rng root(cfg.seed, "suite_conditions");

  std::vector<json> trial_rows(cfg.trials);
  std::vector<bool> trial_ok(cfg.trials, false);
  parallel_for(cfg.trials, [&](int i) {
    Rng rng = root.split("trial").split(static_cast<std::uint64_t>(i));
    const bool mixed = (i % 3 == 2);
    const DensityMatrix rho =
        mixed ? random_mixed(basis, cfg.N, 2 + static_cast<int>(rng.below(3)),
                             rng)
              : pure_state(random_pure(basis, cfg.N, rng));
    const AdmissiblePair pair = make_pair(rho, cfg.N);
    const ConditionReport rep = run_conditions(pair, cfg.tol);
    const double sym_min =
        symmetrized_g_check(pair.gamma, pair.Gamma, 50, rng);
    json row = condition_report_to_json(rep);
    row["trial"] = i;
    row["kind"] = mixed ? "mixed" : "pure";
    row["anchor"] = "Corollary 3.4";
    row["sym_g_min"] = sym_min;
    const bool ok = rep.pass && sym_min >= -10.0 * cfg.tol;
    row["pass"] = ok;
    trial_rows[i] = std::move(row);
    trial_ok[i] = ok;
  });
  for (int i = 0; i < cfg.trials; ++i) {
    res.rows.push_back(std::move(trial_rows[i]));
    note_failure(res, trial_ok[i], "conditions_trial_" + std::to_string(i));
  }

  // Signed trace-one trials: the condition-matrix verdict and the
  // polynomial-positivity verdict must agree on every instance, and the
  // scan must encounter at least one consistent dual failure.
  bool found_failure = false;
  const Rng signed_root = root.split("signed");
  for (int s = 0; s < 50 && !found_failure; ++s) {
    Rng rng = signed_root.split(static_cast<std::uint64_t>(s));
    const DensityMatrix rho = signed_trace_one(basis, cfg.N, rng);
    const DualVerdict dv =
        theorem_equivalence_check(rho, cfg.N, 200, 1e-6, rng);
    json row;
    row["suite"] = "conditions";
    row["trial"] = s;
    row["kind"] = "signed";
    row["anchor"] = "Theorem 3.2";
    row["worst_matrix_eig"] = dv.worst_matrix_eig;
    row["worst_poly_value"] = dv.worst_poly_value;
    row["worst_poly_kind"] = dv.worst_poly_kind;
    row["verdict_conditions"] = dv.verdict_conditions;
    row["verdict_polynomials"] = dv.verdict_polynomials;
    row["consistent"] = dv.consistent;
    row["pass"] = dv.consistent;
    res.rows.push_back(std::move(row));
    note_failure(res, dv.consistent, "signed_trial_" + std::to_string(s));
    if (dv.consistent && !dv.verdict_conditions) found_failure = true;
  }
  note_failure(res, found_failure, "signed_dual_failure_not_found");
  return res;
}

namespace {

json slack_row(const std::string& anchor, int trial, int n, int N, int rank,
               double slack, double tol) {
  json row;
  row["suite"] = "correlation";
  row["trial"] = trial;
  row["n"] = n;
  row["N"] = N;
  row["rank"] = rank;
  row["anchor"] = anchor;
  row["slack"] = slack;
  row["pass"] = slack >= -tol;
  return row;
}

json residual_row(const std::string& anchor, int trial, int n, int N,
                  int rank, double residual, double tol) {
  json row;
  row["suite"] = "correlation";
  row["trial"] = trial;
  row["n"] = n;
  row["N"] = N;
  row["rank"] = rank;
  row["anchor"] = anchor;
  row["residual"] = residual;
  row["pass"] = residual <= tol;
  return row;
}

struct CorrelationTrialRows {
  std::vector<json> rows;
  bool ok = true;
};

CorrelationTrialRows correlation_trial(int trial, int n, int N, int rank,
                                       const DensityMatrix& rho, Rng& rng,
                                       double tol) {
  CorrelationTrialRows out;
  const OneBodyRDM gamma = one_pdm(rho);
  const TwoBodyRDM Gamma = two_pdm(rho);
  Mat X = random_projection(n, rank, rng);
  const CorrelationReport rep = main_theorem_check(X, gamma, Gamma, tol);

  out.rows.push_back(residual_row("Lemma 4.5", trial, n, N, rank,
                                  rep.reconstruction_residual, 1e-10));
  out.rows.push_back(slack_row("Lemma 4.8", trial, n, N, rank,
                               rep.slack_fundsatz, tol));
  out.rows.push_back(
      slack_row("Lemma 4.9", trial, n, N, rank, rep.slack_tr1, tol));
  out.rows.push_back(
      slack_row("Lemma 4.10", trial, n, N, rank, rep.slack_tr2, tol));
  out.rows.push_back(
      slack_row("Theorem 4.11", trial, n, N, rank, rep.slack_tr, tol));
  out.rows.push_back(
      slack_row("Theorem 4.13", trial, n, N, rank, rep.slack_tmet, tol));
  out.rows.push_back(
      slack_row("Theorem 4.15", trial, n, N, rank, rep.slack_tmp, tol));
  out.rows.push_back(
      slack_row("Theorem 4.4", trial, n, N, rank, rep.slack_thm44, tol));
  out.rows.push_back(
      slack_row("Theorem 5.1", trial, n, N, rank, rep.slack_thm51, tol));
  out.rows.push_back(slack_row("Eq. (CorrUGL)", trial, n, N, rank,
                               rep.slack_combined, tol));
  // The combined estimate is never looser than the headline constant 10.
  out.rows.push_back(slack_row("Theorem 5.1 vs Eq. (CorrUGL)", trial, n, N,
                               rank, rep.slack_thm51 - rep.slack_combined,
                               1e-12));
  out.rows.push_back(residual_row("Lemma 4.14", trial, n, N, rank,
                                  rep.identity_residual, 1e-9));
  out.rows.push_back(residual_row("§4.3 exchange invariance", trial, n, N,
                                  rank, rep.exchange_residual, 1e-9));

  // Operator identity behind the key inequality, on an independent pair.
  const ProjectionSplit split = split_projections(gamma);
  const Mat Y = random_projection(n, 1 + static_cast<int>(rng.below(n)), rng);
  const Mat Q =
      random_commuting_projection(split, static_cast<int>(rng.below(n + 1)),
                                  rng);
  const auto sides = b_operator_identity(Y, Q, gamma, Gamma);
  out.rows.push_back(residual_row("Lemma 4.7", trial, n, N, rank,
                                  std::abs(sides.first - sides.second),
                                  1e-9));
  for (const json& row : out.rows)
    if (!row.at("pass").get<bool>()) out.ok = false;
  return out;
}

DensityMatrix boundary_state(const BasisPtr& basis) {
  // gamma = diag(1, 1/2, 1/2, 0): eigenvalue exactly 1/2 exercises the
  // tie-break at the split threshold.
  const DensityMatrix r1 = pure_state(basis_state(0b0011u, basis));
  const DensityMatrix r2 = pure_state(basis_state(0b0101u, basis));
  return {0.5 * r1.matrix + 0.5 * r2.matrix, basis, true};
}

}  // namespace

SuiteResult suite_correlation(const SuiteConfig& cfg) {
  SuiteResult res;
  const Rng root(cfg.seed, "suite_correlation");

  // (n, N) ensemble: sweep when n is given as 0, fixed otherwise.
  std::vector<std::pair<int, int>> ensemble;
  if (cfg.n == 0) {
    ensemble = {{4, 2}, {4, 3}, {6, 2}, {6, 3}, {6, 4}, {8, 2}, {8, 3}, {8, 4}};
  } else {
    ensemble = {{cfg.n, cfg.N}};
  }

  std::vector<CorrelationTrialRows> trials(cfg.trials);
  parallel_for(cfg.trials, [&](int i) {
    Rng rng = root.split("trial").split(static_cast<std::uint64_t>(i));
    const auto [n, N] = ensemble[i % ensemble.size()];
    const BasisPtr basis = build_basis(n);
    const int rank = cfg.rank > 0 ? cfg.rank : 1 + (i % n);
    const DensityMatrix rho =
        (i % 2 == 0) ? pure_state(random_pure(basis, N, rng))
                     : random_mixed(basis, N, 2, rng);
    trials[i] = correlation_trial(i, n, N, rank, rho, rng, cfg.tol);
  });
  for (int i = 0; i < cfg.trials; ++i) {
    for (json& row : trials[i].rows) res.rows.push_back(std::move(row));
    note_failure(res, trials[i].ok,
                 "correlation_trial_" + std::to_string(i));
  }

  // Boundary case: an eigenvalue of gamma exactly at the split threshold.
  {
    Rng rng = root.split("boundary");
    const BasisPtr basis = build_basis(4);
    const DensityMatrix rho = boundary_state(basis);
    for (int rank = 1; rank <= 4; ++rank) {
      const CorrelationTrialRows t =
          correlation_trial(-1, 4, 2, rank, rho, rng, cfg.tol);
      for (const json& row : t.rows) {
        json tagged = row;
        tagged["kind"] = "boundary";
        res.rows.push_back(std::move(tagged));
      }
      note_failure(res, t.ok, "boundary_rank_" + std::to_string(rank));
    }
  }

  // Constant chain.
  {
    const double a_star = 1.0 / std::sqrt(94.0);
    std::vector<double> grid(1000);
    for (int i = 0; i < 1000; ++i)
      grid[i] = a_star * (i + 1) / 1000.0;
    const ConstantChainTable table = constant_chain(grid);
    json row;
    row["suite"] = "correlation";
    row["anchor"] = "Eq. (const)";
    row["value_at_a_star"] = table.value_at_a_star;
    row["identity_error"] = table.identity_error;
    row["monotone"] = table.monotone;
    row["sqrt94_below_10"] = table.sqrt94_below_10;
    row["crossover_ok"] = table.crossover_ok;
    const bool ok = table.identity_error < 1e-12 && table.monotone &&
                    table.sqrt94_below_10 && table.crossover_ok;
    row["pass"] = ok;
    res.rows.push_back(std::move(row));
    note_failure(res, ok, "constant_chain");
  }

  // Alternative split thresholds, recorded as data only.
  {
    std::vector<double> t_grid;
    for (int i = 1; i <= 9; ++i) t_grid.push_back(0.1 * i);
    for (const ThresholdRow& tr : threshold_sweep(t_grid)) {
      json row;
      row["suite"] = "correlation";
      row["anchor"] = "Remark 5.2";
      row["threshold"] = tr.t;
      row["constant"] = tr.constant;
      row["pass"] = true;
      res.rows.push_back(std::move(row));
    }
  }
  return res;
}

SuiteResult suite_fdl(const std::vector<double>& ds) {
  SuiteResult res;
  for (double d : ds) {
    const double computed = fdl_radial_integral(d);
    const double expected = 1.0 / d;
    const double abs_err = std::abs(computed - expected);
    json row;
    row["d"] = d;
    row["computed"] = computed;
    row["expected"] = expected;
    row["abs_err"] = abs_err;
    res.rows.push_back(std::move(row));
    note_failure(res, abs_err < 1e-6, "fdl_d_" + format_double(d));
  }
  return res;
}

std::string fdl_rows_to_csv(const SuiteResult& r) {
  std::vector<std::vector<double>> rows;
  for (const json& row : r.rows)
    rows.push_back({row.at("d").get<double>(),
                    row.at("computed").get<double>(),
                    row.at("expected").get<double>(),
                    row.at("abs_err").get<double>()});
  return to_csv({"d", "computed", "expected", "abs_err"}, rows);
}

SuiteResult suite_energy(const ModelHamiltonian& model, int N,
                         const SuiteConfig& cfg) {
  SuiteResult res;
  const GroundStateResult gs = exact_ground_state(model, N);
  const HartreeFockResult hf = hartree_fock(model, N, 4, cfg.seed);
  const RelaxResult relax = relaxed_lower_bound(model, N);

  EnergyReport rep;
  rep.e_gs = gs.energy;
  rep.e_hf = hf.energy;
  rep.e_relax = relax.energy;
  rep.gap_hf = hf.energy - gs.energy;
  rep.gap_relax = gs.energy - relax.energy;
  rep.hf_grad_norm = hf.grad_norm;
  rep.relax_feas_residual = relax.feas_residual;
  rep.relax_gap_bound = relax.gap_bound;
  rep.hf_iterations = hf.iterations;
  rep.relax_iterations = relax.iterations;
  rep.ordering_ok =
      relax.energy <= gs.energy + 1e-6 && gs.energy <= hf.energy + 1e-6;

  const bool noninteracting = max_abs(model.V) == 0.0;
  bool ok = rep.ordering_ok && relax.feas_residual <= 1e-7;
  if (noninteracting)
    ok = ok && std::abs(rep.e_hf - rep.e_gs) < 1e-7 &&
         std::abs(rep.e_relax - rep.e_gs) < 1e-7;

  json row = energy_report_to_json(rep);
  row["suite"] = "energy";
  row["model"] = model.name;
  row["N"] = N;
  row["anchor"] = "§2.4";
  row["ordering_ok"] = rep.ordering_ok;
  row["pass"] = ok;
  res.rows.push_back(std::move(row));
  note_failure(res, ok, "energy_" + model.name);
  return res;
}

}  // namespace rdmlab
