// rdmlab: verification suites and model tools on the fermionic Fock space.
//
// Exit codes: 0 all checks passed, 1 a verification check failed,
// 2 usage or I/O error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdmlab/energy.hpp"
#include "rdmlab/suites.hpp"

namespace {

struct CommonOpts {
  rdmlab::SuiteConfig cfg;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--modes", opts.cfg.n, "Number of modes n");
  cmd->add_option("--particles", opts.cfg.N, "Particle number N");
  cmd->add_option("--trials", opts.cfg.trials, "Number of random trials");
  cmd->add_option("--seed", opts.cfg.seed, "Root seed");
  cmd->add_option("--tol", opts.cfg.tol, "Verification tolerance");
  cmd->add_option("--rank", opts.cfg.rank,
                  "Projection rank (0 = cycle through 1..n)");
  cmd->add_option("--out", opts.out, "Output path (default: stdout)");
  cmd->add_option("--format", opts.cfg.format, "Output format")
      ->check(CLI::IsMember({"jsonl", "csv"}));
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + out);
}

int finish(const rdmlab::SuiteResult& res, const CommonOpts& opts,
           const std::string& csv = {}) {
  emit(opts.cfg.format == "csv" && !csv.empty()
           ? csv
           : rdmlab::to_json_lines(res.rows),
       opts.out);
  if (!res.pass)
    std::cerr << "FAIL: " << res.failure << "\n";
  return res.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fermionic reduced-density-matrix verification lab"};
  app.require_subcommand(1);

#ifdef RDMLAB_TEST_HOOKS
  app.add_flag("--corrupt-sign", rdmlab::testhooks::corrupt_creation_sign,
               "Drop all fermionic phase factors (test hook)");
#endif

  CommonOpts car_opts;
  CLI::App* car = app.add_subcommand(
      "verify-car", "Canonical anticommutation relation identities");
  add_common(car, car_opts);

  CommonOpts cond_opts;
  CLI::App* cond = app.add_subcommand(
      "verify-conditions",
      "Admissibility, P/G/Q conditions and dual-verdict equivalence");
  add_common(cond, cond_opts);

  CommonOpts corr_opts;
  corr_opts.cfg.n = 0;  // default: sweep the (n, N) ensemble
  CLI::App* corr = app.add_subcommand(
      "verify-correlation", "Correlation-estimate slack ensemble");
  add_common(corr, corr_opts);

  CommonOpts fdl_opts;
  fdl_opts.cfg.format = "csv";
  std::vector<double> fdl_ds;
  CLI::App* fdl = app.add_subcommand(
      "fdl", "Force-distance-law radial integral against 1/d");
  fdl->add_option("-d,--distance", fdl_ds, "Distances to evaluate")
      ->required();
  fdl->add_option("--out", fdl_opts.out, "Output path (default: stdout)");
  fdl->add_option("--format", fdl_opts.cfg.format, "Output format")
      ->check(CLI::IsMember({"jsonl", "csv"}));

  CommonOpts energy_opts;
  std::string model_path;
  CLI::App* energy = app.add_subcommand(
      "energy", "Exact / Hartree-Fock / relaxation energy ordering");
  energy->add_option("--model", model_path, "Model JSON path")->required();
  add_common(energy, energy_opts);

  std::string models_dir;
  CLI::App* models = app.add_subcommand(
      "write-models", "Write the shipped model Hamiltonians as JSON");
  models->add_option("--out-dir", models_dir, "Target directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (car->parsed()) return finish(rdmlab::suite_car(car_opts.cfg), car_opts);
    if (cond->parsed())
      return finish(rdmlab::suite_conditions(cond_opts.cfg), cond_opts);
    if (corr->parsed())
      return finish(rdmlab::suite_correlation(corr_opts.cfg), corr_opts);
    if (fdl->parsed()) {
      const rdmlab::SuiteResult res = rdmlab::suite_fdl(fdl_ds);
      return finish(res, fdl_opts, rdmlab::fdl_rows_to_csv(res));
    }
    if (energy->parsed()) {
      const rdmlab::ModelHamiltonian model = rdmlab::load_model(model_path);
      return finish(rdmlab::suite_energy(model, energy_opts.cfg.N,
                                         energy_opts.cfg),
                    energy_opts);
    }
    if (models->parsed()) {
      rdmlab::save_model(rdmlab::model_noninteracting(4),
                         models_dir + "/noninteracting_n4.json");
      rdmlab::save_model(rdmlab::model_diagonal_repulsion(4, 1.0),
                         models_dir + "/diagonal_repulsion_n4.json");
      rdmlab::save_model(rdmlab::model_random_repulsive(4, 1.0, 7),
                         models_dir + "/random_repulsive_n4.json");
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
