#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdmlab/energy.hpp"
#include "rdmlab/report.hpp"

namespace rdmlab {

struct SuiteConfig {
  int n = 6;
  int N = 2;
  int trials = 100;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int rank = 0;  // projection rank; 0 = cycle through 1..n
  std::string format = "jsonl";
};

struct SuiteResult {
  bool pass = true;
  std::vector<json> rows;
  std::string failure;  // name of the first failing check, if any
};

/// CAR/number-operator identity suite. Each row names one identity and its
/// worst entrywise deviation.
SuiteResult suite_car(const SuiteConfig& cfg);

/// Admissibility + P/G/Q sweep over random pure and mixed states, plus
/// signed trace-one trials exercising the dual-verdict equivalence (at
/// least one trial with a consistent failure on both sides).
SuiteResult suite_conditions(const SuiteConfig& cfg);

/// Every correlation-chain slack on a random ensemble, the exact-1/2
/// boundary state, and the constant-chain table.
SuiteResult suite_correlation(const SuiteConfig& cfg);

/// Radial-identity rows (d, computed, expected, abs_err).
SuiteResult suite_fdl(const std::vector<double>& ds);
std::string fdl_rows_to_csv(const SuiteResult& r);

/// Exact / Hartree-Fock / relaxation energies and the ordering chain.
SuiteResult suite_energy(const ModelHamiltonian& model, int N,
                         const SuiteConfig& cfg);

}  // namespace rdmlab
