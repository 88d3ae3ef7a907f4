#pragma once

#include <utility>
#include <vector>

#include "rdmlab/rdm.hpp"

namespace rdmlab {

/// Spectral split of gamma at 1/2. Eigenvalues strictly above 1/2 span the
/// range of P; an eigenvalue of exactly 1/2 goes to P_perp.
struct ProjectionSplit {
  Mat P, Pperp;
  Mat eigvecs;   // columns: eigenvectors of gamma
  RVec eigvals;  // ascending
};

ProjectionSplit split_projections(const OneBodyRDM& gamma);

/// Projection onto a Haar-random d-dimensional subspace of C^n.
Mat random_projection(int n, int d, Rng& rng);

/// Projection commuting with gamma: span of d eigenvectors chosen at random
/// from the stored eigendecomposition.
Mat random_commuting_projection(const ProjectionSplit& split, int d, Rng& rng);

/// tr{(S (x) T) M} for n x n blocks S, T against an n^2 x n^2 matrix M.
cd trace2(const Mat& S, const Mat& T, const Mat& M);

/// tr{(X (x) X) Gamma^(T)}; the imaginary residue must be < 1e-10.
double correlation_lhs(const Mat& X, const OneBodyRDM& gamma,
                       const TwoBodyRDM& Gamma);

/// The seven independent traces of the (P, P_perp) regrouping of
/// tr{(X (x) X) Gamma} and the Main Part / Remainder / Main Error Term.
struct TermTable {
  double t1 = 0.0;   // tr{(PXP (x) PXP) Gamma}
  double t2r = 0.0;  // Re tr{(PXP (x) P'XP) Gamma}
  double t3 = 0.0;   // tr{(PXP' (x) P'XP) Gamma}
  double t4 = 0.0;   // tr{(P'XP' (x) P'XP') Gamma}
  double t5r = 0.0;  // Re tr{(P'XP (x) P'XP') Gamma}
  double t6 = 0.0;   // tr{(P'XP' (x) PXP) Gamma}
  double t7r = 0.0;  // Re tr{(PXP' (x) PXP') Gamma}
  double t_mp = 0.0;   // t1 + 4 t2r + 4 t3
  double t_r1 = 0.0;   // t4 + 4 t5r + 2 t6
  double t_r2 = 0.0;   // -2 t3
  double t_r = 0.0;    // t_r1 + t_r2
  double t_met = 0.0;  // 2 t7r
  double total = 0.0;  // tr{(X (x) X) Gamma}
  double reconstruction_residual = 0.0;
};

TermTable decompose(const Mat& X, const ProjectionSplit& split,
                    const TwoBodyRDM& Gamma);

/// Both sides of the operator identity
///   sum_{r,s} tr{(B*(r,s) (x) B(r,s))(Gamma + Ex(gamma (x) 1))}
///     = tr{(QYQ (x) Q'YQ')(-Gamma + 1 (x) gamma)}
/// with B(r,s) = |QY psi_r><Q'Y psi_s| over the standard basis psi.
std::pair<double, double> b_operator_identity(const Mat& Y, const Mat& Q,
                                              const OneBodyRDM& gamma,
                                              const TwoBodyRDM& Gamma);

/// slack.first  = 4 b a^2 - tr{(PXP (x) P'XP') Gamma}
/// slack.second = 4 b a^2 - tr{(P'XP' (x) PXP) Gamma}  (swapped variant)
/// with b = tr(X gamma), a^2 = tr(X(gamma - gamma^2)).
std::pair<double, double> fundsatz_check(const Mat& X,
                                         const ProjectionSplit& split,
                                         const OneBodyRDM& gamma,
                                         const TwoBodyRDM& Gamma);

struct RemainderSlacks {
  double slack_r1 = 0.0;  // T_R1 + 8 b a^2
  double slack_r2 = 0.0;  // T_R2 + 8 b a^2
  double slack_r = 0.0;   // T_R  + 16 b a^2
};

RemainderSlacks bound_remainder(const Mat& X, const ProjectionSplit& split,
                                const OneBodyRDM& gamma,
                                const TwoBodyRDM& Gamma);

struct MetSlack {
  double slack = 0.0;  // T_MET + 2 b sqrt(8 a^2 (1 + 4 a^2))
  double exchange_residual = 0.0;  // |tr{(P'XP (x) P'XP) Ex(gamma (x) 1)}|
};

MetSlack bound_met(const Mat& X, const ProjectionSplit& split,
                   const OneBodyRDM& gamma, const TwoBodyRDM& Gamma);

struct MainPartSlack {
  double identity_residual = 0.0;  // |T_MP - tr{(PX(P+2P') (x) (P+2P')XP) Gamma}|
  double hf_term = 0.0;            // tr{(X (x) X)(1-Ex)(gamma (x) gamma)}
  double slack = 0.0;              // T_MP - hf_term + 22 b a^2
};

MainPartSlack bound_main_part(const Mat& X, const ProjectionSplit& split,
                              const OneBodyRDM& gamma, const TwoBodyRDM& Gamma);

/// slack = tr{(X (x) X) Gamma^(T)} + tr(X gamma).
double theorem_4_4_check(const Mat& X, const OneBodyRDM& gamma,
                         const TwoBodyRDM& Gamma);

struct CorrelationReport {
  double a = 0.0;
  double b = 0.0;
  double lhs = 0.0;
  double t_mp = 0.0, t_r1 = 0.0, t_r2 = 0.0, t_r = 0.0, t_met = 0.0;
  double hf_term = 0.0;
  double reconstruction_residual = 0.0;
  double identity_residual = 0.0;
  double exchange_residual = 0.0;
  double slack_thm44 = 0.0;
  double slack_fundsatz = 0.0;  // min of the two variants
  double slack_tr = 0.0;
  double slack_tr1 = 0.0, slack_tr2 = 0.0;
  double slack_tmet = 0.0;
  double slack_tmp = 0.0;
  double slack_thm51 = 0.0;     // lhs + b min{1; 10a}
  double slack_combined = 0.0;  // lhs + b min{1; a(38a + 2 sqrt(8+32a^2))}
  // Two possible readings of the headline bound (evaluated, not asserted):
  // factor 38a^2 + 4a sqrt(2 + 8a^2) (matches the combined estimate) vs.
  // 38a^2 + 4a sqrt(2 + 8a^4).
  double slack_headline_linear = 0.0;
  double slack_headline_squared = 0.0;
  double worst_slack = 0.0;
  bool pass = false;
};

CorrelationReport main_theorem_check(const Mat& X, const OneBodyRDM& gamma,
                                     const TwoBodyRDM& Gamma,
                                     double tol = 1e-9);

/// 38a + 2 sqrt(8 + 32 a^2), the combined-estimate constant.
double combined_constant(double a);

struct ConstantChainRow {
  double a = 0.0;
  double value = 0.0;
  double a_times_value = 0.0;
};

struct ConstantChainTable {
  std::vector<ConstantChainRow> rows;
  double value_at_a_star = 0.0;   // combined_constant(1/sqrt(94))
  double identity_error = 0.0;    // |value_at_a_star - sqrt(94)|
  bool monotone = false;
  bool sqrt94_below_10 = false;
  bool crossover_ok = false;  // a f(a) <= 1 on the grid, > 1 just above a*
};

ConstantChainTable constant_chain(const std::vector<double>& a_grid);

/// Exploratory sweep over alternative split thresholds t in (0,1); for each
/// t the resulting constant K(t) = 1/a*(t) where a* solves a g_t(a) = 1.
/// Data only: the claim that t = 1/2 is optimal is not asserted.
struct ThresholdRow {
  double t = 0.0;
  double constant = 0.0;
};

std::vector<ThresholdRow> threshold_sweep(const std::vector<double>& t_grid);

}  // namespace rdmlab
