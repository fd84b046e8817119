#pragma once

#include <vector>

namespace electroflow::diagnostics {

struct EigenMergeReport {
  std::vector<double> mu;             // merged ascending sequence
  std::vector<bool> bound_holds;      // mu_j >= c / 2^{1+beta} j^beta
  bool all_bounds_hold = true;
  std::vector<double> partial_sums;   // mu_1 + ... + mu_N
  double exponent = 0.0;              // fitted on fit_points
  std::vector<int> fit_points;
  double c = 0.0, beta = 0.0;         // constants of the per-index bound
};

/// Merges two ascending sequences obeying lambda^i_j >= c_i j^{beta_i} and
/// checks the lower bound on the merged sequence. An empty second sequence
/// gives mu = lambda1 with bound c1 j^{beta1}. Fails with precondition,
/// naming the first failing index, if an input is not ascending or violates
/// its growth hypothesis.
///
/// The partial-sum exponent is a least-squares slope of log S_N against
/// log N over N = 2^m, m = 0, 1, ... up to the complete range (plus its
/// end), unless explicit `fit_points` are given. The complete range holds
/// the mu_N not exceeding the smaller of the two largest inputs.
EigenMergeReport eigen_merge_bound(const std::vector<double>& lambda1, const std::vector<double>& lambda2,
                                   double c1, double c2, double beta1, double beta2,
                                   std::vector<int> fit_points = {});

/// Largest c with lambda_j >= c j^beta for all j (1-based).
double growth_constant(const std::vector<double>& lambda, double beta);

/// Sorted {|k|^s : 0 < |k| <= radius}, one entry per lattice point.
std::vector<double> lattice_eigenvalues(double radius, double s);

}  // namespace electroflow::diagnostics
