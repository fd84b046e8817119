#include "diagnostics/eigen_merge.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>

#include "common/error.hpp"
#include "diagnostics/fits.hpp"

namespace electroflow::diagnostics {

namespace {

void check_sequence(const std::vector<double>& lambda, double c, double beta, const char* name) {
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    const std::string at = std::string(name) + " index " + std::to_string(j + 1);
    if (j > 0 && lambda[j] < lambda[j - 1]) fail(ErrorCode::precondition, "eigen_merge_bound: " + at + " not ascending");
    if (lambda[j] < c * std::pow(static_cast<double>(j + 1), beta) * (1.0 - 1e-14)) {
      fail(ErrorCode::precondition, "eigen_merge_bound: " + at + " violates lambda_j >= c j^beta");
    }
  }
}

}  // namespace

EigenMergeReport eigen_merge_bound(const std::vector<double>& lambda1, const std::vector<double>& lambda2,
                                   double c1, double c2, double beta1, double beta2, std::vector<int> fit_points) {
  if (!(c1 > 0.0) || !(beta1 > 0.0)) fail(ErrorCode::invalid_argument, "eigen_merge_bound: c1, beta1 must be > 0");
  check_sequence(lambda1, c1, beta1, "lambda1");
  EigenMergeReport rep;
  if (lambda2.empty()) {
    rep.c = c1;
    rep.beta = beta1;
  } else {
    if (!(c2 > 0.0) || !(beta2 > 0.0)) fail(ErrorCode::invalid_argument, "eigen_merge_bound: c2, beta2 must be > 0");
    check_sequence(lambda2, c2, beta2, "lambda2");
    rep.beta = std::min(beta1, beta2);
    rep.c = std::min(c1, c2) / std::pow(2.0, 1.0 + rep.beta);
  }
  rep.mu.resize(lambda1.size() + lambda2.size());
  std::merge(lambda1.begin(), lambda1.end(), lambda2.begin(), lambda2.end(), rep.mu.begin());

  double sum = 0.0;
  for (std::size_t j = 0; j < rep.mu.size(); ++j) {
    const bool ok = rep.mu[j] >= rep.c * std::pow(static_cast<double>(j + 1), rep.beta) * (1.0 - 1e-14);
    rep.bound_holds.push_back(ok);
    rep.all_bounds_hold = rep.all_bounds_hold && ok;
    sum += rep.mu[j];
    rep.partial_sums.push_back(sum);
  }

  const int total = static_cast<int>(rep.mu.size());
  if (fit_points.empty()) {
    // Past the largest entry of the shorter-ranged input the merge is
    // missing values, so the fit stops there.
    int complete = total;
    if (!lambda1.empty() && !lambda2.empty()) {
      const double top = std::min(lambda1.back(), lambda2.back());
      complete = static_cast<int>(std::upper_bound(rep.mu.begin(), rep.mu.end(), top) - rep.mu.begin());
    }
    for (int p = 1; p <= complete; p *= 2) fit_points.push_back(p);
    if (!fit_points.empty() && fit_points.back() != complete) fit_points.push_back(complete);
  }
  std::vector<double> x, y;
  for (int p : fit_points) {
    if (p < 1 || p > total) fail(ErrorCode::invalid_argument, "eigen_merge_bound: fit point out of range");
    x.push_back(p);
    y.push_back(rep.partial_sums[p - 1]);
  }
  rep.fit_points = fit_points;
  if (x.size() >= 2) rep.exponent = power_law_fit(x, y).slope;
  return rep;
}

double growth_constant(const std::vector<double>& lambda, double beta) {
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < lambda.size(); ++j) c = std::min(c, lambda[j] / std::pow(static_cast<double>(j + 1), beta));
  return c;
}

std::vector<double> lattice_eigenvalues(double radius, double s) {
  std::vector<double> out;
  const int r = static_cast<int>(std::floor(radius));
  for (int kx = -r; kx <= r; ++kx)
    for (int ky = -r; ky <= r; ++ky) {
      const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
      if (k2 == 0.0 || k2 > radius * radius) continue;
      out.push_back(std::pow(k2, 0.5 * s));
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace electroflow::diagnostics
