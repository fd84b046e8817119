#pragma once

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

namespace electroflow::dirichlet {

/// c_s defined by 1 = c_s int_0^inf t^{-1-s/2} (1 - e^{-t}) dt, s in (0, 2).
/// Evaluated once per s by adaptive quadrature and memoized.
double calibration_constant(double s);

/// int_0^inf (1 - e^{-t lambda}) t^{-1-s/2} dt by adaptive quadrature.
double heat_difference_integral(double lambda, double s);

/// Dirichlet heat kernel on (0, pi) at time t > 0. Small times use the
/// method of images; large times the eigenfunction sum. Both are exact to
/// double precision in their ranges.
double heat_kernel_1d(double x, double y, double t);

/// (e^{t Delta} 1)(x) on (0, pi).
double heat_of_one_1d(double x, double t);

/// Heat kernel on (0, pi)^2 by the truncated eigen-sum
/// sum e^{-t lambda_mn} w_mn(x) w_mn(y), dropping terms with e^{-t lambda} < 1e-16.
/// Refuses t < 1e-4, where the truncation would need an unreasonable basis.
struct HeatKernelEval {
  double t = 0.0;
  std::vector<std::array<double, 2>> points;
  Eigen::MatrixXd values;  // values(i, j) = H(points[i], points[j], t)
};
HeatKernelEval heat_kernel_2d(double t, std::vector<std::array<double, 2>> points);

}  // namespace electroflow::dirichlet
