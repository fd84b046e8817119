#pragma once

#include <Eigen/Dense>

#include "dirichlet/sine_basis.hpp"

namespace electroflow::dirichlet {

/// Fraction of ||f^p||^2 lying outside the m_max x m_max block of f's basis.
double band_limit_loss(const SineField& f, int p);

/// Throws ErrorCode::band_limit when band_limit_loss(f, p) >= 1e-6.
void require_band_limited(const SineField& f, int p);

struct CordobaGap {
  double min_gap = 0.0;
  Eigen::MatrixXd values;  // gap at the midpoint grid
};

/// Pointwise f^{p-1} Lambda^s f - (1/p) Lambda^s (f^p) on a cells x cells
/// midpoint grid. For convex Phi(x) = x^p / p the exact gap is >= 0; the
/// truncated evaluation is compared against -tol by callers.
CordobaGap cordoba_gap(const SineField& f, double s, int p, int cells = 64);

/// int f^{p-1} Lambda^s f dx by a trapezoid rule that is exact for the
/// band-limited integrand.
double nonlinear_poincare_lhs(const SineField& f, double s, int p);

}  // namespace electroflow::dirichlet
