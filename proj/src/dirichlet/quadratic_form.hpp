#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "dirichlet/sine_basis.hpp"

namespace electroflow::dirichlet {

/// Coefficients over the 1D Dirichlet basis sqrt(2/pi) sin(m x) on (0, pi),
/// eigenvalue m^2; coeffs[m-1] multiplies mode m.
struct SineField1d {
  std::vector<double> coeffs;

  double operator()(double x) const;
  double derivative(double x) const;
  // ||Lambda^s psi||^2 = sum m^{2s} c_m^2
  double lambda_norm_sq(double s) const;
};

/// Resolution of the quadratic-form quadrature. Each refine() doubles the
/// spatial node counts and halves the log-time step.
struct QuadratureSpec {
  int space_nodes = 24;     // Gauss-Legendre nodes on (0, pi) for x
  int diagonal_nodes = 24;  // graded nodes on each side of the diagonal for y
  double log_time_step = 0.4;

  QuadratureSpec refine() const { return {2 * space_nodes, 2 * diagonal_nodes, 0.5 * log_time_step}; }
};

/// K_s(x, y) = (c_{2s} / 2) int_0^inf H(x, y, t) t^{-1-s} dt on (0, pi), x != y,
/// by trapezoidal quadrature in log t.
double kernel_k_1d(double x, double y, double s, double log_time_step);

/// B_s(x) = c_{2s} int_0^inf [1 - e^{t Delta} 1 (x)] t^{-1-s} dt on (0, pi).
double kernel_b_1d(double x, double s, double log_time_step);

/// 2D kernels on (0, pi)^2 with the product heat kernel.
double kernel_k_2d(const std::array<double, 2>& x, const std::array<double, 2>& y, double s,
                   double log_time_step);
double kernel_b_2d(const std::array<double, 2>& x, double s, double log_time_step);

struct QuadraticFormTerms {
  double lhs = 0.0;          // ||Lambda^s psi||^2 from coefficients
  double pair_term = 0.0;    // double integral of (psi(x) - psi(y))^2 K_s
  double boundary_term = 0.0;  // integral of psi^2 B_s
  double residual() const;   // |lhs - rhs| / lhs, 0 when lhs = rhs = 0
};

/// One evaluation of both sides of the identity on the 1D analogue.
QuadraticFormTerms quadratic_form_terms(const SineField1d& psi, double s, const QuadratureSpec& quad);

/// Residual |LHS - RHS| / LHS, refining `quad` until successive RHS values
/// agree to `tolerance` (relative). Throws quadrature_nonconvergence with the
/// last two levels when max_levels is exhausted.
double quadratic_form_identity_residual(const SineField1d& psi, double s, QuadratureSpec quad = {},
                                        double tolerance = 1e-4, int max_levels = 4);

/// 2D check on a coarse G x G midpoint grid (G <= 16); diagonal cells are
/// skipped, so the result carries an O(h^{2-2s}) quadrature error.
QuadraticFormTerms quadratic_form_terms_2d(const SineField& psi, double s, int cells,
                                           double log_time_step = 0.25);

/// Kernel table rows "x y K_s B_s" (1D analogue, B_s evaluated at x).
void write_kernel_table(std::ostream& out, double s, std::span<const double> xs,
                        std::span<const double> ys, double log_time_step = 0.2);

}  // namespace electroflow::dirichlet
