#pragma once

#include <span>
#include <vector>

#include "solver/state.hpp"
#include "spectral/fft.hpp"

namespace electroflow::solver {

/// Fields of one (q, u) pair sampled on the grid, plus spectral derivatives.
struct PhysicalFields {
  std::vector<double> q, qx, qy;
  std::vector<double> u1, u2, u1x, u1y, u2x, u2y;
  std::vector<double> r1, r2;  // R_eps q
  double max_speed = 0.0;
};

/// Integrating-factor Runge-Kutta integrator for the periodic system. One
/// instance owns its FFT buffers and is not meant to be shared across threads.
class Solver {
 public:
  explicit Solver(const SolverConfig& cfg, const ForcingSpec& forcing = {});

  const SolverConfig& config() const noexcept { return cfg_; }
  const TorusGrid& grid() const noexcept { return grid_; }
  const Forcing& forcing() const noexcept { return forcing_; }

  // Linear decay rates L_q = |k|^alpha + eps |k|^2 and L_u = |k|^2 per mode.
  std::span<const double> decay_q() const noexcept { return lq_; }
  std::span<const double> decay_u() const noexcept { return lu_; }

  PhysicalFields physical(const FieldPair& x);
  // Nonlinear plus forcing tendency. Fails with cfl_violation.
  FieldPair nonlinear_rhs(const FieldPair& x);
  FieldPair nonlinear_rhs(const PhysicalFields& base);
  // Derivative of nonlinear_rhs at `base` applied to `dx` (forcing drops out).
  FieldPair linearized_rhs(const PhysicalFields& base, const FieldPair& dx);

  State step(const State& s);
  void advance(State& s);

  // Multiply by e^{-L h}; h = dt or dt/2 are tabulated, others computed.
  void apply_linear(FieldPair& x, double h) const;

  void apply_galerkin(FieldPair& x) const;

  // (A x, x) with A = diag(L_q, L_u) in the H inner product.
  double linear_form(const FieldPair& x) const;

 private:
  void check_cfl(double max_speed) const;
  void to_physical(const SpectralField& f, std::vector<double>& out);
  void to_physical_derivative(const SpectralField& f, int axis, std::vector<double>& out);
  void to_spectral_dealiased(const std::vector<double>& samples, SpectralField& out);

  SolverConfig cfg_;
  TorusGrid grid_;
  Forcing forcing_;
  spectral::FftEngine fft_;
  std::vector<double> lq_, lu_;
  std::vector<double> eq_full_, eq_half_, eu_full_, eu_half_;
  std::vector<cplx> riesz_[2];
  std::vector<double> grad_phi_[2];
  std::vector<bool> galerkin_mask_;
  std::vector<cplx> scratch_;
  std::vector<double> work_;
};

/// Modes whose |k|^2 is among the n_g smallest nonzero eigenvalues of the
/// grid; whole shells are kept when the cutoff falls inside one.
std::vector<bool> galerkin_mask(const TorusGrid& grid, int n_g);
State galerkin_truncate(const State& s, int n_g);

}  // namespace electroflow::solver
