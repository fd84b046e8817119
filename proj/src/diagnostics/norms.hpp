#pragma once

#include <limits>
#include <optional>

#include "solver/state.hpp"

namespace electroflow::diagnostics {

using solver::State;
using spectral::SpectralField;
using spectral::VectorSpectralField;

/// L^p(T^2) norm. p = 2 uses Parseval; larger even p sample f on a grid
/// refined until the grid exceeds p times the bandwidth, so f^p integrates exactly.
double lp_norm(const SpectralField& f, int p);

/// ||Lambda^s f||_{L^2}.
double sobolev_norm(const SpectralField& f, double s);
double sobolev_norm(const VectorSpectralField& u, double s);

struct DiagnosticsRecord {
  static constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  double t = 0.0;
  double l2_q = 0.0, l4_q = 0.0, l8_q = 0.0;
  double h1_q = 0.0;       // ||Lambda q||
  double halpha2_q = 0.0;  // ||Lambda^{alpha/2} q||
  double l2_u = 0.0;
  double h1_u = 0.0;  // ||A^{1/2} u||
  double h2_u = 0.0;  // ||A u||
  double gevrey_tau_hat = nan;
  double energy_residual = nan;
};

/// Builds records along a trajectory. energy_residual compares consecutive
/// samples: (|q_b|^2 - |q_a|^2)/(t_b - t_a) + (D_a + D_b)/2 with
/// D = 2|Lambda^{alpha/2} q|^2 + 2 eps |Lambda q|^2 - 2 (Delta Phi, q).
class RecordBuilder {
 public:
  RecordBuilder(double alpha, double epsilon, std::optional<SpectralField> laplacian_phi = std::nullopt,
                bool gevrey = true);

  DiagnosticsRecord operator()(const State& s);
  void reset() { previous_.reset(); }

 private:
  double alpha_, epsilon_;
  std::optional<SpectralField> laplacian_phi_;
  bool gevrey_;
  struct Prev {
    double t, q2, dissipation;
  };
  std::optional<Prev> previous_;
};

}  // namespace electroflow::diagnostics
