#pragma once

#include <vector>

namespace electroflow::diagnostics {

/// dy/dt + c y <= C1 + C2 F1 + C3 F2 y^n on a uniform grid starting at t0.
struct GronwallInput {
  std::vector<double> t, y, f1, f2;  // f1, f2 may be empty (read as 0)
  double c = 1.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  int n = 0;
  double r = 0.0;
  double t0 = 0.0;
  double tolerance = 1e-6;
};

struct GronwallReport {
  bool hypothesis_ok = false;
  bool conclusion_ok = false;
  double bound = 0.0;             // (C1/c + 2 C2 R + 2R) e^{2 C3 R}
  double margin = 0.0;            // bound - max y over t >= t0 + 1
  double max_inequality_residual = 0.0;
  double max_window_integral = 0.0;  // of F1 + F2 y^{n-1} + y over unit windows
};

/// Checks the hypotheses numerically (central differences, unit-window
/// integrals including the y term in every case) and the conclusion
/// y <= bound for t >= t0 + 1. Fails with precondition when the grid is
/// not uniform or has fewer than 20 points per unit time.
GronwallReport gronwall_verify(const GronwallInput& in);

}  // namespace electroflow::diagnostics
