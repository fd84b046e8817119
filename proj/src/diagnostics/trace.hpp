#pragma once

#include <vector>

#include "solver/tangent.hpp"

namespace electroflow::diagnostics {

/// Rayleigh quotients (A phi_i, phi_i) + (L(base) phi_i, phi_i) of the
/// linearized operator over an H-orthonormal frame, in frame order.
std::vector<double> trace_terms(solver::Solver& solver, const solver::FieldPair& base,
                                const solver::TangentState& frame);

/// Sum of the first N trace terms; N = 0 gives 0.
double trace_estimate(solver::Solver& solver, const solver::FieldPair& base, const solver::TangentState& frame,
                      int n);

struct TraceSeries {
  std::vector<double> t;
  // partial[s][N-1] = Trace((A + L) Q_N) at sample s
  std::vector<std::vector<double>> partial;

  /// Mean over samples with t >= t_from of the N-th partial sum.
  double time_average(int n, double t_from) const;
};

/// Evolves base and frame for `steps` steps, re-orthonormalizing every
/// reorth_interval steps, and records all partial traces every
/// `sample_every` steps (the frame is orthonormalized before sampling).
TraceSeries trace_series(solver::Solver& solver, solver::State& base, solver::TangentState& frame, int steps,
                         int sample_every);

}  // namespace electroflow::diagnostics
