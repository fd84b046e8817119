#pragma once

#include <vector>

#include "solver/solver.hpp"

namespace electroflow::solver {

struct TangentState {
  std::vector<FieldPair> vectors;

  std::size_t size() const noexcept { return vectors.size(); }
};

/// Gram matrix G_ij = (phi_i, phi_j)_H.
std::vector<std::vector<double>> gram_matrix(const TangentState& tangents);
/// 2-norm condition number of the Gram matrix; infinity when singular.
double gram_condition(const TangentState& tangents);

/// Modified Gram-Schmidt in H. Fails with rank_collapse when the Gram matrix
/// condition number exceeds `max_condition`. Returns the stretch factors
/// (diagonal of R) in frame order.
std::vector<double> orthonormalize(TangentState& tangents, double max_condition = 1e12);

/// Advances the base state and the tangent frame together by one step of
/// the configured scheme; the tangent map is the exact derivative of the
/// discrete base map.
void advance_with_tangents(Solver& solver, State& base, TangentState& tangents);

/// Linearized flow over `steps` steps with re-orthonormalization every
/// reorth_interval steps (and at the end).
void linearized_step(Solver& solver, State& base, TangentState& tangents, int steps);

/// Frame of pure Fourier modes, lowest |k| first, alternating q-modes and
/// divergence-free u-modes; used as a deterministic starting frame.
TangentState mode_frame(const TorusGrid& grid, int count);

}  // namespace electroflow::solver
