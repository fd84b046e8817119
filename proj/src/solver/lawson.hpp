#pragma once

#include "solver/solver.hpp"

namespace electroflow::solver {

/// One integrating-factor RK step of x' = -L x + rhs(stage, x), with E the
/// exact linear propagator. `rhs` receives the stage index so that a caller
/// can pair each stage with quantities recorded elsewhere.
template <class Rhs>
void lawson_step(const Solver& solver, FieldPair& x, Rhs&& rhs) {
  const double dt = solver.config().dt;
  if (solver.config().scheme == Scheme::ifrk2) {
    FieldPair k1 = rhs(0, static_cast<const FieldPair&>(x));
    FieldPair a = x;
    a.axpy(dt, k1);
    solver.apply_linear(a, dt);
    FieldPair k2 = rhs(1, static_cast<const FieldPair&>(a));
    solver.apply_linear(x, dt);
    solver.apply_linear(k1, dt);
    x.axpy(0.5 * dt, k1);
    x.axpy(0.5 * dt, k2);
    return;
  }
  const double h = 0.5 * dt;
  FieldPair k1 = rhs(0, static_cast<const FieldPair&>(x));
  FieldPair a = x;
  a.axpy(h, k1);
  solver.apply_linear(a, h);
  FieldPair k2 = rhs(1, static_cast<const FieldPair&>(a));
  FieldPair b = x;
  solver.apply_linear(b, h);
  b.axpy(h, k2);
  FieldPair k3 = rhs(2, static_cast<const FieldPair&>(b));
  FieldPair c = x;
  solver.apply_linear(c, dt);
  FieldPair e3 = k3;
  solver.apply_linear(e3, h);
  c.axpy(dt, e3);
  FieldPair k4 = rhs(3, static_cast<const FieldPair&>(c));

  // x+ = E x + dt/6 (E k1 + 2 E2 (k2 + k3) + k4)
  FieldPair mid = k2;
  mid += k3;
  solver.apply_linear(mid, h);
  solver.apply_linear(k1, dt);
  solver.apply_linear(x, dt);
  x.axpy(dt / 6.0, k1);
  x.axpy(dt / 3.0, mid);
  x.axpy(dt / 6.0, k4);
}

}  // namespace electroflow::solver
