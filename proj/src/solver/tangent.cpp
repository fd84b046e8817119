#include "solver/tangent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "common/error.hpp"
#include "solver/lawson.hpp"

namespace electroflow::solver {

std::vector<std::vector<double>> gram_matrix(const TangentState& tangents) {
  const std::size_t n = tangents.size();
  std::vector<std::vector<double>> g(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) g[i][j] = g[j][i] = inner(tangents.vectors[i], tangents.vectors[j]);
  return g;
}

double gram_condition(const TangentState& tangents) {
  const auto g = gram_matrix(tangents);
  const auto n = static_cast<Eigen::Index>(g.size());
  if (n == 0) return 1.0;
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = g[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

std::vector<double> orthonormalize(TangentState& tangents, double max_condition) {
  const double cond = gram_condition(tangents);
  if (!(cond <= max_condition)) {
    std::ostringstream msg;
    msg << "tangent frame rank collapse: Gram condition number " << cond << " > " << max_condition;
    fail(ErrorCode::rank_collapse, msg.str());
  }
  std::vector<double> stretch(tangents.size());
  for (std::size_t i = 0; i < tangents.size(); ++i) {
    auto& v = tangents.vectors[i];
    for (std::size_t j = 0; j < i; ++j) v.axpy(-inner(v, tangents.vectors[j]), tangents.vectors[j]);
    const double r = norm(v);
    if (!(r > 0.0)) fail(ErrorCode::rank_collapse, "tangent frame rank collapse: zero vector after projection");
    v *= 1.0 / r;
    stretch[i] = r;
  }
  return stretch;
}

void advance_with_tangents(Solver& solver, State& base, TangentState& tangents) {
  std::vector<PhysicalFields> stages;
  const double t0 = base.t;
  FieldPair& x = base;
  lawson_step(solver, x, [&](int, const FieldPair& y) {
    stages.push_back(solver.physical(y));
    return solver.nonlinear_rhs(stages.back());
  });
  solver.apply_galerkin(x);
  x.q.clear_mean();
  base.t = t0 + solver.config().dt;

  for (auto& v : tangents.vectors) {
    lawson_step(solver, v, [&](int stage, const FieldPair& y) { return solver.linearized_rhs(stages[stage], y); });
    solver.apply_galerkin(v);
    v.q.clear_mean();
  }
}

void linearized_step(Solver& solver, State& base, TangentState& tangents, int steps) {
  const int every = solver.config().reorth_interval;
  for (int k = 1; k <= steps; ++k) {
    advance_with_tangents(solver, base, tangents);
    if (k % every == 0 || k == steps) orthonormalize(tangents);
  }
}

TangentState mode_frame(const TorusGrid& grid, int count) {
  std::vector<std::size_t> order;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const std::size_t j = grid.partner(i);
    if (j > i && grid.retained(i)) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return grid.k2(a) < grid.k2(b); });
  TangentState frame;
  const double unit = 1.0 / (2.0 * std::numbers::pi);
  std::size_t next = 0;
  // Each mode k carries cos and sin variants for q and for u.
  while (static_cast<int>(frame.size()) < count && next < order.size()) {
    const std::size_t i = order[next++];
    const int kx = grid.kx(i), ky = grid.ky(i);
    const double km = grid.kmag(i);
    const double amp = unit / std::sqrt(2.0);
    for (int variant = 0; variant < 4 && static_cast<int>(frame.size()) < count; ++variant) {
      FieldPair v(grid);
      const cplx c = (variant % 2 == 0) ? cplx(amp, 0.0) : cplx(0.0, amp);
      if (variant < 2) {
        v.q.set_pair(kx, ky, c);
      } else {
        v.u[0].set_pair(kx, ky, -ky / km * c);
        v.u[1].set_pair(kx, ky, kx / km * c);
      }
      frame.vectors.push_back(std::move(v));
    }
  }
  if (static_cast<int>(frame.size()) < count) fail(ErrorCode::invalid_argument, "mode_frame: not enough retained modes");
  return frame;
}

}  // namespace electroflow::solver
