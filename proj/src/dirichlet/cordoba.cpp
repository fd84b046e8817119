#include "dirichlet/cordoba.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "common/error.hpp"

namespace electroflow::dirichlet {

namespace {

void check_power(int p) {
  if (p < 2 || p % 2 != 0) fail(ErrorCode::invalid_argument, "p must be an even integer >= 2");
}

int analysis_intervals(const SineField& f, int p) {
  const int m_max = f.basis().m_max();
  return std::max(4 * m_max, 2 * p * std::max(f.band_limit(), 1));
}

Projection project_power(const SineField& f, int p) {
  const int intervals = analysis_intervals(f, p);
  const auto nodes = trapezoid_nodes(intervals);
  const Eigen::MatrixXd g = evaluate(f, nodes, nodes).array().pow(p).matrix();
  return project(g, intervals, f.basis());
}

}  // namespace

double band_limit_loss(const SineField& f, int p) {
  check_power(p);
  const Projection proj = project_power(f, p);
  if (proj.total_energy == 0.0) return 0.0;
  return proj.tail_energy / proj.total_energy;
}

void require_band_limited(const SineField& f, int p) {
  const double loss = band_limit_loss(f, p);
  if (!(loss < 1e-6)) {
    fail(ErrorCode::band_limit, "f^" + std::to_string(p) + " loses a fraction " + std::to_string(loss) +
                                    " of its energy outside m_max = " + std::to_string(f.basis().m_max()));
  }
}

CordobaGap cordoba_gap(const SineField& f, double s, int p, int cells) {
  check_power(p);
  if (!(s > 0.0 && s < 2.0)) fail(ErrorCode::invalid_argument, "cordoba_gap: s must lie in (0, 2)");
  const Projection proj = project_power(f, p);
  if (proj.total_energy > 0.0 && !(proj.tail_energy / proj.total_energy < 1e-6)) {
    fail(ErrorCode::band_limit, "cordoba_gap: f^" + std::to_string(p) + " is not resolved by the basis");
  }
  const auto nodes = midpoint_nodes(cells);
  const Eigen::ArrayXXd fv = evaluate(f, nodes, nodes).array();
  const Eigen::ArrayXXd lf = evaluate(lambda_s_apply(f, s), nodes, nodes).array();
  const Eigen::ArrayXXd lfp = evaluate(lambda_s_apply(proj.field, s), nodes, nodes).array();
  CordobaGap out;
  out.values = (fv.pow(p - 1) * lf - lfp / p).matrix();
  out.min_gap = out.values.minCoeff();
  return out;
}

double nonlinear_poincare_lhs(const SineField& f, double s, int p) {
  require_band_limited(f, p);
  const int intervals = p * std::max(f.band_limit(), 1) + 2;
  const auto nodes = trapezoid_nodes(intervals);
  const Eigen::ArrayXXd fv = evaluate(f, nodes, nodes).array();
  const Eigen::ArrayXXd lf = evaluate(lambda_s_apply(f, s), nodes, nodes).array();
  const double h = std::numbers::pi / intervals;
  return h * h * (fv.pow(p - 1) * lf).sum();
}

}  // namespace electroflow::dirichlet
