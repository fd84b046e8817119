#include "dirichlet/quadratic_form.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "common/error.hpp"
#include "dirichlet/heat_kernel.hpp"

namespace electroflow::dirichlet {

namespace {

constexpr double pi = std::numbers::pi;
// Upper end of the log-time range; e^{-t} at t = 60 is below 1e-26.
constexpr double t_upper = 60.0;

void check_order(double s) {
  if (!(s > 0.0 && s < 1.0)) fail(ErrorCode::invalid_argument, "quadratic form: s must lie in (0, 1)");
}

// Closest image distance of the 1D Dirichlet heat kernel.
double image_gap(double x, double y) {
  return std::min({std::abs(x - y), x + y, 2.0 * pi - x - y});
}

// Trapezoid rule in u = log t for int_0^inf F(t) t^{-1-s} dt when F decays
// like e^{-r^2/4t} as t -> 0 and like e^{-t} as t -> inf.
template <class F>
double log_time_integral(F&& heat, double r2, double s, double step) {
  const double lo = std::log(std::max(r2 / 200.0, 1e-300));
  const double hi = std::log(t_upper);
  const int intervals = std::max(8, static_cast<int>(std::ceil((hi - lo) / step)));
  const double h = (hi - lo) / intervals;
  double sum = 0.0;
  for (int j = 0; j <= intervals; ++j) {
    const double u = lo + j * h;
    const double t = std::exp(u);
    const double w = (j == 0 || j == intervals) ? 0.5 : 1.0;
    sum += w * heat(t) * std::exp(-s * u);
  }
  return sum * h;
}

// int_0^inf [1 - P(t)] t^{-1-s} dt where P(t) = (e^{t Delta} 1)(x) -> 1 as t -> 0.
template <class P>
double boundary_integral(P&& heat_of_one, double s) {
  auto integrand = [&](double t) {
    const double gap = 1.0 - heat_of_one(t);
    return gap == 0.0 ? 0.0 : gap * std::pow(t, -1.0 - s);
  };
  boost::math::quadrature::tanh_sinh<double> near;
  boost::math::quadrature::exp_sinh<double> far;
  const double head = near.integrate(integrand, 0.0, 1.0);
  // int_1^inf t^{-1-s} = 1/s, minus the exponentially small heat part.
  const double tail_heat =
      far.integrate([&](double u) { return heat_of_one(1.0 + u) * std::pow(1.0 + u, -1.0 - s); });
  return head + 1.0 / s - tail_heat;
}

std::vector<std::pair<double, double>> gauss_nodes_unit(int n) {
  // Gauss-Legendre on (0, 1): Newton iteration on the Legendre recurrence.
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    double z = std::cos(pi * (i - 0.25) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? z : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (z * pn - pnm1) / (z * z - 1.0);
      const double dz = pn / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    out.emplace_back(0.5 * (1.0 - z), 0.5 * w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Nodes and kernel values for one (s, quadrature) pair; reused across psi.
struct PairRule {
  std::vector<double> x, wx;                  // outer nodes
  std::vector<std::vector<double>> y, wy, k;  // inner nodes per x, with K values
  std::vector<double> b;                      // B_s(x)
};

PairRule build_pair_rule(double s, const QuadratureSpec& quad) {
  PairRule rule;
  const auto outer = gauss_nodes_unit(quad.space_nodes);
  const auto inner = gauss_nodes_unit(quad.diagonal_nodes);
  for (const auto& [v, w] : outer) {
    const double x = pi * v;
    rule.x.push_back(x);
    rule.wx.push_back(pi * w);
    std::vector<double> ys, ws, ks;
    for (int side = 0; side < 2; ++side) {
      const double span = side == 0 ? x : pi - x;
      for (const auto& [g, gw] : inner) {
        const double offset = span * g * g;
        const double y = side == 0 ? x - offset : x + offset;
        ys.push_back(y);
        ws.push_back(gw * 2.0 * span * g);
        ks.push_back(kernel_k_1d(x, y, s, quad.log_time_step));
      }
    }
    rule.y.push_back(std::move(ys));
    rule.wy.push_back(std::move(ws));
    rule.k.push_back(std::move(ks));
    rule.b.push_back(kernel_b_1d(x, s, quad.log_time_step));
  }
  return rule;
}

QuadraticFormTerms evaluate_rule(const PairRule& rule, const SineField1d& psi, double s) {
  QuadraticFormTerms terms;
  terms.lhs = psi.lambda_norm_sq(s);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double px = psi(rule.x[i]);
    double inner_sum = 0.0;
    for (std::size_t j = 0; j < rule.y[i].size(); ++j) {
      const double d = px - psi(rule.y[i][j]);
      inner_sum += rule.wy[i][j] * d * d * rule.k[i][j];
    }
    terms.pair_term += rule.wx[i] * inner_sum;
    terms.boundary_term += rule.wx[i] * px * px * rule.b[i];
  }
  return terms;
}

}  // namespace

double SineField1d::operator()(double x) const {
  double v = 0.0;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (coeffs[m] != 0.0) v += coeffs[m] * std::sin((m + 1.0) * x);
  }
  return std::sqrt(2.0 / pi) * v;
}

double SineField1d::derivative(double x) const {
  double v = 0.0;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (coeffs[m] != 0.0) v += coeffs[m] * (m + 1.0) * std::cos((m + 1.0) * x);
  }
  return std::sqrt(2.0 / pi) * v;
}

double SineField1d::lambda_norm_sq(double s) const {
  double e = 0.0;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    const double mm = static_cast<double>(m + 1);
    e += std::pow(mm * mm, s) * coeffs[m] * coeffs[m];
  }
  return e;
}

double kernel_k_1d(double x, double y, double s, double log_time_step) {
  check_order(s);
  const double r = image_gap(x, y);
  if (!(r > 0.0)) fail(ErrorCode::invalid_argument, "kernel_k_1d: undefined on the diagonal");
  const double integral =
      log_time_integral([&](double t) { return heat_kernel_1d(x, y, t); }, r * r, s, log_time_step);
  return 0.5 * calibration_constant(2.0 * s) * integral;
}

double kernel_b_1d(double x, double s, double /*log_time_step*/) {
  check_order(s);
  const double integral = boundary_integral([&](double t) { return heat_of_one_1d(x, t); }, s);
  return calibration_constant(2.0 * s) * integral;
}

double kernel_k_2d(const std::array<double, 2>& x, const std::array<double, 2>& y, double s,
                   double log_time_step) {
  check_order(s);
  const double r1 = image_gap(x[0], y[0]);
  const double r2 = image_gap(x[1], y[1]);
  if (!(r1 * r1 + r2 * r2 > 0.0)) fail(ErrorCode::invalid_argument, "kernel_k_2d: undefined on the diagonal");
  const double integral = log_time_integral(
      [&](double t) { return heat_kernel_1d(x[0], y[0], t) * heat_kernel_1d(x[1], y[1], t); },
      r1 * r1 + r2 * r2, s, log_time_step);
  return 0.5 * calibration_constant(2.0 * s) * integral;
}

double kernel_b_2d(const std::array<double, 2>& x, double s, double /*log_time_step*/) {
  check_order(s);
  const double integral = boundary_integral(
      [&](double t) { return heat_of_one_1d(x[0], t) * heat_of_one_1d(x[1], t); }, s);
  return calibration_constant(2.0 * s) * integral;
}

double QuadraticFormTerms::residual() const {
  const double rhs = pair_term + boundary_term;
  if (lhs == 0.0) return rhs == 0.0 ? 0.0 : std::abs(rhs);
  return std::abs(lhs - rhs) / lhs;
}

QuadraticFormTerms quadratic_form_terms(const SineField1d& psi, double s, const QuadratureSpec& quad) {
  check_order(s);
  return evaluate_rule(build_pair_rule(s, quad), psi, s);
}

double quadratic_form_identity_residual(const SineField1d& psi, double s, QuadratureSpec quad,
                                        double tolerance, int max_levels) {
  check_order(s);
  QuadraticFormTerms previous = quadratic_form_terms(psi, s, quad);
  if (previous.lhs == 0.0) return previous.residual();
  for (int level = 1; level < max_levels; ++level) {
    quad = quad.refine();
    const QuadraticFormTerms current = quadratic_form_terms(psi, s, quad);
    const double rhs_prev = previous.pair_term + previous.boundary_term;
    const double rhs_cur = current.pair_term + current.boundary_term;
    if (std::abs(rhs_cur - rhs_prev) <= tolerance * current.lhs) return current.residual();
    previous = current;
    if (level + 1 == max_levels) {
      char msg[256];
      std::snprintf(msg, sizeof msg,
                    "quadratic form quadrature did not settle: RHS %.12g (level %d) vs %.12g (level %d)",
                    rhs_prev, level - 1, rhs_cur, level);
      fail(ErrorCode::quadrature_nonconvergence, msg);
    }
  }
  fail(ErrorCode::quadrature_nonconvergence, "quadratic form quadrature: max_levels must be >= 2");
}

QuadraticFormTerms quadratic_form_terms_2d(const SineField& psi, double s, int cells, double log_time_step) {
  check_order(s);
  if (cells < 2 || cells > 16) fail(ErrorCode::invalid_argument, "quadratic_form_terms_2d: cells in [2, 16]");
  const auto nodes = midpoint_nodes(cells);
  const Eigen::MatrixXd values = evaluate(psi, nodes, nodes);
  const double h = pi / cells;
  std::vector<std::array<double, 2>> pts;
  std::vector<double> vals;
  for (int i = 0; i < cells; ++i) {
    for (int j = 0; j < cells; ++j) {
      pts.push_back({nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]});
      vals.push_back(values(i, j));
    }
  }
  QuadraticFormTerms terms;
  terms.lhs = psi.lambda_norm_sq(s);
  const double area = h * h;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const double d = vals[a] - vals[b];
      if (d == 0.0) continue;
      // (a, b) and (b, a) contribute equally.
      terms.pair_term += 2.0 * area * area * d * d * kernel_k_2d(pts[a], pts[b], s, log_time_step);
    }
    terms.boundary_term += area * vals[a] * vals[a] * kernel_b_2d(pts[a], s, log_time_step);
  }
  return terms;
}

void write_kernel_table(std::ostream& out, double s, std::span<const double> xs, std::span<const double> ys,
                        double log_time_step) {
  char buf[160];
  for (double x : xs) {
    const double b = kernel_b_1d(x, s, log_time_step);
    for (double y : ys) {
      const double k = (x == y) ? std::numeric_limits<double>::infinity()
                                : kernel_k_1d(x, y, s, log_time_step);
      std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", x, y, k, b);
      out << buf;
    }
  }
}

}  // namespace electroflow::dirichlet
