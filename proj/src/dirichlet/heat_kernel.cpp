#include "dirichlet/heat_kernel.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "common/error.hpp"

namespace electroflow::dirichlet {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double image_switch_time = 1.0;

double gaussian(double r, double t) {
  return std::exp(-r * r / (4.0 * t)) / std::sqrt(4.0 * pi * t);
}

}  // namespace

double heat_difference_integral(double lambda, double s) {
  if (!(s > 0.0 && s < 2.0)) fail(ErrorCode::invalid_argument, "heat_difference_integral: s in (0, 2)");
  if (!(lambda > 0.0)) fail(ErrorCode::invalid_argument, "heat_difference_integral: lambda must be > 0");
  const double a = 1.0 + 0.5 * s;
  auto integrand = [lambda, a](double t) {
    const double gap = -std::expm1(-t * lambda);
    return gap == 0.0 ? 0.0 : std::exp(std::log(gap) - a * std::log(t));
  };
  const double split = 1.0 / lambda;
  boost::math::quadrature::tanh_sinh<double> near;
  boost::math::quadrature::exp_sinh<double> far;
  const double head = near.integrate(integrand, 0.0, split);
  const double tail = far.integrate([&](double u) { return integrand(split + u); });
  return head + tail;
}

double calibration_constant(double s) {
  static std::mutex mutex;
  static std::map<double, double> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
  }
  const double c = 1.0 / heat_difference_integral(1.0, s);
  std::lock_guard lock(mutex);
  cache.emplace(s, c);
  return c;
}

double heat_kernel_1d(double x, double y, double t) {
  if (!(t > 0.0)) fail(ErrorCode::invalid_argument, "heat_kernel_1d: t must be > 0");
  if (t <= image_switch_time) {
    double h = 0.0;
    for (int k = -2; k <= 2; ++k) {
      const double shift = 2.0 * pi * k;
      h += gaussian(x - y + shift, t) - gaussian(x + y + shift, t);
    }
    return h;
  }
  // e^{-t m^2} < 1e-18 beyond m = 7 for t > 1.
  double h = 0.0;
  for (int m = 1; m <= 7; ++m) h += std::exp(-t * m * m) * std::sin(m * x) * std::sin(m * y);
  return (2.0 / pi) * h;
}

double heat_of_one_1d(double x, double t) {
  if (!(t > 0.0)) fail(ErrorCode::invalid_argument, "heat_of_one_1d: t must be > 0");
  if (t <= image_switch_time) {
    // int_0^pi G(x - y + c) dy = (erf((x + c)/2sqrt(t)) - erf((x + c - pi)/2sqrt(t))) / 2
    const double w = 2.0 * std::sqrt(t);
    auto slab = [w](double c) { return 0.5 * (std::erf(c / w) - std::erf((c - pi) / w)); };
    double v = 0.0;
    for (int k = -2; k <= 2; ++k) {
      const double shift = 2.0 * pi * k;
      v += slab(x + shift) - slab(-x + shift);
    }
    return v;
  }
  // (1, w_m) w_m(x) with w_m = sqrt(2/pi) sin(m x): (2/pi) (1 - cos m pi)/m sin(m x)
  double v = 0.0;
  for (int m = 1; m <= 7; m += 2) v += std::exp(-t * m * m) * (2.0 / m) * std::sin(m * x);
  return (2.0 / pi) * v;
}

HeatKernelEval heat_kernel_2d(double t, std::vector<std::array<double, 2>> points) {
  if (!(t >= 1e-4)) {
    fail(ErrorCode::invalid_argument,
         "heat_kernel_2d: t = " + std::to_string(t) + " below 1e-4; eigen-sum would be under-resolved");
  }
  const double lambda_cut = -std::log(1e-16) / t;
  const int m_cut = static_cast<int>(std::floor(std::sqrt(lambda_cut)));
  const auto np = static_cast<Eigen::Index>(points.size());
  // S(i, m) = sin(m x_i), T(i, n) = sin(n y_i)
  Eigen::MatrixXd sx(np, m_cut), sy(np, m_cut);
  for (Eigen::Index i = 0; i < np; ++i) {
    for (int m = 1; m <= m_cut; ++m) {
      sx(i, m - 1) = std::sin(m * points[static_cast<std::size_t>(i)][0]);
      sy(i, m - 1) = std::sin(m * points[static_cast<std::size_t>(i)][1]);
    }
  }
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(np, np);
  for (int m = 1; m <= m_cut; ++m) {
    const double rest = lambda_cut - m * m;
    if (rest < 1.0) break;
    const int n_cut = static_cast<int>(std::floor(std::sqrt(rest)));
    // Inner sum over n for this m as a rank-n_cut product.
    Eigen::MatrixXd wy = sy.leftCols(n_cut);
    Eigen::VectorXd decay(n_cut);
    for (int n = 1; n <= n_cut; ++n) decay(n - 1) = std::exp(-t * (m * m + n * n));
    const Eigen::MatrixXd inner = wy * decay.asDiagonal() * wy.transpose();
    const Eigen::VectorXd col = sx.col(m - 1);
    values.array() += (col * col.transpose()).array() * inner.array();
  }
  values *= 4.0 / (pi * pi);
  return {t, std::move(points), std::move(values)};
}

}  // namespace electroflow::dirichlet
